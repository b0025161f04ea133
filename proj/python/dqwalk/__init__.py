"""Two quantum walkers on a line sharing a dissipative bath."""

from ._core import (
    ResourceError,
    SimParams,
    Window,
    __version__,
    coherence,
    entropy,
    evolve,
    gqd,
    gqd_lower,
    measures,
    mirror_t1,
    num_threads,
    oracle,
    purity,
    purity_one,
    purity_series,
    select_window,
    set_num_threads,
    wigner,
    wigner_grid,
)

__all__ = [
    "ResourceError",
    "SimParams",
    "Window",
    "__version__",
    "coherence",
    "entropy",
    "evolve",
    "gqd",
    "gqd_lower",
    "measures",
    "mirror_t1",
    "num_threads",
    "oracle",
    "purity",
    "purity_one",
    "purity_series",
    "select_window",
    "set_num_threads",
    "wigner",
    "wigner_grid",
]
