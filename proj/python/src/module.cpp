#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "dqw/discord.hpp"
#include "dqw/measures.hpp"
#include "dqw/parallel.hpp"
#include "dqw/propagator.hpp"
#include "dqw/spectral_oracle.hpp"
#include "dqw/version.hpp"
#include "dqw/wigner.hpp"
#include "dqw/window.hpp"

namespace py = pybind11;

namespace {

// Copies the matrix into a numpy array indexed [s1 + R, s2 + R, s1' + R, s2' + R].
py::array_t<std::complex<double>> to_numpy(const dqw::DensityMatrix& rho) {
  const py::ssize_t n = rho.size();
  py::array_t<std::complex<double>> out({n, n, n, n});
  std::copy(rho.data().begin(), rho.data().end(), out.mutable_data());
  return out;
}

dqw::DensityMatrix from_numpy(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 4 || a.shape(0) % 2 == 0)
    throw std::invalid_argument("expected an (n, n, n, n) array with odd n");
  const py::ssize_t n = a.shape(0);
  for (int d = 1; d < 4; ++d)
    if (a.shape(d) != n) throw std::invalid_argument("expected an (n, n, n, n) array with odd n");
  dqw::DensityMatrix rho(dqw::Window::fixed(static_cast<int>((n - 1) / 2), 0));
  std::copy(a.data(), a.data() + a.size(), rho.data().begin());
  return rho;
}

dqw::Window window_for(const dqw::SimParams& p, int radius, double tol) {
  if (radius <= 0) return dqw::select_window(p, tol);
  dqw::Window w = dqw::Window::fixed(radius, dqw::series_cutoff(p.t_d(), tol), tol);
  w.tail_bound = dqw::out_of_window_mass(p.t_omega(), p.t_d(), radius);
  return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two walkers on a line coupled to a common dissipative bath.";
  m.attr("__version__") = dqw::kVersion;

  py::register_exception<dqw::ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<dqw::SimParams>(m, "SimParams")
      .def(py::init([](double omega, double diss, double time) {
             dqw::SimParams p{omega, diss, time};
             p.validate();
             return p;
           }),
           py::arg("omega") = 1.0, py::arg("diss") = 0.0, py::arg("time") = 1.0)
      .def_static("from_dimensionless", &dqw::SimParams::from_dimensionless, py::arg("t_omega"), py::arg("t_d"))
      .def_readwrite("omega", &dqw::SimParams::omega)
      .def_readwrite("diss", &dqw::SimParams::diss)
      .def_readwrite("time", &dqw::SimParams::time)
      .def_property_readonly("t_omega", &dqw::SimParams::t_omega)
      .def_property_readonly("t_d", &dqw::SimParams::t_d)
      .def("__repr__", [](const dqw::SimParams& p) {
        return "SimParams(omega=" + std::to_string(p.omega) + ", diss=" + std::to_string(p.diss) +
               ", time=" + std::to_string(p.time) + ")";
      });

  py::class_<dqw::Window>(m, "Window")
      .def_readonly("radius", &dqw::Window::radius)
      .def_readonly("cutoff_i", &dqw::Window::cutoff_i)
      .def_readonly("cutoff_j", &dqw::Window::cutoff_j)
      .def_readonly("tol", &dqw::Window::tol)
      .def_readonly("tail_bound", &dqw::Window::tail_bound);

  m.def("select_window", [](const dqw::SimParams& p, double tol) { return dqw::select_window(p, tol); },
        py::arg("params"), py::arg("tol") = 1e-10);

  m.def(
      "evolve",
      [](const dqw::SimParams& p, int radius, double tol) {
        dqw::DensityMatrix rho;
        {
          py::gil_scoped_release release;
          rho = dqw::evolve_analytic(p, window_for(p, radius, tol));
        }
        return to_numpy(rho);
      },
      py::arg("params"), py::arg("radius") = 0, py::arg("tol") = 1e-10,
      "Density matrix as an (n, n, n, n) complex array; radius 0 selects the window.");

  m.def(
      "oracle",
      [](const dqw::SimParams& p, int radius, int points) {
        dqw::DensityMatrix rho;
        {
          py::gil_scoped_release release;
          rho = dqw::oracle_matrix(dqw::Window::fixed(radius, 0), p, points);
        }
        return to_numpy(rho);
      },
      py::arg("params"), py::arg("radius"), py::arg("points"),
      "Momentum-quadrature reference matrix on |s| <= radius.");

  m.def("purity", [](py::array_t<std::complex<double>> a) { return dqw::purity_matrix(from_numpy(a)); },
        py::arg("rho"));
  m.def("purity_series", &dqw::purity_series, py::arg("t_d"), py::arg("cutoff") = -1);
  m.def("purity_one", &dqw::purity_one, py::arg("t_d"));
  m.def("mirror_t1", &dqw::mirror_t1, py::arg("t_d"));
  m.def("entropy", [](py::array_t<std::complex<double>> a) { return dqw::von_neumann_entropy(from_numpy(a)); },
        py::arg("rho"));
  m.def("coherence", [](py::array_t<std::complex<double>> a) { return dqw::relative_entropy_coherence(from_numpy(a)); },
        py::arg("rho"));

  m.def(
      "measures",
      [](const dqw::SimParams& p, double tol) {
        dqw::MeasureRecord r;
        {
          py::gil_scoped_release release;
          r = dqw::compute_measures(dqw::evolve_analytic(p, dqw::select_window(p, tol)), p);
        }
        py::dict d;
        d["t_omega"] = r.t_omega;
        d["t_d"] = r.t_d;
        d["purity2"] = r.purity2;
        d["purity1_sq"] = r.purity1_sq;
        d["delta_purity"] = r.delta_purity;
        d["entropy"] = r.entropy;
        d["entropy_independent"] = r.entropy_independent;
        d["c_re"] = r.c_re;
        d["mirror_t1"] = r.mirror_t1;
        d["mirror_total"] = r.mirror_total;
        return d;
      },
      py::arg("params"), py::arg("tol") = 1e-10);

  m.def(
      "gqd",
      [](py::array_t<std::complex<double>> a) {
        const dqw::GqdBreakdown g = dqw::gqd_breakdown(from_numpy(a));
        py::dict d;
        d["total"] = g.total;
        d["total_weighted"] = g.total_weighted;
        d["per_block"] = g.per_block;
        d["block_trace"] = g.block_trace;
        return d;
      },
      py::arg("rho"));

  m.def(
      "gqd_lower",
      [](py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> a) {
        if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4) throw std::invalid_argument("expected a 4x4 array");
        std::array<std::array<dqw::cplx, 4>, 4> r4{};
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) r4[i][j] = a.at(i, j);
        const auto b = dqw::bloch_decompose(r4);
        if (!b) throw std::invalid_argument("state has negligible trace");
        return dqw::gqd_lower(*b);
      },
      py::arg("rho4"), "Geometric discord lower bound of a two-qubit state.");

  m.def(
      "wigner_grid",
      [](py::array_t<std::complex<double>> a, int k_points) {
        const dqw::DensityMatrix rho = from_numpy(a);
        dqw::WignerGrid g;
        {
          py::gil_scoped_release release;
          g = dqw::wigner_grid_from_rho(rho, k_points);
        }
        const py::ssize_t x = g.x_count(), k = g.k_points;
        py::array_t<double> out({x, x, k, k});
        std::copy(g.values.begin(), g.values.end(), out.mutable_data());
        std::vector<double> ks(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) ks[static_cast<std::size_t>(j)] = g.k(j);
        return py::make_tuple(out, ks, dqw::negative_volume(g));
      },
      py::arg("rho"), py::arg("k_points") = 32,
      "Returns (values[x1, x2, k1, k2], k grid, negative volume); x runs over half-integer steps.");

  m.def(
      "wigner",
      [](const dqw::SimParams& p, double k1, double k2, double x1, double x2, int cutoff) {
        auto doubled = [](double x) {
          const double t = 2.0 * x;
          if (t != std::round(t)) throw std::invalid_argument("coordinates must be multiples of 1/2");
          return dqw::HalfInt{static_cast<int>(t)};
        };
        const int n = cutoff >= 0 ? cutoff : dqw::series_cutoff(p.t_d(), 1e-10);
        return dqw::WignerSeries(p, n)(k1, k2, doubled(x1), doubled(x2));
      },
      py::arg("params"), py::arg("k1"), py::arg("k2"), py::arg("x1"), py::arg("x2"), py::arg("cutoff") = -1,
      "Closed-form Wigner function at one phase-space point.");

  m.def("set_num_threads", &dqw::set_num_threads, py::arg("n"));
  m.def("num_threads", &dqw::num_threads);
}
