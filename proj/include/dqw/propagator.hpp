#pragma once

#include <array>
#include <vector>

#include "dqw/bessel.hpp"
#include "dqw/types.hpp"

namespace dqw {

using Site2 = std::array<int, 2>;

/// Analytic two-walker density matrix for a localized start at the origin.
///
/// rho(s1,s2,s1',s2') = i^{s1-s1'+s2-s2'} sum J_{s1+p1} J_{s1'+q1} J_{s2+p2} J_{s2'+q2} K(p1,q1,p2,q2)
/// over p1 + p2 = q1 + q2, with K the real omega = 0 solution evaluated at -p.
/// K is built in extended precision: the alternating six-fold Bessel sum
/// cancels terms of size e^{4 t_d}.
class AnalyticPropagator {
 public:
  AnalyticPropagator(const SimParams& p, const Window& w);

  const SimParams& params() const { return params_; }
  const Window& window() const { return window_; }

  /// Single element at arbitrary sites (not restricted to the window).
  cplx at(int s1, int s2, int s1p, int s2p) const;

  /// Dense matrix over the window. Hermiticity and exchange symmetry hold
  /// exactly: each symmetry orbit is filled from its canonical element.
  DensityMatrix matrix() const;

  /// Largest deviation seen between a computed element and its orbit image
  /// during the last matrix() call.
  double last_symmetry_residual() const { return symmetry_residual_; }

  /// Kernel K(p1,q1,p2) with q2 = p1 + p2 - q1.
  double kernel(int p1, int q1, int p2) const;
  int kernel_radius() const { return kr_; }

 private:
  SimParams params_;
  Window window_;
  int kr_ = 0;
  int jband_ = 0;
  BesselJTable<double> j_;
  std::vector<double> k_;
  mutable double symmetry_residual_ = 0.0;

  std::size_t kidx(int p1, int q1, int p2) const {
    const std::size_t n = static_cast<std::size_t>(2 * kr_ + 1);
    return ((static_cast<std::size_t>(p1 + kr_) * n) + static_cast<std::size_t>(q1 + kr_)) * n +
           static_cast<std::size_t>(p2 + kr_);
  }
};

/// Rounding error of the extended-precision kernel sums at t_d. Construction
/// fails with ResourceError once it exceeds 1e-8 (t_d above about 9).
double kernel_cancellation_error(double t_d);

/// Density matrix at p with the window chosen by the caller.
/// initial = (s1, s2) of the localized start; the origin uses the symmetric fast path.
DensityMatrix evolve_analytic(const SimParams& p, const Window& w, Site2 initial = {0, 0});

/// Purely unitary evolution: rho = psi psi^dagger with psi(s1,s2) = i^{s1+s2} J_{s1} J_{s2}.
DensityMatrix evolve_unitary(double t_omega, const Window& w);

/// Partial trace over the second walker.
ReducedDensity reduce_one_particle(const DensityMatrix& rho);

/// One walker with its own bath:
/// rho(s,s') = i^{s-s'} sum_n J_{s+n} J_{s'+n} e^{-t_d} I_n(t_d).
ReducedDensity one_particle_analytic(const SimParams& p, const Window& w);

/// Classical random-walk site distribution e^{-t_d} I_s(t_d).
std::vector<double> classical_profile(double t_d, int radius);

/// Diagonal rho(s1,s2,s1,s2) as a (2r+1)^2 row-major table over (s1, s2).
std::vector<double> probability_profile(const DensityMatrix& rho);

/// Momentum-space diagonal <k1,k2|rho|k1,k2> with |k> = (2pi)^{-1/2} sum_s e^{iks}|s>.
double momentum_diagonal(const DensityMatrix& rho, double k1, double k2);

/// Conjugation U rho U^dagger with U = u (x) u and u(s,s') = i^{s+s'} J_{s-s'}(t_omega).
/// inverse = true applies U^dagger rho U.
DensityMatrix u1_transform(const DensityMatrix& rho, double t_omega, bool inverse = false);

/// Exchange of walker labels, rho(s2,s1,s2',s1').
DensityMatrix exchange(const DensityMatrix& rho);

}  // namespace dqw
