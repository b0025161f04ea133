#pragma once

#include <array>
#include <vector>

#include "dqw/types.hpp"

namespace dqw {

/// Momentum coordinates (k1, k1', k2, k2') of a two-walker coherence.
struct FourierPoint {
  double k1 = 0.0;
  double k1p = 0.0;
  double k2 = 0.0;
  double k2p = 0.0;
};

/// Exponent of the exact momentum-space solution, rho(k, t) = e^{F t} rho(k, 0).
/// Returns F * t evaluated at the dimensionless times of p; Re <= 0.
cplx generator_f(const FourierPoint& k, const SimParams& p);

/// Minimum quadrature size accepted for Wannier elements with |s| <= max_abs_s.
int min_quadrature_points(const SimParams& p, int max_abs_s);

/// Upper bound on points per axis; M^4 complex values are stored.
inline constexpr int kMaxQuadraturePoints = 64;

/// Single Wannier element by direct M^4 uniform quadrature over [-pi, pi)^4.
cplx oracle_element(int s1, int s2, int s1p, int s2p, const SimParams& p, int M);

/// Momentum-grid state with the localized start <k|rho0|k'> = (2pi)^{-2}.
/// Stored as rho(k1, k1', k2, k2') times (2pi)^2 on the M-point grid.
class FourierGridState {
 public:
  explicit FourierGridState(int M);

  int points() const { return m_; }
  double k(int j) const;

  /// Multiplies each entry by e^{F dt} for rates omega, diss.
  void propagate(double omega, double diss, double dt);

  /// Wannier elements |s_i| <= radius by separable discrete transforms.
  DensityMatrix to_wannier(const Window& w) const;

  const std::vector<cplx>& values() const { return values_; }

 private:
  int m_;
  std::vector<cplx> values_;
};

/// Full Wannier matrix by quadrature; requires M >= min_quadrature_points.
DensityMatrix oracle_matrix(const Window& w, const SimParams& p, int M);

/// sum_s rho(s1, s2, -s1, -s2) from the momentum integral
/// (2pi)^{-2} int e^{-2 t_d (sin k1 + sin k2)^2} dk1 dk2 on an M^2 grid.
double oracle_mirror_sum(double t_d, int M);

}  // namespace dqw
