#pragma once

#include <vector>

#include "dqw/types.hpp"

namespace dqw {

/// Coordinate on the enlarged lattice of integers and half-integers, stored doubled.
struct HalfInt {
  int twice = 0;

  static HalfInt from_int(int s) { return {2 * s}; }
  double value() const { return 0.5 * twice; }
  bool is_integer() const { return (twice & 1) == 0; }
  friend bool operator==(HalfInt, HalfInt) = default;
};

/// Discrete Wigner function
/// W(k, x) = (2pi)^{-2} sum_{x'} rho(x + x', x - x') e^{-2i k.x'}
/// with x' integer (half-integer) when x is integer (half-integer) per walker.
/// Window-truncated elements are treated as zero.
double wigner_from_rho(const DensityMatrix& rho, double k1, double k2, HalfInt x1, HalfInt x2);

/// Closed Bessel-series evaluation at p, independent of any density matrix.
class WignerSeries {
 public:
  WignerSeries(const SimParams& p, int cutoff_i);

  double operator()(double k1, double k2, HalfInt x1, HalfInt x2) const;
  int cutoff() const { return n_; }

 private:
  SimParams params_;
  int n_ = 0;
  // H(alpha, beta, q) over |alpha|, |beta| <= 3N, |q| <= 4N.
  std::vector<double> h_;
  int ra_ = 0;
  int rq_ = 0;
  double hval(int a, int b, int q) const;
};

/// Convenience wrapper constructing a WignerSeries for a single point.
double wigner_closed(const SimParams& p, const Window& w, double k1, double k2, HalfInt x1, HalfInt x2);

/// Values on |x_i| <= extent (all half-integer steps) and an M x M
/// midpoint momentum grid k_j = -pi + (j + 1/2) 2pi/M. Layout [x1][x2][k1][k2].
struct WignerGrid {
  int extent = 0;
  int k_points = 0;
  std::vector<double> values;

  int x_count() const { return 4 * extent + 1; }
  double k(int j) const;
  double cell() const;
  double& at(HalfInt x1, HalfInt x2, int j1, int j2);
  double at(HalfInt x1, HalfInt x2, int j1, int j2) const;
};

/// Wigner function of rho on the window's enlarged lattice.
WignerGrid wigner_grid_from_rho(const DensityMatrix& rho, int k_points);

/// Values at fixed momenta over |x_i| <= extent, layout [x1][x2].
std::vector<double> wigner_slice_from_rho(const DensityMatrix& rho, double k1, double k2);

struct WignerMarginals {
  /// Momentum-integrated values over [x1][x2] of the enlarged lattice.
  std::vector<double> position;
  /// Sum over all x, layout [k1][k2].
  std::vector<double> momentum;
  /// Sum over x and quadrature over k.
  double normalization = 0.0;
};

WignerMarginals wigner_marginals(const WignerGrid& g);

/// Quadrature of max(0, -W) over x and k.
double negative_volume(const WignerGrid& g);

/// Number of (x, k) cells with W < -threshold.
std::size_t negative_cells(const WignerGrid& g, double threshold);

/// Reconstruction rho(s, s') = sum_k cell W(k, (s+s')/2) e^{i k.(s - s')} from the grid.
cplx rho_from_wigner(const WignerGrid& g, int s1, int s2, int s1p, int s2p);

}  // namespace dqw
