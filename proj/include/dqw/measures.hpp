#pragma once

#include <vector>

#include "dqw/types.hpp"

namespace dqw {

/// Tr rho^2 from the matrix.
double purity_matrix(const DensityMatrix& rho);

/// Tr rho^2 from its closed-form Bessel series; independent of omega.
/// cutoff < 0 picks the order where the scaled terms fall below 1e-17.
/// Throws std::range_error once cancellation exceeds about 1e-9 (near t_d = 4).
double purity_series(double t_d, int cutoff = -1);

/// Single-walker purity e^{-2 t_d} I_0(2 t_d).
double purity_one(double t_d);

struct EntropyOptions {
  /// Eigenvalues below floor are dropped from -sum l ln l.
  double floor = 1e-12;
  /// Eigenvalues below -100 * tol raise WindowUnderflowError.
  double tol = 1e-8;
};

/// Eigenvalues of rho as a Hermitian matrix, ascending. Exchange-symmetric
/// input is split into symmetric and antisymmetric blocks first.
std::vector<double> density_eigenvalues(const DensityMatrix& rho);

/// -Tr rho ln rho.
double von_neumann_entropy(const DensityMatrix& rho, const EntropyOptions& opt = {});
double von_neumann_entropy(const ReducedDensity& rho, const EntropyOptions& opt = {});

/// Relative entropy of coherence: Shannon entropy of the site populations minus S(rho).
double relative_entropy_coherence(const DensityMatrix& rho, const EntropyOptions& opt = {});

/// Single-walker mirror probability sum_s rho1(s, -s) = e^{-t_d} I_0(t_d).
double mirror_t1(double t_d);

/// Two-walker mirror correlation sum_s rho(s1, s2, -s1, -s2) - mirror_t1(t_d)^2.
double mirror_total(const DensityMatrix& rho, double t_d);

/// Common-bath and independent-bath figures at one time point.
struct MeasureRecord {
  double t_omega = 0.0;
  double t_d = 0.0;
  double purity2 = 1.0;
  double purity1_sq = 1.0;
  double delta_purity = 0.0;
  double entropy = 0.0;
  double entropy_independent = 0.0;
  double c_re = 0.0;
  double mirror_t1 = 1.0;
  double mirror_total = 0.0;
};

/// All figures for rho at p; the independent-bath entropy is 2 S(rho1).
MeasureRecord compute_measures(const DensityMatrix& rho, const SimParams& p, const EntropyOptions& opt = {});

}  // namespace dqw
