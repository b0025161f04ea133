#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqw {

using cplx = std::complex<double>;

/// Requested work exceeds a configured size limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalue far below zero: the lattice window truncated real weight.
class WindowUnderflowError : public std::runtime_error {
 public:
  WindowUnderflowError(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Physical inputs in units with hbar = 1. Dimensionless times are
/// t_omega = omega * t and t_d = 2 * diss * t.
struct SimParams {
  double omega = 0.0;
  double diss = 0.0;
  double time = 0.0;

  static SimParams from_dimensionless(double t_omega, double t_d);

  double t_omega() const { return omega * time; }
  double t_d() const { return 2.0 * diss * time; }
  /// Ratio t_d / t_omega; requires omega > 0.
  double r_d() const;
  /// Throws std::invalid_argument unless all fields are finite and >= 0.
  void validate() const;
};

/// Truncation of the lattice and of the two series.
/// Invariant: cutoff_j == radius + 3 * cutoff_i.
struct Window {
  int radius = 0;
  int cutoff_i = 0;
  int cutoff_j = 0;
  double tol = 1e-10;
  /// Estimated probability outside the window plus the series remainder.
  double tail_bound = 0.0;

  static Window fixed(int radius, int cutoff_i, double tol = 1e-10);

  int size() const { return 2 * radius + 1; }
  void validate() const;
};

/// Two-particle density matrix on the square window, row-major over
/// (s1, s2, s1', s2'). As a matrix its row is (s1, s2) and column (s1', s2').
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const Window& w);

  const Window& window() const { return window_; }
  int radius() const { return window_.radius; }
  int size() const { return n_; }
  /// Matrix dimension, size()^2.
  std::size_t dim() const { return static_cast<std::size_t>(n_) * n_; }

  bool contains(int s) const { return s >= -window_.radius && s <= window_.radius; }

  cplx& operator()(int s1, int s2, int s1p, int s2p) { return data_[index(s1, s2, s1p, s2p)]; }
  const cplx& operator()(int s1, int s2, int s1p, int s2p) const {
    return data_[index(s1, s2, s1p, s2p)];
  }
  /// Zero for indices outside the window.
  cplx element(int s1, int s2, int s1p, int s2p) const;

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx trace() const;

  std::size_t index(int s1, int s2, int s1p, int s2p) const {
    const std::size_t r = static_cast<std::size_t>(window_.radius);
    const std::size_t n = static_cast<std::size_t>(n_);
    return (((s1 + r) * n + (s2 + r)) * n + (s1p + r)) * n + (s2p + r);
  }

 private:
  Window window_;
  int n_ = 0;
  std::vector<cplx> data_;
};

/// One-particle density matrix on the window, row-major over (s, s').
class ReducedDensity {
 public:
  ReducedDensity() = default;
  explicit ReducedDensity(const Window& w);

  const Window& window() const { return window_; }
  int radius() const { return window_.radius; }
  int size() const { return n_; }

  cplx& operator()(int s, int sp) { return data_[index(s, sp)]; }
  const cplx& operator()(int s, int sp) const { return data_[index(s, sp)]; }
  cplx element(int s, int sp) const;

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx trace() const;

  std::size_t index(int s, int sp) const {
    const std::size_t r = static_cast<std::size_t>(window_.radius);
    return (s + r) * static_cast<std::size_t>(n_) + (sp + r);
  }

 private:
  Window window_;
  int n_ = 0;
  std::vector<cplx> data_;
};

}  // namespace dqw
