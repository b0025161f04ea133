#pragma once

#include <vector>

namespace dqw {

/// J_n(x) for orders |n| <= max_order from one normalized backward
/// recurrence. Orders beyond the table read as zero.
template <class Real>
class BesselJTable {
 public:
  BesselJTable() = default;
  BesselJTable(int max_order, Real x);

  Real operator()(int n) const {
    const int a = n < 0 ? -n : n;
    if (a > max_order_) return Real(0);
    const Real v = values_[a];
    return (n < 0 && (a & 1)) ? -v : v;
  }
  int max_order() const { return max_order_; }
  Real x() const { return x_; }
  /// Largest |n| with |J_n| > eps, or -1 if none.
  int band(Real eps) const;

 private:
  std::vector<Real> values_;
  int max_order_ = -1;
  Real x_ = 0;
};

/// Scaled modified Bessel e^{-x} I_n(x) for x >= 0, |n| <= max_order.
/// Orders beyond the table read as zero.
template <class Real>
class BesselIScaledTable {
 public:
  BesselIScaledTable() = default;
  BesselIScaledTable(int max_order, Real x);

  Real operator()(int n) const {
    const int a = n < 0 ? -n : n;
    return a > max_order_ ? Real(0) : values_[a];
  }
  int max_order() const { return max_order_; }
  Real x() const { return x_; }

 private:
  std::vector<Real> values_;
  int max_order_ = -1;
  Real x_ = 0;
};

extern template class BesselJTable<double>;
extern template class BesselJTable<long double>;
extern template class BesselIScaledTable<double>;
extern template class BesselIScaledTable<long double>;

/// Integer-order Bessel J_n(x). Throws std::domain_error for non-finite x.
double bessel_j(int n, double x);

/// e^{-x} I_n(x). Throws std::domain_error for x < 0 or non-finite x.
double bessel_i_scaled(int n, double x);

/// Order beyond which |J_n(x)| is below roughly 1e-30 for the given |x|.
int bessel_j_extent(double x);

/// Order beyond which e^{-x} I_n(x) is below roughly 1e-30.
int bessel_i_extent(double x);

}  // namespace dqw
