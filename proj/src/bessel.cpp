#include "dqw/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace dqw {

namespace {

template <class Real>
constexpr int extra_start_orders() {
  return sizeof(Real) > sizeof(double) ? 12 : 0;
}

}  // namespace

template <class Real>
BesselJTable<Real>::BesselJTable(int max_order, Real x) : max_order_(max_order), x_(x) {
  if (max_order < 0) throw std::invalid_argument("BesselJTable: negative max_order");
  if (!std::isfinite(static_cast<long double>(x)))
    throw std::domain_error("BesselJTable: non-finite argument");
  values_.assign(static_cast<std::size_t>(max_order) + 1, Real(0));
  if (x == Real(0)) {
    values_[0] = Real(1);
    return;
  }
  const Real ax = x < 0 ? -x : x;
  if (ax < Real(1e-150)) {
    // Leading series term; relative error O(x^2).
    Real term = 1;
    for (int m = 0; m <= max_order; ++m) {
      values_[m] = (x < 0 && (m & 1)) ? -term : term;
      term *= ax / Real(2 * (m + 1));
    }
    return;
  }
  int start = std::max(max_order, static_cast<int>(std::ceil(static_cast<double>(ax)))) + 30 +
              static_cast<int>(std::ceil(12.0 * std::cbrt(static_cast<double>(ax)))) +
              extra_start_orders<Real>();
  if (start & 1) ++start;

  const Real big = Real(1e100);
  const Real small = Real(1e-100);
  Real jp1 = 0;
  Real j = Real(1e-30);
  Real sum_sq = 0;
  Real sum_even = 0;
  for (int k = start; k >= 1; --k) {
    if (k <= max_order) values_[k] = j;
    sum_sq += 2 * j * j;
    if ((k & 1) == 0) sum_even += 2 * j;
    const Real jm1 = (Real(2 * k) / ax) * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::abs(j) > big) {
      j *= small;
      jp1 *= small;
      sum_sq *= small * small;
      sum_even *= small;
      for (int m = k; m <= max_order; ++m) values_[m] *= small;
    }
  }
  values_[0] = j;
  sum_sq += j * j;
  sum_even += j;
  Real norm = std::sqrt(sum_sq);
  if (sum_even < 0) norm = -norm;
  for (auto& v : values_) v /= norm;
  if (x < 0)
    for (int m = 1; m <= max_order; m += 2) values_[m] = -values_[m];
}

template <class Real>
int BesselJTable<Real>::band(Real eps) const {
  for (int m = max_order_; m >= 0; --m)
    if (std::abs(values_[m]) > eps) return m;
  return -1;
}

template <class Real>
BesselIScaledTable<Real>::BesselIScaledTable(int max_order, Real x)
    : max_order_(max_order), x_(x) {
  if (max_order < 0) throw std::invalid_argument("BesselIScaledTable: negative max_order");
  if (!std::isfinite(static_cast<long double>(x)) || x < 0)
    throw std::domain_error("BesselIScaledTable: argument must be finite and >= 0");
  values_.assign(static_cast<std::size_t>(max_order) + 1, Real(0));
  if (x == Real(0)) {
    values_[0] = Real(1);
    return;
  }
  if (x < Real(1e-150)) {
    Real term = 1;
    for (int m = 0; m <= max_order; ++m) {
      values_[m] = term;
      term *= x / Real(2 * (m + 1));
    }
    return;
  }
  const int start = max_order + 30 + static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(x)))) +
                    extra_start_orders<Real>();
  const Real big = Real(1e100);
  const Real small = Real(1e-100);
  Real ip1 = 0;
  Real i = Real(1e-30);
  Real sum = 0;
  for (int k = start; k >= 1; --k) {
    if (k <= max_order) values_[k] = i;
    sum += 2 * i;
    const Real im1 = (Real(2 * k) / x) * i + ip1;
    ip1 = i;
    i = im1;
    if (i > big) {
      i *= small;
      ip1 *= small;
      sum *= small;
      for (int m = k; m <= max_order; ++m) values_[m] *= small;
    }
  }
  values_[0] = i;
  sum += i;
  for (auto& v : values_) v /= sum;
}

template class BesselJTable<double>;
template class BesselJTable<long double>;
template class BesselIScaledTable<double>;
template class BesselIScaledTable<long double>;

double bessel_j(int n, double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_j: non-finite argument");
  const int a = n < 0 ? -n : n;
  return BesselJTable<double>(a, x)(n);
}

double bessel_i_scaled(int n, double x) {
  if (!std::isfinite(x) || x < 0) throw std::domain_error("bessel_i_scaled: argument must be finite and >= 0");
  const int a = n < 0 ? -n : n;
  return BesselIScaledTable<double>(a, x)(a);
}

int bessel_j_extent(double x) {
  const double ax = std::abs(x);
  return static_cast<int>(std::ceil(ax + 12.0 * std::cbrt(ax) + 40.0));
}

int bessel_i_extent(double x) {
  return static_cast<int>(std::ceil(12.0 * std::sqrt(x) + 30.0));
}

}  // namespace dqw
