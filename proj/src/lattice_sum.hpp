#pragma once

// Dense 3D tables built from repeated one-dimensional Bessel convolutions.

#include <array>
#include <vector>

namespace dqw::detail {

class Grid3 {
 public:
  Grid3(std::array<int, 3> radius);

  const std::array<int, 3>& radius() const { return radius_; }
  const std::array<int, 3>& lo() const { return lo_; }
  const std::array<int, 3>& hi() const { return hi_; }

  long double& at(int a, int b, int c) { return data_[index(a, b, c)]; }
  long double at(int a, int b, int c) const { return data_[index(a, b, c)]; }
  /// Zero outside the current support.
  long double get(int a, int b, int c) const;

  /// Sets the table to a unit spike at the origin.
  void set_delta();

  /// out(x) = sum_n c[n + N] in(x - n * dir), with c of length 2N + 1.
  void convolve(const std::array<int, 3>& dir, const std::vector<long double>& c);

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a + radius_[0]) * ext_[1] + static_cast<std::size_t>(b + radius_[1])) * ext_[2] +
           static_cast<std::size_t>(c + radius_[2]);
  }

  std::array<int, 3> radius_;
  std::array<std::size_t, 3> ext_;
  std::array<int, 3> lo_{0, 0, 0};
  std::array<int, 3> hi_{0, 0, 0};
  std::vector<long double> data_;
};

/// Kernel e^{-x/3} I_n(x) for |n| <= N, optionally with alternating sign (-1)^n.
std::vector<long double> third_scaled_bessel_i(int N, double x, bool alternating);

}  // namespace dqw::detail
