#include "lattice_sum.hpp"

#include <algorithm>
#include <cmath>

#include "dqw/bessel.hpp"
#include "dqw/parallel.hpp"

namespace dqw::detail {

Grid3::Grid3(std::array<int, 3> radius) : radius_(radius) {
  for (int d = 0; d < 3; ++d) ext_[d] = static_cast<std::size_t>(2 * radius_[d] + 1);
  data_.assign(ext_[0] * ext_[1] * ext_[2], 0.0L);
}

long double Grid3::get(int a, int b, int c) const {
  if (a < lo_[0] || a > hi_[0] || b < lo_[1] || b > hi_[1] || c < lo_[2] || c > hi_[2]) return 0.0L;
  return data_[index(a, b, c)];
}

void Grid3::set_delta() {
  std::fill(data_.begin(), data_.end(), 0.0L);
  lo_ = {0, 0, 0};
  hi_ = {0, 0, 0};
  at(0, 0, 0) = 1.0L;
}

void Grid3::convolve(const std::array<int, 3>& dir, const std::vector<long double>& c) {
  const int N = static_cast<int>(c.size() / 2);
  std::array<int, 3> nlo{}, nhi{};
  for (int d = 0; d < 3; ++d) {
    const int reach = N * std::abs(dir[d]);
    nlo[d] = std::max(lo_[d] - reach, -radius_[d]);
    nhi[d] = std::min(hi_[d] + reach, radius_[d]);
  }
  std::vector<long double> out(data_.size(), 0.0L);
  const std::array<int, 3> lo = lo_, hi = hi_;
  parallel_for(nlo[0], nhi[0] + 1, [&](std::ptrdiff_t ai) {
    const int a = static_cast<int>(ai);
    for (int b = nlo[1]; b <= nhi[1]; ++b) {
      for (int cc = nlo[2]; cc <= nhi[2]; ++cc) {
        const std::array<int, 3> x{a, b, cc};
        int nmin = -N, nmax = N;
        bool empty = false;
        for (int d = 0; d < 3 && !empty; ++d) {
          const int v = dir[d];
          if (v == 0) {
            if (x[d] < lo[d] || x[d] > hi[d]) empty = true;
          } else {
            // lo <= x - n v <= hi
            const double a1 = static_cast<double>(x[d] - hi[d]) / v;
            const double a2 = static_cast<double>(x[d] - lo[d]) / v;
            nmin = std::max(nmin, static_cast<int>(std::ceil(std::min(a1, a2))));
            nmax = std::min(nmax, static_cast<int>(std::floor(std::max(a1, a2))));
          }
        }
        if (empty || nmin > nmax) continue;
        long double acc = 0.0L;
        for (int n = nmin; n <= nmax; ++n)
          acc += c[static_cast<std::size_t>(n + N)] *
                 data_[index(a - n * dir[0], b - n * dir[1], cc - n * dir[2])];
        out[index(a, b, cc)] = acc;
      }
    }
  });
  data_.swap(out);
  lo_ = nlo;
  hi_ = nhi;
}

std::vector<long double> third_scaled_bessel_i(int N, double x, bool alternating) {
  const BesselIScaledTable<long double> t(N, static_cast<long double>(x));
  const long double scale = std::exp(2.0L * static_cast<long double>(x) / 3.0L);
  std::vector<long double> c(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    long double v = t(n) * scale;
    if (alternating && (n & 1)) v = -v;
    c[static_cast<std::size_t>(n + N)] = v;
  }
  return c;
}

}  // namespace dqw::detail
