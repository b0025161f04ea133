#include "dqw/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqw/bessel.hpp"
#include "dqw/parallel.hpp"
#include "dqw/propagator.hpp"
#include "lattice_sum.hpp"

namespace dqw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvFourPiSq = 1.0 / (4.0 * kPi * kPi);

// Offsets a (doubled x') with the parity of xt that keep (xt +- a)/2 inside [-R, R].
void offset_range(int xt, int R, int& lo, int& hi) {
  const int lim = 2 * R - std::abs(xt);
  lo = -lim;
  hi = lim;
  if (((lo - xt) & 1) != 0) {
    ++lo;
    --hi;
  }
}

void check_imag(const cplx& v) {
  if (std::abs(v.imag()) > 1e-10) throw std::logic_error("Wigner value has a non-negligible imaginary part");
}

}  // namespace

double wigner_from_rho(const DensityMatrix& rho, double k1, double k2, HalfInt x1, HalfInt x2) {
  const int R = rho.radius();
  if (std::abs(x1.twice) > 2 * R || std::abs(x2.twice) > 2 * R) return 0.0;
  int lo1, hi1, lo2, hi2;
  offset_range(x1.twice, R, lo1, hi1);
  offset_range(x2.twice, R, lo2, hi2);
  cplx acc = 0.0;
  for (int a1 = lo1; a1 <= hi1; a1 += 2) {
    cplx row = 0.0;
    for (int a2 = lo2; a2 <= hi2; a2 += 2)
      row += rho((x1.twice + a1) / 2, (x2.twice + a2) / 2, (x1.twice - a1) / 2, (x2.twice - a2) / 2) *
             std::polar(1.0, -k2 * a2);
    acc += row * std::polar(1.0, -k1 * a1);
  }
  acc *= kInvFourPiSq;
  check_imag(acc);
  return acc.real();
}

WignerSeries::WignerSeries(const SimParams& p, int cutoff_i) : params_(p) {
  p.validate();
  if (cutoff_i < 0) throw std::invalid_argument("WignerSeries: negative cutoff");
  const double t_d = p.t_d();
  if (kernel_cancellation_error(t_d) > 1e-8)
    throw ResourceError("t_d exceeds the extended-precision range of the Wigner series");
  n_ = t_d > 0.0 ? cutoff_i : 0;
  ra_ = 3 * n_;
  rq_ = 4 * n_;
  detail::Grid3 g({ra_, ra_, rq_});
  g.set_delta();
  if (n_ > 0) {
    const auto plain = detail::third_scaled_bessel_i(n_, t_d, false);
    const auto alt = detail::third_scaled_bessel_i(n_, t_d, true);
    g.convolve({-1, 0, 0}, plain);
    g.convolve({0, 1, 0}, plain);
    g.convolve({0, 0, -1}, plain);
    g.convolve({1, 0, 1}, alt);
    g.convolve({0, -1, 1}, alt);
    g.convolve({1, -1, 1}, plain);
  }
  const std::size_t na = static_cast<std::size_t>(2 * ra_ + 1);
  const std::size_t nq = static_cast<std::size_t>(2 * rq_ + 1);
  h_.assign(na * na * nq, 0.0);
  for (int a = -ra_; a <= ra_; ++a)
    for (int b = -ra_; b <= ra_; ++b)
      for (int q = -rq_; q <= rq_; ++q)
        h_[(static_cast<std::size_t>(a + ra_) * na + static_cast<std::size_t>(b + ra_)) * nq +
           static_cast<std::size_t>(q + rq_)] = static_cast<double>(g.get(a, b, q));
}

double WignerSeries::hval(int a, int b, int q) const {
  const std::size_t na = static_cast<std::size_t>(2 * ra_ + 1);
  const std::size_t nq = static_cast<std::size_t>(2 * rq_ + 1);
  return h_[(static_cast<std::size_t>(a + ra_) * na + static_cast<std::size_t>(b + ra_)) * nq +
            static_cast<std::size_t>(q + rq_)];
}

double WignerSeries::operator()(double k1, double k2, HalfInt x1, HalfInt x2) const {
  const double t_omega = params_.t_omega();
  const double z1 = -2.0 * t_omega * std::sin(k1);
  const double z2 = -2.0 * t_omega * std::sin(k2);
  const BesselJTable<double> j1(bessel_j_extent(z1), z1);
  const BesselJTable<double> j2(bessel_j_extent(z2), z2);
  const int b1 = std::max(0, j1.band(1e-18));
  const int b2 = std::max(0, j2.band(1e-18));
  const int x1t = x1.twice, x2t = x2.twice;
  cplx total = 0.0;
  for (int q = -rq_; q <= rq_; ++q) {
    // |x1t + 2a - q| <= b1 and |x2t + 2b + q| <= b2.
    const int alo = std::max(-ra_, static_cast<int>(std::ceil((q - x1t - b1) / 2.0)));
    const int ahi = std::min(ra_, static_cast<int>(std::floor((q - x1t + b1) / 2.0)));
    const int blo = std::max(-ra_, static_cast<int>(std::ceil((-q - x2t - b2) / 2.0)));
    const int bhi = std::min(ra_, static_cast<int>(std::floor((-q - x2t + b2) / 2.0)));
    double acc = 0.0;
    for (int a = alo; a <= ahi; ++a) {
      const double ja = j1(x1t + 2 * a - q);
      double row = 0.0;
      for (int b = blo; b <= bhi; ++b) row += hval(a, b, q) * j2(x2t + 2 * b + q);
      acc += ja * row;
    }
    if (q & 1) acc = -acc;
    total += acc * std::polar(1.0, q * (k1 - k2));
  }
  if ((x1t + x2t) & 1) total = -total;
  total *= kInvFourPiSq;
  check_imag(total);
  return total.real();
}

double wigner_closed(const SimParams& p, const Window& w, double k1, double k2, HalfInt x1, HalfInt x2) {
  return WignerSeries(p, w.cutoff_i)(k1, k2, x1, x2);
}

double WignerGrid::k(int j) const { return -kPi + (j + 0.5) * 2.0 * kPi / k_points; }

double WignerGrid::cell() const {
  const double h = 2.0 * kPi / k_points;
  return h * h;
}

double& WignerGrid::at(HalfInt x1, HalfInt x2, int j1, int j2) {
  const std::size_t X = static_cast<std::size_t>(x_count());
  const std::size_t M = static_cast<std::size_t>(k_points);
  return values[((static_cast<std::size_t>(x1.twice + 2 * extent) * X + static_cast<std::size_t>(x2.twice + 2 * extent)) * M +
                 static_cast<std::size_t>(j1)) * M + static_cast<std::size_t>(j2)];
}

double WignerGrid::at(HalfInt x1, HalfInt x2, int j1, int j2) const {
  return const_cast<WignerGrid*>(this)->at(x1, x2, j1, j2);
}

WignerGrid wigner_grid_from_rho(const DensityMatrix& rho, int k_points) {
  if (k_points < 2) throw std::invalid_argument("wigner grid needs at least 2 momentum points");
  const int R = rho.radius();
  WignerGrid g;
  g.extent = R;
  g.k_points = k_points;
  const int X = g.x_count();
  const std::size_t M = static_cast<std::size_t>(k_points);
  const std::size_t total = static_cast<std::size_t>(X) * X * M * M;
  if (total > (std::size_t(1) << 28)) throw ResourceError("Wigner grid too large");
  g.values.assign(total, 0.0);
  const int A = 4 * R + 1;
  // e^{-i k_j a} for doubled offsets a in [-2R, 2R].
  std::vector<cplx> ph(M * static_cast<std::size_t>(A));
  for (std::size_t j = 0; j < M; ++j)
    for (int a = -2 * R; a <= 2 * R; ++a)
      ph[j * A + static_cast<std::size_t>(a + 2 * R)] = std::polar(1.0, -g.k(static_cast<int>(j)) * a);
  parallel_for(0, X, [&](std::ptrdiff_t i1) {
    const int x1t = static_cast<int>(i1) - 2 * R;
    int lo1, hi1;
    offset_range(x1t, R, lo1, hi1);
    std::vector<cplx> t(static_cast<std::size_t>(A) * M);
    for (int x2t = -2 * R; x2t <= 2 * R; ++x2t) {
      int lo2, hi2;
      offset_range(x2t, R, lo2, hi2);
      // T(a1, k2) = sum_a2 c(a1, a2) e^{-i k2 a2}
      for (int a1 = lo1; a1 <= hi1; a1 += 2)
        for (std::size_t j2 = 0; j2 < M; ++j2) {
          cplx acc = 0.0;
          for (int a2 = lo2; a2 <= hi2; a2 += 2)
            acc += rho((x1t + a1) / 2, (x2t + a2) / 2, (x1t - a1) / 2, (x2t - a2) / 2) *
                   ph[j2 * A + static_cast<std::size_t>(a2 + 2 * R)];
          t[static_cast<std::size_t>(a1 + 2 * R) * M + j2] = acc;
        }
      for (std::size_t j1 = 0; j1 < M; ++j1)
        for (std::size_t j2 = 0; j2 < M; ++j2) {
          cplx acc = 0.0;
          for (int a1 = lo1; a1 <= hi1; a1 += 2)
            acc += ph[j1 * A + static_cast<std::size_t>(a1 + 2 * R)] * t[static_cast<std::size_t>(a1 + 2 * R) * M + j2];
          acc *= kInvFourPiSq;
          check_imag(acc);
          g.at({x1t}, {x2t}, static_cast<int>(j1), static_cast<int>(j2)) = acc.real();
        }
    }
  });
  return g;
}

std::vector<double> wigner_slice_from_rho(const DensityMatrix& rho, double k1, double k2) {
  const int R = rho.radius();
  const int X = 4 * R + 1;
  std::vector<double> out(static_cast<std::size_t>(X) * X);
  parallel_for(0, X, [&](std::ptrdiff_t i1) {
    for (int i2 = 0; i2 < X; ++i2)
      out[static_cast<std::size_t>(i1) * X + static_cast<std::size_t>(i2)] =
          wigner_from_rho(rho, k1, k2, {static_cast<int>(i1) - 2 * R}, {i2 - 2 * R});
  });
  return out;
}

WignerMarginals wigner_marginals(const WignerGrid& g) {
  const int X = g.x_count();
  const std::size_t M = static_cast<std::size_t>(g.k_points);
  const double cell = g.cell();
  WignerMarginals m;
  m.position.assign(static_cast<std::size_t>(X) * X, 0.0);
  m.momentum.assign(M * M, 0.0);
  for (int i1 = 0; i1 < X; ++i1)
    for (int i2 = 0; i2 < X; ++i2) {
      double acc = 0.0;
      for (std::size_t j1 = 0; j1 < M; ++j1)
        for (std::size_t j2 = 0; j2 < M; ++j2) {
          const double v = g.at({i1 - 2 * g.extent}, {i2 - 2 * g.extent}, static_cast<int>(j1), static_cast<int>(j2));
          acc += v;
          m.momentum[j1 * M + j2] += v;
        }
      m.position[static_cast<std::size_t>(i1) * X + static_cast<std::size_t>(i2)] = acc * cell;
    }
  double norm = 0.0;
  for (double v : m.momentum) norm += v;
  m.normalization = norm * cell;
  return m;
}

double negative_volume(const WignerGrid& g) {
  double acc = 0.0;
  for (double v : g.values)
    if (v < 0.0) acc -= v;
  return acc * g.cell();
}

std::size_t negative_cells(const WignerGrid& g, double threshold) {
  return static_cast<std::size_t>(std::count_if(g.values.begin(), g.values.end(), [&](double v) { return v < -threshold; }));
}

cplx rho_from_wigner(const WignerGrid& g, int s1, int s2, int s1p, int s2p) {
  const HalfInt x1{s1 + s1p}, x2{s2 + s2p};
  if (std::abs(x1.twice) > 2 * g.extent || std::abs(x2.twice) > 2 * g.extent) return 0.0;
  cplx acc = 0.0;
  for (int j1 = 0; j1 < g.k_points; ++j1)
    for (int j2 = 0; j2 < g.k_points; ++j2)
      acc += g.at(x1, x2, j1, j2) * std::polar(1.0, g.k(j1) * (s1 - s1p) + g.k(j2) * (s2 - s2p));
  return acc * g.cell();
}

}  // namespace dqw
