#include "dqw/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dqw/parallel.hpp"
#include "lattice_sum.hpp"

namespace dqw {

namespace {

// i^m for integer m.
cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Lexicographically smallest member of the orbit under bra/ket swap
// (conjugating) and walker exchange. Returns whether the map conjugates.
struct OrbitRep {
  std::array<int, 4> rep;
  bool conj;
};

OrbitRep canonical(int s1, int s2, int s1p, int s2p) {
  const std::array<std::array<int, 4>, 4> orbit{{{s1, s2, s1p, s2p},
                                                 {s1p, s2p, s1, s2},
                                                 {s2, s1, s2p, s1p},
                                                 {s2p, s1p, s2, s1}}};
  int best = 0;
  for (int k = 1; k < 4; ++k)
    if (orbit[k] < orbit[best]) best = k;
  return {orbit[best], best == 1 || best == 3};
}

constexpr double kBandEps = 1e-18;
constexpr double kMaxKernelError = 1e-8;
constexpr std::size_t kMaxStageElements = std::size_t(1) << 27;

}  // namespace

AnalyticPropagator::AnalyticPropagator(const SimParams& p, const Window& w)
    : params_(p), window_(w) {
  p.validate();
  w.validate();
  const double t_omega = p.t_omega();
  const double t_d = p.t_d();
  if (kernel_cancellation_error(t_d) > kMaxKernelError)
    throw ResourceError("t_d = " + std::to_string(t_d) + " exceeds the extended-precision range of the lattice kernel");
  const int N = t_d > 0.0 ? w.cutoff_i : 0;
  kr_ = 3 * N;
  j_ = BesselJTable<double>(bessel_j_extent(t_omega), t_omega);
  jband_ = std::max(0, j_.band(kBandEps));

  detail::Grid3 g({kr_, kr_, kr_});
  g.set_delta();
  if (N > 0) {
    const auto plain = detail::third_scaled_bessel_i(N, t_d, false);
    const auto alt = detail::third_scaled_bessel_i(N, t_d, true);
    // Axis-aligned shifts first keep the support small while it grows.
    g.convolve({1, 0, 0}, plain);
    g.convolve({0, 0, 1}, plain);
    g.convolve({0, 1, 0}, alt);
    g.convolve({1, 1, 0}, plain);
    g.convolve({0, 1, 1}, plain);
    g.convolve({1, 0, -1}, alt);
  }
  const std::size_t n = static_cast<std::size_t>(2 * kr_ + 1);
  k_.assign(n * n * n, 0.0);
  for (int a = -kr_; a <= kr_; ++a)
    for (int b = -kr_; b <= kr_; ++b)
      for (int c = -kr_; c <= kr_; ++c) k_[kidx(a, b, c)] = static_cast<double>(g.get(a, b, c));
}

double AnalyticPropagator::kernel(int p1, int q1, int p2) const {
  if (std::abs(p1) > kr_ || std::abs(q1) > kr_ || std::abs(p2) > kr_) return 0.0;
  return k_[kidx(p1, q1, p2)];
}

cplx AnalyticPropagator::at(int s1, int s2, int s1p, int s2p) const {
  const int jb = jband_;
  double acc = 0.0;
  for (int p1 = std::max(-kr_, -jb - s1); p1 <= std::min(kr_, jb - s1); ++p1) {
    const double j1 = j_(s1 + p1);
    double acc1 = 0.0;
    for (int q1 = std::max(-kr_, -jb - s1p); q1 <= std::min(kr_, jb - s1p); ++q1) {
      const double j1p = j_(s1p + q1);
      double acc2 = 0.0;
      // q2 = p1 + p2 - q1 must satisfy |s2p + q2| <= jb.
      const int lo = std::max({-kr_, -jb - s2, -jb - s2p - p1 + q1});
      const int hi = std::min({kr_, jb - s2, jb - s2p - p1 + q1});
      for (int p2 = lo; p2 <= hi; ++p2)
        acc2 += kernel(p1, q1, p2) * j_(s2 + p2) * j_(s2p + p1 + p2 - q1);
      acc1 += j1p * acc2;
    }
    acc += j1 * acc1;
  }
  return ipow(s1 - s1p + s2 - s2p) * acc;
}

DensityMatrix AnalyticPropagator::matrix() const {
  const int R = window_.radius;
  const int S = 2 * R + 1;
  const int jb = jband_;
  const int pr = std::min(kr_, R + jb);
  const int P = 2 * pr + 1;
  const std::size_t SS = static_cast<std::size_t>(S) * S;
  if (static_cast<std::size_t>(P) * P * SS > kMaxStageElements)
    throw ResourceError("analytic propagator staging table too large for this window");

  // B[p1][q1][s2][s2'] = sum_p2 K(p1,q1,p2) J(s2+p2) J(s2'+p1+p2-q1)
  std::vector<double> B(static_cast<std::size_t>(P) * P * SS, 0.0);
  parallel_for(0, static_cast<std::ptrdiff_t>(P) * P, [&](std::ptrdiff_t idx) {
    const int p1 = static_cast<int>(idx / P) - pr;
    const int q1 = static_cast<int>(idx % P) - pr;
    double* out = &B[static_cast<std::size_t>(idx) * SS];
    for (int s2 = -R; s2 <= R; ++s2) {
      for (int s2p = -R; s2p <= R; ++s2p) {
        const int lo = std::max({-kr_, -jb - s2, -jb - s2p - p1 + q1});
        const int hi = std::min({kr_, jb - s2, jb - s2p - p1 + q1});
        double acc = 0.0;
        for (int p2 = lo; p2 <= hi; ++p2)
          acc += kernel(p1, q1, p2) * j_(s2 + p2) * j_(s2p + p1 + p2 - q1);
        out[static_cast<std::size_t>(s2 + R) * S + static_cast<std::size_t>(s2p + R)] = acc;
      }
    }
  });

  // C[s1][q1][s2][s2'] = sum_p1 J(s1+p1) B[p1][q1][..]
  std::vector<double> C(static_cast<std::size_t>(S) * P * SS, 0.0);
  parallel_for(0, static_cast<std::ptrdiff_t>(S) * P, [&](std::ptrdiff_t idx) {
    const int s1 = static_cast<int>(idx / P) - R;
    const int qi = static_cast<int>(idx % P);
    double* out = &C[static_cast<std::size_t>(idx) * SS];
    const int lo = std::max(-pr, -jb - s1);
    const int hi = std::min(pr, jb - s1);
    for (int p1 = lo; p1 <= hi; ++p1) {
      const double j = j_(s1 + p1);
      const double* in = &B[(static_cast<std::size_t>(p1 + pr) * P + static_cast<std::size_t>(qi)) * SS];
      for (std::size_t e = 0; e < SS; ++e) out[e] += j * in[e];
    }
  });
  B.clear();
  B.shrink_to_fit();

  // R[s1][s1'][s2][s2'] = sum_q1 J(s1'+q1) C[s1][q1][..], then phase.
  DensityMatrix full(window_);
  parallel_for(0, static_cast<std::ptrdiff_t>(S) * S, [&](std::ptrdiff_t idx) {
    const int s1 = static_cast<int>(idx / S) - R;
    const int s1p = static_cast<int>(idx % S) - R;
    std::vector<double> acc(SS, 0.0);
    const int lo = std::max(-pr, -jb - s1p);
    const int hi = std::min(pr, jb - s1p);
    for (int q1 = lo; q1 <= hi; ++q1) {
      const double j = j_(s1p + q1);
      const double* in = &C[(static_cast<std::size_t>(s1 + R) * P + static_cast<std::size_t>(q1 + pr)) * SS];
      for (std::size_t e = 0; e < SS; ++e) acc[e] += j * in[e];
    }
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s2p = -R; s2p <= R; ++s2p)
        full(s1, s2, s1p, s2p) =
            ipow(s1 - s1p + s2 - s2p) * acc[static_cast<std::size_t>(s2 + R) * S + static_cast<std::size_t>(s2p + R)];
  });

  DensityMatrix rho(window_);
  double residual = 0.0;
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s1p = -R; s1p <= R; ++s1p)
        for (int s2p = -R; s2p <= R; ++s2p) {
          const OrbitRep o = canonical(s1, s2, s1p, s2p);
          const cplx c = full(o.rep[0], o.rep[1], o.rep[2], o.rep[3]);
          const cplx v = o.conj ? std::conj(c) : c;
          residual = std::max(residual, std::abs(v - full(s1, s2, s1p, s2p)));
          rho(s1, s2, s1p, s2p) = v;
        }
  symmetry_residual_ = residual;
  return rho;
}

double kernel_cancellation_error(double t_d) {
  // Measured against quadrature: about 6e-11 at t_d = 8, growing as e^{4 t_d}.
  return std::exp(4.0 * t_d) * 1e-24;
}

DensityMatrix evolve_analytic(const SimParams& p, const Window& w, Site2 initial) {
  const int shift = std::max(std::abs(initial[0]), std::abs(initial[1]));
  if (shift == 0) return AnalyticPropagator(p, w).matrix();
  Window big = w;
  big.radius = w.radius + shift;
  big.cutoff_j = big.radius + 3 * big.cutoff_i;
  const DensityMatrix base = AnalyticPropagator(p, big).matrix();
  DensityMatrix rho(w);
  const int R = w.radius;
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s1p = -R; s1p <= R; ++s1p)
        for (int s2p = -R; s2p <= R; ++s2p)
          rho(s1, s2, s1p, s2p) =
              base(s1 - initial[0], s2 - initial[1], s1p - initial[0], s2p - initial[1]);
  return rho;
}

DensityMatrix evolve_unitary(double t_omega, const Window& w) {
  if (!std::isfinite(t_omega) || t_omega < 0.0) throw std::invalid_argument("evolve_unitary: t_omega must be >= 0");
  const int R = w.radius;
  const BesselJTable<double> j(std::max(R, 1), t_omega);
  std::vector<cplx> psi(static_cast<std::size_t>(2 * R + 1) * (2 * R + 1));
  auto pidx = [R](int a, int b) { return static_cast<std::size_t>(a + R) * (2 * R + 1) + (b + R); };
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b) psi[pidx(a, b)] = ipow(a + b) * (j(a) * j(b));
  DensityMatrix rho(w);
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s1p = -R; s1p <= R; ++s1p)
        for (int s2p = -R; s2p <= R; ++s2p)
          rho(s1, s2, s1p, s2p) = psi[pidx(s1, s2)] * std::conj(psi[pidx(s1p, s2p)]);
  return rho;
}

ReducedDensity reduce_one_particle(const DensityMatrix& rho) {
  ReducedDensity out(rho.window());
  const int R = rho.radius();
  for (int s = -R; s <= R; ++s)
    for (int sp = -R; sp <= R; ++sp) {
      cplx acc = 0.0;
      for (int s2 = -R; s2 <= R; ++s2) acc += rho(s, s2, sp, s2);
      out(s, sp) = acc;
    }
  return out;
}

ReducedDensity one_particle_analytic(const SimParams& p, const Window& w) {
  p.validate();
  const double t_omega = p.t_omega();
  const double t_d = p.t_d();
  const int ni = t_d > 0.0 ? bessel_i_extent(t_d) : 0;
  const BesselJTable<double> j(w.radius + ni + bessel_j_extent(t_omega), t_omega);
  const BesselIScaledTable<double> ii(ni, t_d);
  ReducedDensity out(w);
  const int R = w.radius;
  for (int s = -R; s <= R; ++s)
    for (int sp = -R; sp <= R; ++sp) {
      double acc = 0.0;
      for (int n = -ni; n <= ni; ++n) acc += j(s + n) * j(sp + n) * ii(n);
      out(s, sp) = ipow(s - sp) * acc;
    }
  return out;
}

std::vector<double> classical_profile(double t_d, int radius) {
  if (radius < 0) throw std::invalid_argument("classical_profile: negative radius");
  const BesselIScaledTable<double> ii(radius, t_d);
  std::vector<double> out(static_cast<std::size_t>(2 * radius + 1));
  for (int s = -radius; s <= radius; ++s) out[static_cast<std::size_t>(s + radius)] = ii(s);
  return out;
}

std::vector<double> probability_profile(const DensityMatrix& rho) {
  const int R = rho.radius();
  const int S = rho.size();
  std::vector<double> out(static_cast<std::size_t>(S) * S);
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      out[static_cast<std::size_t>(s1 + R) * S + static_cast<std::size_t>(s2 + R)] = rho(s1, s2, s1, s2).real();
  return out;
}

double momentum_diagonal(const DensityMatrix& rho, double k1, double k2) {
  const int R = rho.radius();
  const int S = rho.size();
  std::vector<cplx> v(rho.dim());
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      v[static_cast<std::size_t>(s1 + R) * S + static_cast<std::size_t>(s2 + R)] = std::polar(1.0, k1 * s1 + k2 * s2);
  const std::size_t d = rho.dim();
  const auto data = rho.data();
  cplx acc = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < d; ++c) row += data[r * d + c] * v[c];
    acc += std::conj(v[r]) * row;
  }
  return acc.real() / (4.0 * std::numbers::pi * std::numbers::pi);
}

namespace {

// Applies L to one ket index (pos 0 or 1) or conj(L) to one bra index (pos 2 or 3).
DensityMatrix apply_site_map(const DensityMatrix& in, const std::vector<cplx>& L, int pos) {
  const int R = in.radius();
  const int S = in.size();
  DensityMatrix out(in.window());
  const bool bra = pos >= 2;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b)
      for (int c = -R; c <= R; ++c)
        for (int d = -R; d <= R; ++d) {
          std::array<int, 4> idx{a, b, c, d};
          const int s = idx[pos];
          cplx acc = 0.0;
          for (int m = -R; m <= R; ++m) {
            idx[pos] = m;
            const cplx l = L[static_cast<std::size_t>(s + R) * S + static_cast<std::size_t>(m + R)];
            acc += (bra ? std::conj(l) : l) * in(idx[0], idx[1], idx[2], idx[3]);
          }
          out(a, b, c, d) = acc;
        }
  return out;
}

}  // namespace

DensityMatrix u1_transform(const DensityMatrix& rho, double t_omega, bool inverse) {
  const int R = rho.radius();
  const int S = rho.size();
  const BesselJTable<double> j(2 * R, t_omega);
  std::vector<cplx> L(static_cast<std::size_t>(S) * S);
  for (int s = -R; s <= R; ++s)
    for (int m = -R; m <= R; ++m) {
      // u(s,m) = i^{s+m} J_{s-m}; the inverse uses u^dagger(s,m) = conj(u(m,s)).
      const cplx u = inverse ? std::conj(ipow(m + s) * j(m - s)) : ipow(s + m) * j(s - m);
      L[static_cast<std::size_t>(s + R) * S + static_cast<std::size_t>(m + R)] = u;
    }
  DensityMatrix out = apply_site_map(rho, L, 0);
  out = apply_site_map(out, L, 1);
  out = apply_site_map(out, L, 2);
  return apply_site_map(out, L, 3);
}

DensityMatrix exchange(const DensityMatrix& rho) {
  DensityMatrix out(rho.window());
  const int R = rho.radius();
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s1p = -R; s1p <= R; ++s1p)
        for (int s2p = -R; s2p <= R; ++s2p) out(s1, s2, s1p, s2p) = rho(s2, s1, s2p, s1p);
  return out;
}

}  // namespace dqw
