// Acceptance suite: one PASS/FAIL line per criterion, preceded by its sub-checks.
// Usage: acceptance [--criterion N]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dqw/bessel.hpp"
#include "dqw/discord.hpp"
#include "dqw/measures.hpp"
#include "dqw/parallel.hpp"
#include "dqw/propagator.hpp"
#include "dqw/spectral_oracle.hpp"
#include "dqw/wigner.hpp"
#include "dqw/window.hpp"

using namespace dqw;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-10;

class Report {
 public:
  void check(const std::string& what, double measured, double bound) {
    const bool ok = measured <= bound;
    std::printf("    %-4s %-64s %.3e <= %.1e\n", ok ? "ok" : "FAIL", what.c_str(), measured, bound);
    ok_ = ok_ && ok;
  }
  void require(const std::string& what, bool ok, const std::string& detail = {}) {
    std::printf("    %-4s %-64s %s\n", ok ? "ok" : "FAIL", what.c_str(), detail.c_str());
    ok_ = ok_ && ok;
  }
  void note(const std::string& text) { std::printf("         %s\n", text.c_str()); }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

DensityMatrix evolve(double to, double td, Window* used = nullptr) {
  const SimParams p = SimParams::from_dimensionless(to, td);
  const Window w = select_window(p, kTol);
  if (used) *used = w;
  return evolve_analytic(p, w);
}

double max_dev(const DensityMatrix& a, const DensityMatrix& b, int r) {
  double d = 0.0;
  for (int s1 = -r; s1 <= r; ++s1)
    for (int s2 = -r; s2 <= r; ++s2)
      for (int s3 = -r; s3 <= r; ++s3)
        for (int s4 = -r; s4 <= r; ++s4) d = std::max(d, std::abs(a(s1, s2, s3, s4) - b(s1, s2, s3, s4)));
  return d;
}

cplx ipow(int n) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((n % 4) + 4) % 4];
}

// Argmax of f on a uniform grid followed by a parabolic fit through the best three points.
double refined_argmax(const std::vector<double>& x, const std::vector<double>& f) {
  const auto it = std::max_element(f.begin(), f.end());
  const std::size_t i = static_cast<std::size_t>(it - f.begin());
  if (i == 0 || i + 1 == f.size()) return x[i];
  const double h = x[i + 1] - x[i];
  const double den = f[i - 1] - 2.0 * f[i] + f[i + 1];
  return den == 0.0 ? x[i] : x[i] + 0.5 * h * (f[i - 1] - f[i + 1]) / den;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) v.push_back(lo + i * step);
  return v;
}

bool c1(Report& r) {
  const int rs = 5;
  double worst = 0.0;
  for (double to : {0.5, 1.0, 2.0})
    for (double td : {0.0, 0.5, 1.0, 2.0}) {
      const SimParams p = SimParams::from_dimensionless(to, td);
      const DensityMatrix rho = evolve(to, td);
      int M = std::max(32, min_quadrature_points(p, rs));
      M += M & 1;
      const DensityMatrix orc = oracle_matrix(Window::fixed(rs, 0), p, M);
      const double d = max_dev(rho, orc, rs);
      worst = std::max(worst, d);
      r.check("(t_omega=" + num(to) + ", t_d=" + num(td) + ") |s|<=5, M=" + std::to_string(M), d, 1e-6);
    }
  r.note("largest deviation " + num(worst));
  return r.ok();
}

bool c2(Report& r) {
  Window w;
  const DensityMatrix rho = evolve(1.0, 1.0, &w);
  const int R = rho.radius();
  r.note("window radius " + std::to_string(w.radius) + ", cutoff " + std::to_string(w.cutoff_i));
  r.check("trace", std::abs(rho.trace() - 1.0), 1e-8);
  double herm = 0.0, exch = 0.0;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b)
      for (int c = -R; c <= R; ++c)
        for (int d = -R; d <= R; ++d) {
          herm = std::max(herm, std::abs(rho(a, b, c, d) - std::conj(rho(c, d, a, b))));
          exch = std::max(exch, std::abs(rho(a, b, c, d) - rho(b, a, d, c)));
        }
  r.check("hermiticity (exact)", herm, 0.0);
  r.check("exchange symmetry (exact)", exch, 0.0);
  double mom = 0.0;
  const double target = 1.0 / (4.0 * kPi * kPi);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double k1 = -kPi + (i + 0.5) * kPi / 8.0, k2 = -kPi + (j + 0.5) * kPi / 8.0;
      mom = std::max(mom, std::abs(momentum_diagonal(rho, k1, k2) - target));
    }
  r.check("momentum diagonal on 16x16 grid", mom, 1e-6);
  const double lmin = density_eigenvalues(rho).front();
  r.check("positivity (-min eigenvalue)", std::max(0.0, -lmin), 1e-8);
  return r.ok();
}

// Single-walker Wigner function of psi(s) = i^s J_s(z) at doubled coordinate twice.
double wigner_pure(double z, double k, int twice) {
  const int L = bessel_j_extent(z);
  cplx acc = 0.0;
  for (int u = -L; u <= L; ++u) {
    const int v = twice - u;
    if (std::abs(v) > L) continue;
    const cplx a = ipow(u) * bessel_j(u, z), b = ipow(v) * bessel_j(v, z);
    acc += a * std::conj(b) * std::exp(cplx(0.0, -k * (u - v)));
  }
  return acc.real() / (2.0 * kPi);
}

bool c3(Report& r) {
  for (double to : {0.5, 1.0, 2.0, 5.0}) {
    Window w;
    const DensityMatrix rho = evolve(to, 0.0, &w);
    const int R = rho.radius();
    double d = 0.0;
    for (int a = -R; a <= R; ++a)
      for (int b = -R; b <= R; ++b)
        for (int c = -R; c <= R; ++c)
          for (int e = -R; e <= R; ++e) {
            const cplx ref = ipow(a + b - c - e) * bessel_j(a, to) * bessel_j(b, to) * bessel_j(c, to) * bessel_j(e, to);
            d = std::max(d, std::abs(rho(a, b, c, e) - ref));
          }
    const std::string tag = "t_omega=" + num(to) + ": ";
    r.check(tag + "matrix vs Bessel product", d, 1e-10);
    r.check(tag + "|purity - 1|", std::abs(purity_matrix(rho) - 1.0), 1e-8);
    r.check(tag + "entropy", std::abs(von_neumann_entropy(rho)), 1e-6);
    const SimParams p = SimParams::from_dimensionless(to, 0.0);
    const WignerSeries ws(p, w.cutoff_i);
    // Wigner values pair amplitudes, so window truncation enters as the square root of the
    // out-of-window mass; the matrix route gets a window certified at the squared bound.
    const DensityMatrix wide = evolve_analytic(p, select_window(p, 1e-16));
    double ds = 0.0, dw = 0.0;
    for (int x1 = -6; x1 <= 6; ++x1)
      for (int x2 = -6; x2 <= 6; x2 += 3)
        for (double k1 : {-2.9, -0.4, 1.3})
          for (double k2 : {-1.7, 0.2, 2.6}) {
            const double ref = wigner_pure(to, k1, x1) * wigner_pure(to, k2, x2);
            ds = std::max(ds, std::abs(ws(k1, k2, {x1}, {x2}) - ref));
            dw = std::max(dw, std::abs(wigner_from_rho(wide, k1, k2, {x1}, {x2}) - ref));
          }
    r.check(tag + "Wigner series vs pure-state product", ds, 1e-8);
    r.check(tag + "Wigner of matrix vs pure-state product", dw, 1e-8);
  }
  return r.ok();
}

bool c4(Report& r) {
  Window w;
  const DensityMatrix rho = evolve(1.0, 1.0, &w);
  const DensityMatrix rho0 = evolve_analytic(SimParams::from_dimensionless(0.0, 1.0), w);
  const int half = w.radius / 2;
  r.note("window radius " + std::to_string(w.radius) + ", inner radius " + std::to_string(half));
  r.check("U1 rho U1^dag vs rho(omega=0)", max_dev(u1_transform(rho, 1.0), rho0, half), 1e-6);
  return r.ok();
}

bool c5(Report& r) {
  for (double om : {0.0, 1.0})
    for (double td : {0.5, 1.0, 2.0}) {
      const double series = purity_series(td);
      const double matrix = purity_matrix(evolve(om, td));
      r.check("t_omega=" + num(om) + ", t_d=" + num(td) + " series " + num(series), std::abs(series - matrix), 1e-6);
    }
  return r.ok();
}

bool c6(Report& r) {
  // Mirror correlation: matrix route against the momentum integral.
  const auto tds = grid(1.0, 3.0, 0.05);
  std::vector<double> tm(tds.size()), to(tds.size());
  parallel_for(0, static_cast<std::ptrdiff_t>(tds.size()), [&](std::ptrdiff_t i) {
    const double td = tds[static_cast<std::size_t>(i)];
    tm[static_cast<std::size_t>(i)] = mirror_total(evolve(1.0, td), td);
    to[static_cast<std::size_t>(i)] = oracle_mirror_sum(td, 128) - mirror_t1(td) * mirror_t1(td);
  });
  double route = 0.0;
  for (std::size_t i = 0; i < tds.size(); ++i) route = std::max(route, std::abs(tm[i] - to[i]));
  r.check("mirror correlation matrix vs momentum integral", route, 1e-8);
  const double am = refined_argmax(tds, tm);
  r.check("argmax_t_d mirror correlation = 1.9 (got " + num(am) + ")", std::abs(am - 1.9), 0.1);

  // Purity gap from the series (omega-independent), checked against the matrix.
  const auto pds = grid(0.05, 3.0, 0.025);
  std::vector<double> gap(pds.size());
  double gmin = 0.0;
  for (std::size_t i = 0; i < pds.size(); ++i) {
    gap[i] = purity_series(pds[i]) - purity_one(pds[i]) * purity_one(pds[i]);
    gmin = std::min(gmin, gap[i]);
  }
  double route2 = 0.0;
  for (double td : {0.3, 0.6, 1.2}) {
    const MeasureRecord m = compute_measures(evolve(1.0, td), SimParams::from_dimensionless(1.0, td));
    const double s = purity_series(td) - purity_one(td) * purity_one(td);
    route2 = std::max(route2, std::abs(m.delta_purity - s));
  }
  r.check("purity gap matrix vs series", route2, 1e-6);
  const double ap = refined_argmax(pds, gap);
  r.check("argmax_t_d purity gap = 1.2 (got " + num(ap) + ")", std::abs(ap - 1.2), 0.15);
  r.note("purity gap maximum " + num(*std::max_element(gap.begin(), gap.end())) + " at t_d " + num(ap) +
         ", i.e. 4 D t = " + num(2.0 * ap));
  r.check("purity gap >= 0 (-min)", std::max(0.0, -gmin), 1e-8);

  // Single-walker mirror sum equals e^{-t_d} I_0(t_d).
  double d1 = 0.0;
  for (double td : {0.5, 1.0, 2.0, 3.0}) {
    const ReducedDensity r1 = reduce_one_particle(evolve(1.0, td));
    cplx s = 0.0;
    for (int k = -r1.radius(); k <= r1.radius(); ++k) s += r1(k, -k);
    d1 = std::max(d1, std::abs(s - mirror_t1(td)));
    d1 = std::max(d1, std::abs(mirror_t1(td) - bessel_i_scaled(0, td)));
  }
  r.check("single-walker mirror sum vs e^{-t_d} I_0(t_d)", d1, 1e-9);

  // Long-time scaling from the momentum integral.
  double lo = 1e300, hi = -1e300;
  for (double td = 8.0; td <= 16.0 + 1e-12; td += 1.0) {
    const double v = (oracle_mirror_sum(td, 512) - mirror_t1(td) * mirror_t1(td)) * td;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mean = 0.5 * (lo + hi);
  r.note("mirror correlation times t_d on [8, 16] spans " + num(lo) + " .. " + num(hi));
  r.check("relative spread of mirror correlation times t_d", (hi - lo) / (2.0 * mean), 0.2);
  return r.ok();
}

bool c7(Report& r) {
  const std::vector<double> rds = {0.0, 0.1, 0.5, 1.0, 2.0};
  const auto ts = grid(0.05, 1.0, 0.05);
  std::vector<std::vector<double>> c(rds.size(), std::vector<double>(ts.size()));
  parallel_for(0, static_cast<std::ptrdiff_t>(rds.size() * ts.size()), [&](std::ptrdiff_t job) {
    const std::size_t a = static_cast<std::size_t>(job) / ts.size(), i = static_cast<std::size_t>(job) % ts.size();
    c[a][i] = relative_entropy_coherence(evolve(ts[i], rds[a] * ts[i]));
  });
  double cmin = 0.0;
  for (const auto& row : c)
    for (double v : row) cmin = std::min(cmin, v);
  r.check("C_RE >= 0 (-min)", std::max(0.0, -cmin), 1e-8);

  auto ordering = [&](std::size_t i) {
    std::vector<std::size_t> idx(rds.size());
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] = a;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return c[x][i] > c[y][i]; });
    std::string s;
    for (std::size_t a : idx) s += (s.empty() ? "" : " > ") + num(rds[a]);
    return s;
  };
  const std::size_t i02 = 3, i10 = ts.size() - 1;
  const std::string early = ordering(i02), late = ordering(i10);
  r.note("ordering in r_D at t' = 0.2: " + early);
  r.note("ordering in r_D at t' = 1.0: " + late);
  r.require("ordering differs between t' = 0.2 and t' = 1.0", early != late);

  // Earliest grid time after which the non-dissipative curve dominates every dissipative one.
  std::size_t start = ts.size();
  for (std::size_t i = ts.size(); i-- > 0;) {
    bool dominates = true;
    for (std::size_t a = 1; a < rds.size(); ++a) dominates = dominates && c[0][i] >= c[a][i];
    if (!dominates) break;
    start = i;
  }
  const double tau = start < ts.size() ? ts[start] : 2.0;
  r.require("regime change tau_c in [0.3, 0.5]", tau >= 0.3 - 1e-12 && tau <= 0.5 + 1e-12, "tau_c = " + num(tau));
  return r.ok();
}

bool c8(Report& r) {
  {
    const double h = std::sqrt(0.5);
    std::array<std::array<cplx, 4>, 4> bell{};
    bell[0][0] = bell[0][3] = bell[3][0] = bell[3][3] = h * h;
    r.check("Bell state discord = 1/2", std::abs(gqd_lower(*bloch_decompose(bell)) - 0.5), 1e-12);
  }
  double zero = 0.0;
  for (double to : {0.5, 1.0, 2.0, 4.0}) zero = std::max(zero, std::abs(gqd_breakdown(evolve(to, 0.0)).total_weighted));
  r.check("r_D = 0 discord", zero, 1e-8);

  const std::vector<double> rds = {0.1, 0.5, 1.0, 2.0};
  const auto ts = grid(0.2, 6.0, 0.2);
  std::vector<std::vector<double>> g(rds.size(), std::vector<double>(ts.size(), -1.0));
  parallel_for(0, static_cast<std::ptrdiff_t>(rds.size() * ts.size()), [&](std::ptrdiff_t job) {
    const std::size_t a = static_cast<std::size_t>(job) / ts.size(), i = static_cast<std::size_t>(job) % ts.size();
    const double td = rds[a] * ts[i];
    if (kernel_cancellation_error(td) > 1e-8) return;
    g[a][i] = gqd_breakdown(evolve(ts[i], td)).total_weighted;
  });
  std::vector<double> am(rds.size());
  for (std::size_t a = 0; a < rds.size(); ++a) {
    double early = 0.0;
    std::vector<double> tv, gv;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (g[a][i] < 0.0) break;
      if (ts[i] <= 1.0 + 1e-12) early = std::max(early, g[a][i]);
      tv.push_back(ts[i]);
      gv.push_back(g[a][i]);
    }
    r.require("r_D=" + num(rds[a]) + ": discord > 1e-6 for some t' <= 1", early > 1e-6, "max " + num(early));
    am[a] = refined_argmax(tv, gv);
    r.require("r_D=" + num(rds[a]) + ": interior maximum within scanned range", am[a] > tv.front() && am[a] < tv.back(),
              "argmax t' = " + num(am[a]) + " of " + num(tv.back()));
  }
  bool decreasing = true;
  for (std::size_t a = 1; a < am.size(); ++a) decreasing = decreasing && am[a] < am[a - 1];
  r.require("argmax time strictly decreasing in r_D", decreasing);
  return r.ok();
}

bool c9(Report& r) {
  {
    const DensityMatrix rho = evolve(1.0, 1.0);
    const WignerGrid g = wigner_grid_from_rho(rho, 64);
    const WignerMarginals m = wigner_marginals(g);
    r.check("normalization at (1, 1)", std::abs(m.normalization - 1.0), 1e-6);
    double diag = 0.0, half = 0.0;
    const int X = g.x_count();
    for (int i1 = 0; i1 < X; ++i1)
      for (int i2 = 0; i2 < X; ++i2) {
        const int a = i1 - 2 * g.extent, b = i2 - 2 * g.extent;
        const double v = m.position[static_cast<std::size_t>(i1) * X + i2];
        if ((a & 1) || (b & 1)) half = std::max(half, std::abs(v));
        else diag = std::max(diag, std::abs(v - rho(a / 2, b / 2, a / 2, b / 2).real()));
      }
    r.check("position marginal vs diagonal", diag, 1e-6);
    r.check("position marginal at half-integer points", half, 1e-8);
    double inv = 0.0;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c)
          for (int d = -3; d <= 3; ++d) inv = std::max(inv, std::abs(rho_from_wigner(g, a, b, c, d) - rho(a, b, c, d)));
    r.check("inverse relation |s| <= 3", inv, 1e-6);
  }
  const double nv_diff = negative_volume(wigner_grid_from_rho(evolve(0.0, 5.0), 48));
  const double nv_ball = negative_volume(wigner_grid_from_rho(evolve(2.0, 0.0), 48));
  r.require("negative volume > 0 at (omega=0, t_d=5)", nv_diff > 0.0, num(nv_diff));
  r.require("negative volume > 0 at (D=0, t_omega=2)", nv_ball > 0.0, num(nv_ball));
  const DensityMatrix rho5 = evolve(0.0, 5.0);
  for (double dk : {0.0, kPi / 3.0}) {
    const auto slice = wigner_slice_from_rho(rho5, 0.5 * dk, -0.5 * dk);
    const auto neg = std::count_if(slice.begin(), slice.end(), [](double v) { return v < -1e-12; });
    r.require("negative cells at delta k = " + num(dk) + ", t_d = 5", neg > 0, std::to_string(neg) + " cells");
  }
  // Dependence on k1 - k2 alone: exact without hopping, reported but not asserted otherwise.
  for (double to : {0.0, 1.0}) {
    const DensityMatrix rho = evolve(to, 2.0);
    double d = 0.0;
    for (int x1 = -3; x1 <= 3; ++x1)
      for (int x2 = -3; x2 <= 3; ++x2)
        d = std::max(d, std::abs(wigner_from_rho(rho, 0.7, 0.2, {x1}, {x2}) - wigner_from_rho(rho, 1.9, 1.4, {x1}, {x2})));
    if (to == 0.0) r.check("W depends on k1 - k2 only at omega = 0", d, 1e-12);
    else r.note("shift of (k1, k2) at fixed k1 - k2 changes W by " + num(d) + " at t_omega = " + num(to));
  }
  return r.ok();
}

struct Snapshot {
  std::vector<cplx> rho;
  std::vector<double> scalars;
  std::vector<double> wigner;
};

Snapshot snapshot(int threads) {
  set_num_threads(threads);
  Snapshot s;
  for (auto [to, td] : {std::pair{1.0, 1.0}, std::pair{0.0, 2.5}, std::pair{2.0, 0.5}}) {
    const SimParams p = SimParams::from_dimensionless(to, td);
    const DensityMatrix rho = evolve(to, td);
    s.rho.insert(s.rho.end(), rho.data().begin(), rho.data().end());
    const MeasureRecord m = compute_measures(rho, p);
    const GqdBreakdown g = gqd_breakdown(rho);
    s.scalars.insert(s.scalars.end(), {m.purity2, m.entropy, m.c_re, m.mirror_total, g.total, g.total_weighted});
    const WignerGrid w = wigner_grid_from_rho(rho, 16);
    s.wigner.insert(s.wigner.end(), w.values.begin(), w.values.end());
  }
  return s;
}

template <class T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

bool c10(Report& r) {
  const int previous = num_threads();
  const Snapshot one = snapshot(1);
  for (int n : {2, 5}) {
    const Snapshot other = snapshot(n);
    const std::string tag = "1 vs " + std::to_string(n) + " threads: ";
    r.require(tag + "density matrices bit-identical", same_bits(one.rho, other.rho));
    r.require(tag + "measures bit-identical", same_bits(one.scalars, other.scalars));
    r.require(tag + "Wigner grids bit-identical", same_bits(one.wigner, other.wigner));
  }
  set_num_threads(previous);
  return r.ok();
}

struct Criterion {
  const char* title;
  std::function<bool(Report&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"oracle equivalence", c1},
      {"conservation suite", c2},
      {"closed forms without dissipation", c3},
      {"U1 identity", c4},
      {"purity cross-check", c5},
      {"reference scalars", c6},
      {"relative entropy of coherence", c7},
      {"geometric discord", c8},
      {"Wigner suite", c9},
      {"determinism", c10},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", all.size());
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Report rep;
    bool ok = false;
    try {
      ok = all[i].run(rep);
    } catch (const std::exception& e) {
      rep.note(std::string("exception: ") + e.what());
    }
    std::printf("%s  criterion %zu: %s\n", ok ? "PASS" : "FAIL", i + 1, all[i].title);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
