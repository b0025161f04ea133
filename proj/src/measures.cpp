#include "dqw/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dqw/bessel.hpp"
#include "dqw/propagator.hpp"

namespace dqw {

namespace {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

bool exchange_symmetric(const DensityMatrix& rho) {
  const int R = rho.radius();
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2)
      for (int s1p = -R; s1p <= R; ++s1p)
        for (int s2p = -R; s2p <= R; ++s2p)
          if (rho(s1, s2, s1p, s2p) != rho(s2, s1, s2p, s1p)) return false;
  return true;
}

double entropy_from_eigenvalues(const std::vector<double>& ev, const EntropyOptions& opt) {
  double s = 0.0;
  for (double l : ev) {
    if (l < -100.0 * opt.tol)
      throw WindowUnderflowError("density matrix eigenvalue " + std::to_string(l) +
                                     " below tolerance; enlarge the window",
                                 l);
    if (l > opt.floor) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

double purity_matrix(const DensityMatrix& rho) {
  double acc = 0.0;
  for (const cplx& v : rho.data()) acc += std::norm(v);
  return acc;
}

double purity_series(double t_d, int cutoff) {
  if (!std::isfinite(t_d) || t_d < 0.0) throw std::invalid_argument("purity_series: t_d must be >= 0");
  if (t_d == 0.0) return 1.0;
  const long double x = 2.0L * static_cast<long double>(t_d);
  if (cutoff < 0) {
    const BesselIScaledTable<double> probe(bessel_i_extent(2.0 * t_d), 2.0 * t_d);
    cutoff = probe.max_order();
    while (cutoff > 0 && probe(cutoff) < 1e-17) --cutoff;
    ++cutoff;
  }
  // e^{-2x} prod of six I = prod of six e^{-x/3} I.
  const BesselIScaledTable<long double> ii(3 * cutoff, x);
  const long double scale = std::exp(2.0L * x / 3.0L);
  auto I = [&](int n) { return ii(n) * scale; };
  long double total = 0.0L;
  long double magnitude = 0.0L;
  for (int m = -cutoff; m <= cutoff; ++m) {
    long double sm = 0.0L;
    for (int a = -cutoff; a <= cutoff; ++a) {
      long double sa = 0.0L;
      for (int b = -cutoff; b <= cutoff; ++b) {
        const long double t = I(b) * I(b + m) * I(a + b + m);
        sa += (b & 1) ? -t : t;
        magnitude += I(m) * I(a) * I(a + m) * t;
      }
      const long double t = I(a) * I(a + m) * sa;
      sm += (a & 1) ? -t : t;
    }
    total += I(m) * sm;
  }
  // The alternating terms reach e^{4x}; rounding scales with their absolute sum.
  if (magnitude * std::numeric_limits<long double>::epsilon() > 1e-9L)
    throw std::range_error("purity_series loses precision at t_d = " + std::to_string(t_d) +
                           "; use purity_matrix");
  return static_cast<double>(total);
}

double purity_one(double t_d) { return bessel_i_scaled(0, 2.0 * t_d); }

std::vector<double> density_eigenvalues(const DensityMatrix& rho) {
  const int R = rho.radius();
  const int S = rho.size();
  const std::size_t d = rho.dim();
  auto flat = [&](int a, int b) { return static_cast<Eigen::Index>((a + R) * S + (b + R)); };
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      rho.data().data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  if (!exchange_symmetric(rho)) return hermitian_eigenvalues(m);

  // Symmetric and antisymmetric pair bases, each vector spanning at most two sites.
  struct Member {
    Eigen::Index idx[2];
    double coef[2];
    int count;
  };
  const double h = std::sqrt(0.5);
  std::vector<Member> sym, anti;
  for (int a = -R; a <= R; ++a)
    for (int b = a; b <= R; ++b) {
      if (a == b) {
        sym.push_back({{flat(a, a), 0}, {1.0, 0.0}, 1});
      } else {
        sym.push_back({{flat(a, b), flat(b, a)}, {h, h}, 2});
        anti.push_back({{flat(a, b), flat(b, a)}, {h, -h}, 2});
      }
    }
  auto block = [&](const std::vector<Member>& basis) {
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    CMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (int u = 0; u < basis[i].count; ++u)
          for (int v = 0; v < basis[j].count; ++v)
            acc += basis[i].coef[u] * basis[j].coef[v] * m(basis[i].idx[u], basis[j].idx[v]);
        out(i, j) = acc;
      }
    return out;
  };
  const CMatrix bs = block(sym);
  const CMatrix ba = block(anti);
  std::vector<double> ev = hermitian_eigenvalues(bs);
  const std::vector<double> eva = hermitian_eigenvalues(ba);
  ev.insert(ev.end(), eva.begin(), eva.end());
  std::sort(ev.begin(), ev.end());
  return ev;
}

double von_neumann_entropy(const DensityMatrix& rho, const EntropyOptions& opt) {
  return entropy_from_eigenvalues(density_eigenvalues(rho), opt);
}

double von_neumann_entropy(const ReducedDensity& rho, const EntropyOptions& opt) {
  const Eigen::Index n = rho.size();
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(rho.data().data(), n, n);
  return entropy_from_eigenvalues(hermitian_eigenvalues(m), opt);
}

double relative_entropy_coherence(const DensityMatrix& rho, const EntropyOptions& opt) {
  double shannon = 0.0;
  for (double p : probability_profile(rho))
    if (p > opt.floor) shannon -= p * std::log(p);
  return shannon - von_neumann_entropy(rho, opt);
}

double mirror_t1(double t_d) { return bessel_i_scaled(0, t_d); }

double mirror_total(const DensityMatrix& rho, double t_d) {
  const int R = rho.radius();
  cplx acc = 0.0;
  for (int s1 = -R; s1 <= R; ++s1)
    for (int s2 = -R; s2 <= R; ++s2) acc += rho(s1, s2, -s1, -s2);
  if (std::abs(acc.imag()) > 1e-10) throw std::logic_error("mirror sum has a non-negligible imaginary part");
  const double t1 = mirror_t1(t_d);
  return acc.real() - t1 * t1;
}

MeasureRecord compute_measures(const DensityMatrix& rho, const SimParams& p, const EntropyOptions& opt) {
  MeasureRecord r;
  r.t_omega = p.t_omega();
  r.t_d = p.t_d();
  r.purity2 = purity_matrix(rho);
  const double p1 = purity_one(r.t_d);
  r.purity1_sq = p1 * p1;
  r.delta_purity = r.purity2 - r.purity1_sq;
  const std::vector<double> ev = density_eigenvalues(rho);
  r.entropy = entropy_from_eigenvalues(ev, opt);
  r.entropy_independent = 2.0 * von_neumann_entropy(one_particle_analytic(p, rho.window()), opt);
  double shannon = 0.0;
  for (double q : probability_profile(rho))
    if (q > opt.floor) shannon -= q * std::log(q);
  r.c_re = shannon - r.entropy;
  r.mirror_t1 = mirror_t1(r.t_d);
  r.mirror_total = mirror_total(rho, r.t_d);
  return r;
}

}  // namespace dqw
