#include "dqw/spectral_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dqw/parallel.hpp"

namespace dqw {

namespace {

constexpr double kPi = std::numbers::pi;

double energy(double k) { return 1.0 - std::cos(k); }

void check_points(int M) {
  if (M < 4) throw std::invalid_argument("quadrature needs at least 4 points per axis");
  if (M > kMaxQuadraturePoints)
    throw ResourceError("quadrature size " + std::to_string(M) + " exceeds " +
                        std::to_string(kMaxQuadraturePoints));
}

// Rate F per unit of the dimensionless times: F t = -i t_omega * e + t_d * d.
void rate_parts(const FourierPoint& k, double& e, double& d) {
  e = energy(k.k1) - energy(k.k1p) + energy(k.k2) - energy(k.k2p);
  auto c = [](double a, double b) { return std::cos(a - b); };
  d = c(k.k1, k.k1p) - 1.0 + c(k.k2, k.k2p) - 1.0 + c(k.k1, k.k2p) + c(k.k2, k.k1p) - c(k.k1, k.k2) -
      c(k.k1p, k.k2p);
}

}  // namespace

cplx generator_f(const FourierPoint& k, const SimParams& p) {
  double e = 0.0, d = 0.0;
  rate_parts(k, e, d);
  return {p.t_d() * d, -p.t_omega() * e};
}

int min_quadrature_points(const SimParams& p, int max_abs_s) {
  // Aliasing images sit M sites away; the walk spreads over ~t_omega + sqrt(t_d).
  const double spread = p.t_omega() + 3.0 * std::sqrt(p.t_d() + 1.0);
  return static_cast<int>(std::ceil(2.0 * (max_abs_s + spread) + 8.0));
}

cplx oracle_element(int s1, int s2, int s1p, int s2p, const SimParams& p, int M) {
  p.validate();
  check_points(M);
  std::vector<double> ks(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) ks[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * (j + 1) / M;
  cplx total = 0.0;
  for (int a = 0; a < M; ++a) {
    cplx t1 = 0.0;
    for (int b = 0; b < M; ++b) {
      cplx t2 = 0.0;
      for (int c = 0; c < M; ++c) {
        cplx t3 = 0.0;
        for (int d = 0; d < M; ++d) {
          const FourierPoint k{ks[a], ks[b], ks[c], ks[d]};
          const double phase = ks[a] * s1 - ks[b] * s1p + ks[c] * s2 - ks[d] * s2p;
          t3 += std::exp(generator_f(k, p)) * std::polar(1.0, phase);
        }
        t2 += t3;
      }
      t1 += t2;
    }
    total += t1;
  }
  const double m4 = static_cast<double>(M) * M * M * M;
  return total / m4;
}

FourierGridState::FourierGridState(int M) : m_(M) {
  check_points(M);
  const std::size_t m = static_cast<std::size_t>(M);
  values_.assign(m * m * m * m, cplx(1.0, 0.0));
}

double FourierGridState::k(int j) const { return -kPi + 2.0 * kPi * (j + 1) / m_; }

void FourierGridState::propagate(double omega, double diss, double dt) {
  SimParams p;
  p.omega = omega;
  p.diss = diss;
  p.time = dt;
  p.validate();
  const std::size_t m = static_cast<std::size_t>(m_);
  parallel_for(0, m_, [&](std::ptrdiff_t a) {
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
          const FourierPoint kp{k(static_cast<int>(a)), k(static_cast<int>(b)), k(static_cast<int>(c)),
                                k(static_cast<int>(d))};
          values_[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d] *= std::exp(generator_f(kp, p));
        }
  });
}

DensityMatrix FourierGridState::to_wannier(const Window& w) const {
  const int R = w.radius;
  const std::size_t S = static_cast<std::size_t>(w.size());
  const std::size_t m = static_cast<std::size_t>(m_);
  // e^{i k_j s} for s in [-R, R].
  std::vector<cplx> ph(m * S);
  for (std::size_t j = 0; j < m; ++j)
    for (int s = -R; s <= R; ++s) ph[j * S + static_cast<std::size_t>(s + R)] = std::polar(1.0, k(static_cast<int>(j)) * s);

  // Layout [k1][k1'][k2][k2'] -> A1 [k1][k1'][k2][s2'] (factor e^{-i k2' s2'}).
  std::vector<cplx> a1(m * m * m * S);
  parallel_for(0, static_cast<std::ptrdiff_t>(m * m * m), [&](std::ptrdiff_t row) {
    const cplx* in = &values_[static_cast<std::size_t>(row) * m];
    for (std::size_t s = 0; s < S; ++s) {
      cplx acc = 0.0;
      for (std::size_t d = 0; d < m; ++d) acc += in[d] * std::conj(ph[d * S + s]);
      a1[static_cast<std::size_t>(row) * S + s] = acc;
    }
  });
  // A2 [k1][k1'][s2][s2'] (factor e^{+i k2 s2}).
  std::vector<cplx> a2(m * m * S * S);
  parallel_for(0, static_cast<std::ptrdiff_t>(m * m), [&](std::ptrdiff_t pair) {
    for (std::size_t s2 = 0; s2 < S; ++s2)
      for (std::size_t s2p = 0; s2p < S; ++s2p) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < m; ++c)
          acc += ph[c * S + s2] * a1[(static_cast<std::size_t>(pair) * m + c) * S + s2p];
        a2[(static_cast<std::size_t>(pair) * S + s2) * S + s2p] = acc;
      }
  });
  a1.clear();
  a1.shrink_to_fit();
  // A3 [k1][s1'][s2][s2'] (factor e^{-i k1' s1'}).
  std::vector<cplx> a3(m * S * S * S);
  const std::size_t SS = S * S;
  parallel_for(0, static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t a) {
    for (std::size_t s1p = 0; s1p < S; ++s1p)
      for (std::size_t e = 0; e < SS; ++e) {
        cplx acc = 0.0;
        for (std::size_t b = 0; b < m; ++b)
          acc += std::conj(ph[b * S + s1p]) * a2[(static_cast<std::size_t>(a) * m + b) * SS + e];
        a3[(static_cast<std::size_t>(a) * S + s1p) * SS + e] = acc;
      }
  });
  // rho [s1][s2][s1'][s2'] (factor e^{+i k1 s1}), normalized by M^4.
  const double norm = 1.0 / (static_cast<double>(m) * m * m * m);
  DensityMatrix rho(w);
  parallel_for(0, static_cast<std::ptrdiff_t>(S), [&](std::ptrdiff_t s1) {
    for (std::size_t s1p = 0; s1p < S; ++s1p)
      for (std::size_t s2 = 0; s2 < S; ++s2)
        for (std::size_t s2p = 0; s2p < S; ++s2p) {
          cplx acc = 0.0;
          for (std::size_t a = 0; a < m; ++a)
            acc += ph[a * S + static_cast<std::size_t>(s1)] * a3[((a * S + s1p) * S + s2) * S + s2p];
          rho(static_cast<int>(s1) - R, static_cast<int>(s2) - R, static_cast<int>(s1p) - R,
              static_cast<int>(s2p) - R) = acc * norm;
        }
  });
  return rho;
}

DensityMatrix oracle_matrix(const Window& w, const SimParams& p, int M) {
  p.validate();
  w.validate();
  check_points(M);
  const int need = min_quadrature_points(p, w.radius);
  if (M < need)
    throw std::invalid_argument("quadrature size " + std::to_string(M) + " below required " + std::to_string(need));
  FourierGridState state(M);
  state.propagate(p.omega, p.diss, p.time);
  return state.to_wannier(w);
}

double oracle_mirror_sum(double t_d, int M) {
  if (!std::isfinite(t_d) || t_d < 0.0) throw std::invalid_argument("oracle_mirror_sum: t_d must be >= 0");
  if (M < 4) throw std::invalid_argument("oracle_mirror_sum: M too small");
  double total = 0.0;
  for (int a = 0; a < M; ++a) {
    const double s1 = std::sin(-kPi + 2.0 * kPi * (a + 1) / M);
    double row = 0.0;
    for (int b = 0; b < M; ++b) {
      const double s = s1 + std::sin(-kPi + 2.0 * kPi * (b + 1) / M);
      row += std::exp(-2.0 * t_d * s * s);
    }
    total += row;
  }
  return total / (static_cast<double>(M) * M);
}

}  // namespace dqw
