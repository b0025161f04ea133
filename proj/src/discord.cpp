#include "dqw/discord.hpp"

#include <algorithm>
#include <cmath>

namespace dqw {

namespace {

using Mat2 = std::array<std::array<cplx, 2>, 2>;

constexpr Mat2 kPauli[4] = {
    {{{1.0, 0.0}, {0.0, 1.0}}},
    {{{0.0, 1.0}, {1.0, 0.0}}},
    {{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}},
    {{{1.0, 0.0}, {0.0, -1.0}}},
};

// Tr(rho (P_a (x) P_b)) with rho indexed by 2*i1 + i2.
cplx pauli_expectation(const std::array<std::array<cplx, 4>, 4>& rho, int a, int b) {
  cplx acc = 0.0;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          acc += rho[2 * i1 + i2][2 * j1 + j2] * kPauli[a][j1][i1] * kPauli[b][j2][i2];
  return acc;
}

}  // namespace

std::optional<BlochDecomposition> bloch_decompose(const std::array<std::array<cplx, 4>, 4>& rho4, bool normalize,
                                                  double floor) {
  double scale = 1.0;
  if (normalize) {
    const double tr = (rho4[0][0] + rho4[1][1] + rho4[2][2] + rho4[3][3]).real();
    if (!(tr >= floor)) return std::nullopt;
    scale = 1.0 / tr;
  }
  BlochDecomposition b;
  for (int i = 0; i < 3; ++i) {
    b.x[i] = scale * pauli_expectation(rho4, i + 1, 0).real();
    b.y[i] = scale * pauli_expectation(rho4, 0, i + 1).real();
    for (int j = 0; j < 3; ++j) b.t[i][j] = scale * pauli_expectation(rho4, i + 1, j + 1).real();
  }
  return b;
}

double symmetric3_max_eigenvalue(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  if (p1 == 0.0) return std::max({m[0][0], m[1][1], m[2][2]});
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  const double d0 = m[0][0] - q, d1 = m[1][1] - q, d2 = m[2][2] - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  // B = (m - q I) / p; r = det(B) / 2.
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const double b01 = m[0][1] / p, b02 = m[0][2] / p, b12 = m[1][2] / p;
  const double det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

double gqd_lower_raw(const BlochDecomposition& b) {
  std::array<std::array<double, 3>, 3> k{};
  double x2 = 0.0, t2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    x2 += b.x[i] * b.x[i];
    for (int j = 0; j < 3; ++j) {
      t2 += b.t[i][j] * b.t[i][j];
      double tt = 0.0;
      for (int l = 0; l < 3; ++l) tt += b.t[i][l] * b.t[j][l];
      k[i][j] = b.x[i] * b.x[j] + tt;
    }
  }
  return 0.25 * (x2 + t2 - symmetric3_max_eigenvalue(k));
}

double gqd_lower(const BlochDecomposition& b) { return std::max(0.0, gqd_lower_raw(b)); }

}  // namespace dqw
