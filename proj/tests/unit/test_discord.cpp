#include <doctest.h>

#include <cmath>
#include <random>

#include "dqw/discord.hpp"
#include "dqw/propagator.hpp"
#include "dqw/window.hpp"

using namespace dqw;

namespace {

using Mat4 = std::array<std::array<cplx, 4>, 4>;

Mat4 pure_state(const std::array<cplx, 4>& psi) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = psi[i] * std::conj(psi[j]);
  return m;
}

DensityMatrix evolve(double to, double td) {
  const SimParams p = SimParams::from_dimensionless(to, td);
  return evolve_analytic(p, select_window(p, 1e-10));
}

// Random rotation from a normalized quaternion.
std::array<std::array<double, 3>, 3> rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double q[4];
  double n = 0.0;
  for (double& v : q) {
    v = g(rng);
    n += v * v;
  }
  n = std::sqrt(n);
  const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

}  // namespace

TEST_SUITE("discord") {
  TEST_CASE("mirror block at zero time") {
    const DensityMatrix rho = evolve(0.0, 0.0);
    const MirrorBlock b = reduce_bipartition(rho, 1);
    CHECK(b.rho9[8][8] == cplx(1.0, 0.0));
    for (const auto& row : b.rho4)
      for (const cplx& v : row) CHECK(v == cplx(0.0, 0.0));
    CHECK(b.block_trace == 0.0);
  }

  TEST_CASE("mirror block traces and populations") {
    const DensityMatrix rho = evolve(1.0, 0.8);
    for (int s = 1; s <= 3; ++s) {
      const MirrorBlock b = reduce_bipartition(rho, s);
      cplx tr = 0.0;
      for (int i = 0; i < 9; ++i) tr += b.rho9[i][i];
      CHECK(std::abs(tr - rho.trace()) <= 1e-13);
      CHECK(b.rho9[0][0] == rho(s, s, s, s));
      CHECK(b.rho9[4][4] == rho(-s, -s, -s, -s));
      // Blocks mixing traced and kept labels vanish.
      CHECK(b.rho9[0][2] == cplx(0.0, 0.0));
      CHECK(b.rho9[6][0] == cplx(0.0, 0.0));
      // Walker exchange maps AB to BA.
      CHECK(std::abs(b.rho4[1][1] - b.rho4[2][2]) <= 1e-15);
    }
  }

  TEST_CASE("labels beyond the window are rejected") {
    const DensityMatrix rho = evolve(0.5, 0.5);
    CHECK_THROWS_AS(reduce_bipartition(rho, rho.radius() + 1), std::out_of_range);
    CHECK_THROWS_AS(reduce_bipartition(rho, 0), std::out_of_range);
  }

  TEST_CASE("Bloch decomposition") {
    Mat4 mixed{};
    for (int i = 0; i < 4; ++i) mixed[i][i] = 0.25;
    const auto m = bloch_decompose(mixed);
    REQUIRE(m);
    for (int i = 0; i < 3; ++i) {
      CHECK(m->x[i] == 0.0);
      CHECK(m->y[i] == 0.0);
      for (int j = 0; j < 3; ++j) CHECK(m->t[i][j] == 0.0);
    }
    const auto prod = bloch_decompose(pure_state({1.0, 0.0, 0.0, 0.0}));
    REQUIRE(prod);
    CHECK(prod->x == std::array<double, 3>{0.0, 0.0, 1.0});
    CHECK(prod->y == std::array<double, 3>{0.0, 0.0, 1.0});
    const double h = std::sqrt(0.5);
    const auto bell = bloch_decompose(pure_state({h, 0.0, 0.0, h}));
    REQUIRE(bell);
    CHECK(bell->t[0][0] == doctest::Approx(1.0));
    CHECK(bell->t[1][1] == doctest::Approx(-1.0));
    CHECK(bell->t[2][2] == doctest::Approx(1.0));
    CHECK_FALSE(bloch_decompose(Mat4{}).has_value());
  }

  TEST_CASE("discord lower bound on reference states") {
    Mat4 mixed{};
    for (int i = 0; i < 4; ++i) mixed[i][i] = 0.25;
    CHECK(gqd_lower(*bloch_decompose(mixed)) == doctest::Approx(0.0));
    CHECK(gqd_lower(*bloch_decompose(pure_state({1.0, 0.0, 0.0, 0.0}))) == doctest::Approx(0.0));
    const double h = std::sqrt(0.5);
    CHECK(std::abs(gqd_lower(*bloch_decompose(pure_state({h, 0.0, 0.0, h}))) - 0.5) <= 1e-12);
    CHECK(std::abs(gqd_lower(*bloch_decompose(pure_state({0.0, h, cplx(0.0, h), 0.0}))) - 0.5) <= 1e-12);
  }

  TEST_CASE("trigonometric eigenvalue matches the characteristic polynomial") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      std::array<std::array<double, 3>, 3> m{};
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = u(rng);
      const double l = symmetric3_max_eigenvalue(m);
      const double a = m[0][0] - l, b = m[1][1] - l, c = m[2][2] - l;
      const double det = a * (b * c - m[1][2] * m[1][2]) - m[0][1] * (m[0][1] * c - m[1][2] * m[0][2]) +
                         m[0][2] * (m[0][1] * m[1][2] - b * m[0][2]);
      CHECK(std::abs(det) <= 1e-10);
      // Largest: no eigenvalue exceeds the Gershgorin-free check via power of (m - l I) being negative semidefinite.
      for (int i = 0; i < 3; ++i) CHECK(m[i][i] <= l + 1e-12);
    }
  }

  TEST_CASE("discord lower bound is invariant under local rotations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int k = 0; k < 50; ++k) {
      BlochDecomposition b;
      for (int i = 0; i < 3; ++i) {
        b.x[i] = u(rng);
        b.y[i] = u(rng);
        for (int j = 0; j < 3; ++j) b.t[i][j] = u(rng);
      }
      const auto ra = rotation(rng), rb = rotation(rng);
      BlochDecomposition r;
      for (int i = 0; i < 3; ++i) {
        for (int l = 0; l < 3; ++l) {
          r.x[i] += ra[i][l] * b.x[l];
          r.y[i] += rb[i][l] * b.y[l];
        }
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m) r.t[i][j] += ra[i][l] * b.t[l][m] * rb[j][m];
      }
      CHECK(std::abs(gqd_lower_raw(r) - gqd_lower_raw(b)) <= 1e-12);
      CHECK(gqd_lower(b) >= 0.0);
    }
  }

  TEST_CASE("total discord") {
    CHECK(gqd_total(evolve(0.0, 0.0)) == 0.0);
    const GqdBreakdown unitary = gqd_breakdown(evolve(1.5, 0.0));
    CHECK(std::abs(unitary.total) <= 1e-8);
    CHECK(std::abs(unitary.total_weighted) <= 1e-8);
    const GqdBreakdown g = gqd_breakdown(evolve(1.0, 1.0));
    CHECK(g.total > 1e-6);
    CHECK(g.total_weighted > 1e-6);
    for (double v : g.per_block) CHECK(v >= 0.0);
    CHECK(g.per_block.size() == g.block_trace.size());
  }

  TEST_CASE("element sources beyond the dense matrix") {
    struct Product {
      int radius() const { return 3; }
      cplx element(int a, int b, int c, int d) const {
        return (a == 1 && b == 1 && c == 1 && d == 1) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      }
    };
    static_assert(ElementSource<Product>);
    const GqdBreakdown g = gqd_breakdown(Product{});
    CHECK(g.per_block[0] == doctest::Approx(0.0));
    CHECK(g.block_trace[0] == 1.0);
  }
}
