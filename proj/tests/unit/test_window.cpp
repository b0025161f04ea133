#include <doctest.h>

#include <cmath>

#include "dqw/bessel.hpp"
#include "dqw/window.hpp"

using namespace dqw;

TEST_SUITE("window") {
  TEST_CASE("zero time gives the minimal window and no series") {
    const Window w = select_window(SimParams{}, 1e-8);
    CHECK(w.radius >= 8);
    CHECK(w.cutoff_i == 0);
    CHECK(w.cutoff_j == w.radius);
  }

  TEST_CASE("ballistic tail outside the window is below tol") {
    const SimParams p = SimParams::from_dimensionless(5.0, 0.0);
    const double tol = 1e-10;
    const Window w = select_window(p, tol);
    double tail = 0.0;
    for (int s = w.radius + 1; s < 200; ++s) tail += 2.0 * std::pow(std::cyl_bessel_j(s, 5.0), 2);
    CHECK(tail < tol);
    // One site less would not be certified.
    CHECK(out_of_window_mass(5.0, 0.0, w.radius - 1) > 0.5 * tol);
  }

  TEST_CASE("diffusive tail outside the window is below tol") {
    const SimParams p = SimParams::from_dimensionless(0.0, 5.0);
    const double tol = 1e-10;
    const Window w = select_window(p, tol);
    double tail = 0.0;
    for (int s = w.radius + 1; s < 200; ++s) tail += 2.0 * std::exp(-5.0) * std::cyl_bessel_i(s, 5.0);
    CHECK(tail < tol);
  }

  TEST_CASE("series cutoff rule") {
    for (double td : {0.5, 2.0, 5.0}) {
      const double tol = 1e-10;
      const int n = series_cutoff(td, tol);
      const double w = 2.0 * n + 1.0, wp = 2.0 * n - 1.0;
      CHECK(bessel_i_scaled(n, td) < tol / (w * w * w));
      CHECK(bessel_i_scaled(n - 1, td) >= tol / (wp * wp * wp));
    }
    CHECK(series_cutoff(0.0, 1e-10) == 0);
  }

  TEST_CASE("window invariants and certificate") {
    for (auto [to, td] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{0.3, 3.0}}) {
      const Window w = select_window(SimParams::from_dimensionless(to, td), 1e-10);
      CHECK(w.cutoff_j == w.radius + 3 * w.cutoff_i);
      CHECK(w.tail_bound <= 1e-10);
      CHECK(w.tail_bound > 0.0);
    }
  }

  TEST_CASE("profile sums to one") {
    const auto prof = one_particle_profile(1.5, 0.7, 60);
    double sum = 0.0;
    for (double v : prof) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("oversized requests raise ResourceError") {
    CHECK_THROWS_AS(select_window(SimParams::from_dimensionless(100.0, 0.0), 1e-10), ResourceError);
    CHECK_THROWS_AS(select_window(SimParams::from_dimensionless(1.0, 1.0), 1e-10, {8, 9, 60}), ResourceError);
  }

  TEST_CASE("invalid inputs are rejected") {
    SimParams bad;
    bad.diss = -1.0;
    CHECK_THROWS_AS(select_window(bad, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(select_window(SimParams{}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Window::fixed(-1, 0), std::invalid_argument);
  }
}
