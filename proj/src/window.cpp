#include "dqw/window.hpp"

#include <cmath>
#include <string>

#include "dqw/bessel.hpp"

namespace dqw {

std::vector<double> one_particle_profile(double t_omega, double t_d, int extent) {
  if (extent < 0) throw std::invalid_argument("one_particle_profile: negative extent");
  const int ni = t_d > 0.0 ? bessel_i_extent(t_d) : 0;
  const int nj = extent + ni + 1;
  const BesselJTable<double> j(std::max(nj, bessel_j_extent(t_omega)), t_omega);
  const BesselIScaledTable<double> ii(ni, t_d);
  std::vector<double> out(static_cast<std::size_t>(2 * extent + 1), 0.0);
  for (int s = -extent; s <= extent; ++s) {
    double acc = 0.0;
    for (int n = -ni; n <= ni; ++n) {
      const double jv = j(s + n);
      acc += jv * jv * ii(n);
    }
    out[static_cast<std::size_t>(s + extent)] = acc;
  }
  return out;
}

int series_cutoff(double t_d, double tol, int max_cutoff) {
  if (!(tol > 0.0)) throw std::invalid_argument("series_cutoff: tol must be > 0");
  if (t_d == 0.0) return 0;
  const BesselIScaledTable<double> ii(max_cutoff + 1, t_d);
  for (int n = 1; n <= max_cutoff; ++n) {
    const double w = 2.0 * n + 1.0;
    if (ii(n) < tol / (w * w * w)) return n;
  }
  throw ResourceError("series cutoff exceeds " + std::to_string(max_cutoff) + " at t_d = " +
                      std::to_string(t_d));
}

namespace {

// Mass of the one-particle distribution with s > radius (one side).
std::vector<double> upper_tails(double t_omega, double t_d, int max_radius) {
  const int extent = max_radius + bessel_j_extent(t_omega) + (t_d > 0.0 ? bessel_i_extent(t_d) : 0);
  const std::vector<double> prof = one_particle_profile(t_omega, t_d, extent);
  std::vector<double> tail(static_cast<std::size_t>(max_radius) + 1, 0.0);
  double acc = 0.0;
  for (int s = extent; s > 0; --s) {
    if (s <= max_radius + 1 && s >= 1) tail[static_cast<std::size_t>(s - 1)] = acc + prof[static_cast<std::size_t>(s + extent)];
    acc += prof[static_cast<std::size_t>(s + extent)];
  }
  return tail;
}

}  // namespace

double out_of_window_mass(double t_omega, double t_d, int radius) {
  if (radius < 0) throw std::invalid_argument("out_of_window_mass: negative radius");
  const std::vector<double> tail = upper_tails(t_omega, t_d, radius);
  // Reflection symmetry doubles the one-sided tail; two walkers double it again.
  return 4.0 * tail[static_cast<std::size_t>(radius)];
}

Window select_window(const SimParams& p, double tol, const WindowLimits& limits) {
  p.validate();
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("select_window: tol must be > 0");
  const double t_omega = p.t_omega();
  const double t_d = p.t_d();
  Window w;
  w.tol = tol;
  w.cutoff_i = series_cutoff(t_d, tol, limits.max_cutoff_i);
  const double series_rem = t_d > 0.0 ? 4.0 * bessel_i_scaled(w.cutoff_i + 1, t_d) : 0.0;

  const std::vector<double> tail = upper_tails(t_omega, t_d, limits.max_radius);
  int radius = -1;
  for (int r = limits.min_radius; r <= limits.max_radius; ++r) {
    if (4.0 * tail[static_cast<std::size_t>(r)] <= 0.5 * tol) {
      radius = r;
      break;
    }
  }
  if (radius < 0)
    throw ResourceError("window radius exceeds " + std::to_string(limits.max_radius) +
                        " for t_omega = " + std::to_string(t_omega) + ", t_d = " + std::to_string(t_d));
  w.radius = radius;
  w.cutoff_j = radius + 3 * w.cutoff_i;
  w.tail_bound = 4.0 * tail[static_cast<std::size_t>(radius)] + series_rem;
  return w;
}

}  // namespace dqw
