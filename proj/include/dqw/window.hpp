#pragma once

#include "dqw/types.hpp"

#include <vector>

namespace dqw {

struct WindowLimits {
  int min_radius = 8;
  int max_radius = 40;
  /// Upper bound on the series cutoff; larger requests raise ResourceError.
  int max_cutoff_i = 60;
};

/// One-particle site distribution sum_n J_{s+n}(t_omega)^2 e^{-t_d} I_n(t_d)
/// for s in [-extent, extent], evaluated without truncating the series.
std::vector<double> one_particle_profile(double t_omega, double t_d, int extent);

/// Smallest N with e^{-t_d} I_N(t_d) < tol / (2N + 1)^3; zero when t_d == 0.
int series_cutoff(double t_d, double tol, int max_cutoff = 60);

/// Probability that either walker lies outside |s| <= radius, bounded by
/// twice the one-particle tail mass.
double out_of_window_mass(double t_omega, double t_d, int radius);

/// Smallest radius (>= limits.min_radius) whose out-of-window mass plus
/// series remainder is below tol/2 each. Raises ResourceError past the limits.
Window select_window(const SimParams& p, double tol, const WindowLimits& limits = {});

}  // namespace dqw
