#include "dqw/types.hpp"

#include <cmath>

namespace dqw {

SimParams SimParams::from_dimensionless(double t_omega, double t_d) {
  SimParams p;
  p.time = 1.0;
  p.omega = t_omega;
  p.diss = 0.5 * t_d;
  return p;
}

double SimParams::r_d() const {
  if (!(omega > 0.0)) throw std::invalid_argument("r_d requires omega > 0");
  return 2.0 * diss / omega;
}

void SimParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(omega)) throw std::invalid_argument("omega must be finite and >= 0");
  if (!ok(diss)) throw std::invalid_argument("diss must be finite and >= 0");
  if (!ok(time)) throw std::invalid_argument("time must be finite and >= 0");
}

Window Window::fixed(int radius, int cutoff_i, double tol) {
  Window w;
  w.radius = radius;
  w.cutoff_i = cutoff_i;
  w.cutoff_j = radius + 3 * cutoff_i;
  w.tol = tol;
  w.validate();
  return w;
}

void Window::validate() const {
  if (radius < 0 || cutoff_i < 0) throw std::invalid_argument("window sizes must be >= 0");
  if (cutoff_j != radius + 3 * cutoff_i)
    throw std::invalid_argument("window requires cutoff_j == radius + 3 * cutoff_i");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("window tol must be > 0");
}

DensityMatrix::DensityMatrix(const Window& w) : window_(w), n_(w.size()) {
  w.validate();
  const std::size_t n = static_cast<std::size_t>(n_);
  data_.assign(n * n * n * n, cplx(0.0, 0.0));
}

cplx DensityMatrix::element(int s1, int s2, int s1p, int s2p) const {
  if (!contains(s1) || !contains(s2) || !contains(s1p) || !contains(s2p)) return {0.0, 0.0};
  return (*this)(s1, s2, s1p, s2p);
}

cplx DensityMatrix::trace() const {
  cplx t = 0.0;
  const int r = radius();
  for (int s1 = -r; s1 <= r; ++s1)
    for (int s2 = -r; s2 <= r; ++s2) t += (*this)(s1, s2, s1, s2);
  return t;
}

ReducedDensity::ReducedDensity(const Window& w) : window_(w), n_(w.size()) {
  w.validate();
  data_.assign(static_cast<std::size_t>(n_) * n_, cplx(0.0, 0.0));
}

cplx ReducedDensity::element(int s, int sp) const {
  const int r = radius();
  if (s < -r || s > r || sp < -r || sp > r) return {0.0, 0.0};
  return (*this)(s, sp);
}

cplx ReducedDensity::trace() const {
  cplx t = 0.0;
  for (int s = -radius(); s <= radius(); ++s) t += (*this)(s, s);
  return t;
}

}  // namespace dqw
