#pragma once

#include <array>
#include <concepts>
#include <optional>
#include <vector>

#include "dqw/types.hpp"

namespace dqw {

/// Anything that yields two-walker elements by site and reports its window radius.
template <class T>
concept ElementSource = requires(const T& r, int s) {
  { r.element(s, s, s, s) } -> std::convertible_to<cplx>;
  { r.radius() } -> std::convertible_to<int>;
};

/// Three-label partition of each walker's sites: A = {s}, B = {-s}, rest.
/// Basis order is (AA, AB, Arest, BA, BB, Brest, restA, restB, restrest).
struct MirrorBlock {
  int s = 0;
  std::array<std::array<cplx, 9>, 9> rho9{};
  /// Restriction to (AA, AB, BA, BB).
  std::array<std::array<cplx, 4>, 4> rho4{};
  double block_trace = 0.0;
};

struct BlochDecomposition {
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  std::array<std::array<double, 3>, 3> t{};
};

template <ElementSource Rho>
MirrorBlock reduce_bipartition(const Rho& rho, int s) {
  const int R = rho.radius();
  if (s < 1 || s > R) throw std::out_of_range("mirror label must satisfy 1 <= s <= radius");
  // Labels 0 -> s, 1 -> -s, 2 -> any other site (traced out).
  auto site = [s](int label) { return label == 0 ? s : -s; };
  MirrorBlock b;
  b.s = s;
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a2 = 0; a2 < 3; ++a2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = 0; c2 < 3; ++c2) {
          if ((a1 == 2) != (c1 == 2) || (a2 == 2) != (c2 == 2)) continue;
          cplx acc = 0.0;
          if (a1 != 2 && a2 != 2) {
            acc = rho.element(site(a1), site(a2), site(c1), site(c2));
          } else if (a1 == 2 && a2 != 2) {
            for (int r = -R; r <= R; ++r)
              if (r != s && r != -s) acc += rho.element(r, site(a2), r, site(c2));
          } else if (a1 != 2 && a2 == 2) {
            for (int r = -R; r <= R; ++r)
              if (r != s && r != -s) acc += rho.element(site(a1), r, site(c1), r);
          } else {
            for (int r1 = -R; r1 <= R; ++r1) {
              if (r1 == s || r1 == -s) continue;
              for (int r2 = -R; r2 <= R; ++r2)
                if (r2 != s && r2 != -s) acc += rho.element(r1, r2, r1, r2);
            }
          }
          b.rho9[3 * a1 + a2][3 * c1 + c2] = acc;
        }
  constexpr std::array<int, 4> sub{0, 1, 3, 4};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b.rho4[i][j] = b.rho9[sub[i]][sub[j]];
  b.block_trace = (b.rho4[0][0] + b.rho4[1][1] + b.rho4[2][2] + b.rho4[3][3]).real();
  return b;
}

/// Pauli decomposition with A as the +1 eigenstate of sigma_z.
/// With normalize, rho4 is divided by its trace; returns nullopt when that
/// trace is below floor.
std::optional<BlochDecomposition> bloch_decompose(const std::array<std::array<cplx, 4>, 4>& rho4,
                                                  bool normalize = true, double floor = 1e-10);

/// Largest eigenvalue of a real symmetric 3x3 matrix (closed trigonometric form).
double symmetric3_max_eigenvalue(const std::array<std::array<double, 3>, 3>& m);

/// (|x|^2 + ||T||^2 - lambda_max(x x^T + T T^T)) / 4 before clamping.
double gqd_lower_raw(const BlochDecomposition& b);
/// Geometric discord lower bound, clamped at zero.
double gqd_lower(const BlochDecomposition& b);

struct GqdBreakdown {
  /// Sum of per-block discord with each block renormalized to unit trace.
  double total = 0.0;
  /// Sum of block_trace times per-block discord.
  double total_weighted = 0.0;
  std::vector<double> per_block;
  std::vector<double> block_trace;
};

template <ElementSource Rho>
GqdBreakdown gqd_breakdown(const Rho& rho, double floor = 1e-10) {
  GqdBreakdown out;
  for (int s = 1; s <= rho.radius(); ++s) {
    const MirrorBlock b = reduce_bipartition(rho, s);
    double d = 0.0;
    if (const auto bloch = bloch_decompose(b.rho4, true, floor)) d = gqd_lower(*bloch);
    out.per_block.push_back(d);
    out.block_trace.push_back(b.block_trace);
    out.total += d;
    out.total_weighted += b.block_trace * d;
  }
  return out;
}

/// Renormalized total over all mirror blocks s = 1..radius.
template <ElementSource Rho>
double gqd_total(const Rho& rho, double floor = 1e-10) {
  return gqd_breakdown(rho, floor).total;
}

}  // namespace dqw
