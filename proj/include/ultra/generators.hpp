#pragma once

// Constructions of finite ultrametric spaces: random merge trees, finite
// pieces of the universal spaces (R+, d+) and (R+2_0, d2+), the truncated
// totally-bounded non-compact family, and the 3-point triangles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ultra/error.hpp"
#include "ultra/function_spec.hpp"
#include "ultra/metric.hpp"
#include "ultra/rng.hpp"

namespace ultra {

/// A point (s, t) of R+ x R+ with min{s, t} = 0.
struct UniversalPoint {
  double s = 0.0;
  double t = 0.0;
  auto operator<=>(const UniversalPoint&) const = default;
};

/// d2+: 0 for equal points, max{s1, t1, s2, t2} otherwise.
inline double dplus2(const UniversalPoint& a, const UniversalPoint& b) {
  if (a == b) return 0.0;
  return std::max({a.s, a.t, b.s, b.t});
}

/// d+: 0 for p = q, max{p, q} otherwise.
inline double dplus(double p, double q) { return p == q ? 0.0 : std::max(p, q); }

struct LevelSequence {
  std::vector<double> values;  // strictly decreasing, positive
  bool limit_zero = true;
};

struct LevelDistribution {
  double log2_lo = -20.0;
  double log2_hi = 20.0;
  /// Levels are snapped to this many mantissa bits (dyadic rationals).
  int mantissa_bits = 12;
};

inline std::string point_label(const UniversalPoint& p) {
  return "(" + format_number(p.s) + "," + format_number(p.t) + ")";
}

/// Random binary merge tree over n leaves; d(x, y) is the level at which x
/// and y first share a cluster. Merge levels strictly increase towards the
/// root, so the result is ultrametric with at most n-1 distinct distances.
inline FiniteSemimetricSpace random_ultrametric(std::size_t n, std::uint64_t seed, const LevelDistribution& dist = {}) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "n must be >= 1");
  Rng rng(seed);
  std::set<double> levels;
  while (levels.size() + 1 < n) {
    const double raw = rng.log_uniform(dist.log2_lo, dist.log2_hi);
    int e = 0;
    const double frac = std::frexp(raw, &e);
    const double snapped = std::ldexp(std::round(std::ldexp(frac, dist.mantissa_bits)), e - dist.mantissa_bits);
    if (snapped > 0.0) levels.insert(snapped);
  }

  DistanceMatrix m{default_labels(n), std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
  for (double level : levels) {  // ascending: leaves merge first
    const auto a = static_cast<std::size_t>(rng.below(clusters.size()));
    auto b = static_cast<std::size_t>(rng.below(clusters.size() - 1));
    if (b >= a) ++b;
    for (std::size_t x : clusters[a])
      for (std::size_t y : clusters[b]) m.dist[x][y] = m.dist[y][x] = level;
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return validate_space(std::move(m));
}

inline FiniteSemimetricSpace dplus_space(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw Error(ErrorCode::NotInDomain, "value " + format_number(values[i]) + " is not a nonnegative real");
    for (std::size_t j = 0; j < i; ++j)
      if (values[i] == values[j]) throw Error(ErrorCode::DuplicateValue, "value " + format_number(values[i]) + " repeats");
  }
  const std::size_t n = values.size();
  DistanceMatrix m{{}, std::vector<std::vector<double>>(n, std::vector<double>(n))};
  for (double v : values) m.labels.push_back(format_number(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.dist[i][j] = dplus(values[i], values[j]);
  return validate_space(std::move(m));
}

inline FiniteSemimetricSpace dplus2_space(const std::vector<UniversalPoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.s >= 0.0 && p.t >= 0.0) || !std::isfinite(p.s) || !std::isfinite(p.t) || std::min(p.s, p.t) != 0.0)
      throw Error(ErrorCode::NotInDomain, point_label(p) + " needs min{s,t} = 0 with s, t >= 0");
    for (std::size_t j = 0; j < i; ++j)
      if (points[j] == p) throw Error(ErrorCode::DuplicatePoint, point_label(p) + " repeats");
  }
  const std::size_t n = points.size();
  DistanceMatrix m{{}, std::vector<std::vector<double>>(n, std::vector<double>(n))};
  for (const auto& p : points) m.labels.push_back(point_label(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.dist[i][j] = dplus2(points[i], points[j]);
  return validate_space(std::move(m));
}

/// r_n = ratio^n for n = 1..count.
inline LevelSequence geometric_levels(std::size_t count, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorCode::InvalidParameters, "ratio must lie in (0, 1)");
  LevelSequence seq;
  double r = 1.0;
  for (std::size_t n = 1; n <= count; ++n) {
    r *= ratio;
    if (!(r > 0.0) || (!seq.values.empty() && r >= seq.values.back()))
      throw Error(ErrorCode::InvalidParameters, "levels underflow before n = " + std::to_string(n));
    seq.values.push_back(r);
  }
  return seq;
}

struct TruncatedFamily {
  FiniteSemimetricSpace space;
  LevelSequence levels;
  std::vector<UniversalPoint> points;
};

/// Points (0, r_n), n = 1..N, of the family max{s, t} = r_n under d2+. With
/// `mirror`, the points (r_n, 0) are appended as well.
inline TruncatedFamily tbu_noncompact_truncation(std::size_t n, double ratio, bool mirror = false) {
  if (n < 2) throw Error(ErrorCode::InvalidParameters, "N must be >= 2");
  LevelSequence levels = geometric_levels(n, ratio);
  std::vector<UniversalPoint> pts;
  for (double r : levels.values) pts.push_back({0.0, r});
  if (mirror)
    for (double r : levels.values) pts.push_back({r, 0.0});
  auto space = dplus2_space(pts);
  return {std::move(space), std::move(levels), std::move(pts)};
}

inline FiniteSemimetricSpace triangle_equilateral(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidParameters, "side must be positive");
  return triangle_from_sides(c, c, c);
}

/// d(x1,x2) = d(x2,x3) = c2 and d(x1,x3) = c1 with 0 < c1 <= c2.
inline FiniteSemimetricSpace triangle_isosceles(double c1, double c2) {
  if (!(c1 > 0.0) || !std::isfinite(c2) || !(c1 <= c2))
    throw Error(ErrorCode::InvalidParameters, "need 0 < c1 <= c2, got c1 = " + format_number(c1) +
                                                  ", c2 = " + format_number(c2));
  return triangle_from_sides(c2, c2, c1);
}

}  // namespace ultra
