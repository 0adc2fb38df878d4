#pragma once

// Finite semimetric spaces stored as dense distance matrices, with the
// metric / ultrametric predicates, spectra and covering numbers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultra/error.hpp"

namespace ultra {

/// Unvalidated square matrix with labels. Used for raw input and for images
/// f∘d that may fail to be semimetrics (a witness of non-preservation).
struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dist;

  std::size_t size() const noexcept { return dist.size(); }
  bool operator==(const DistanceMatrix&) const = default;
};

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return labels;
}

class FiniteSemimetricSpace;
FiniteSemimetricSpace validate_space(DistanceMatrix raw);

/// Symmetric, zero-diagonal, strictly positive off the diagonal. Only
/// constructible through validate_space, so every instance is valid.
class FiniteSemimetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * size() + j]; }

  DistanceMatrix to_matrix() const {
    DistanceMatrix m{labels_, std::vector<std::vector<double>>(size(), std::vector<double>(size()))};
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m.dist[i][j] = (*this)(i, j);
    return m;
  }

  bool operator==(const FiniteSemimetricSpace&) const = default;

 private:
  friend FiniteSemimetricSpace validate_space(DistanceMatrix raw);
  FiniteSemimetricSpace(std::vector<std::string> labels, std::vector<double> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  std::vector<double> dist_;  // row-major n*n
};

/// Scans entries row-major and throws on the first violated invariant.
inline FiniteSemimetricSpace validate_space(DistanceMatrix raw) {
  const std::size_t n = raw.dist.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (raw.dist[i].size() != n)
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(raw.dist[i].size()) + " entries, expected " +
                                            std::to_string(n));
  }
  if (raw.labels.empty()) raw.labels = default_labels(n);
  if (raw.labels.size() != n)
    throw Error(ErrorCode::LabelMismatch,
                std::to_string(raw.labels.size()) + " labels for " + std::to_string(n) + " points");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = raw.dist[i][j];
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteEntry, "entry is not finite", {i, j});
      if (i == j) {
        if (v != 0.0) throw Error(ErrorCode::NonzeroDiagonal, "diagonal entry must be 0", {i, j});
        continue;
      }
      const double w = raw.dist[j][i];
      if (!std::isfinite(w)) throw Error(ErrorCode::NonFiniteEntry, "entry is not finite", {j, i});
      if (v != w) throw Error(ErrorCode::AsymmetricEntry, "d(i,j) != d(j,i)", {i, j});
      if (!(v > 0.0)) throw Error(ErrorCode::NonpositiveOffDiagonal, "distinct points at distance <= 0", {i, j});
    }
  }

  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : raw.dist) flat.insert(flat.end(), row.begin(), row.end());
  return FiniteSemimetricSpace(std::move(raw.labels), std::move(flat));
}

/// Builds the 3-point space with d(x1,x2)=p, d(x2,x3)=q, d(x1,x3)=l.
inline FiniteSemimetricSpace triangle_from_sides(double p, double q, double l) {
  return validate_space({default_labels(3), {{0, p, l}, {p, 0, q}, {l, q, 0}}});
}

enum class TripleKind { Triangle, StrongTriangle };

/// d(i,j) > bound where bound is d(i,k)+d(k,j) or max{d(i,k), d(k,j)}.
struct TripleViolation {
  std::size_t i = 0, j = 0, k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  TripleKind kind = TripleKind::StrongTriangle;
  bool operator==(const TripleViolation&) const = default;
};

struct PredicateResult {
  bool holds = true;
  std::optional<TripleViolation> violation;
  explicit operator bool() const noexcept { return holds; }
};

namespace detail {

template <typename Bound>
PredicateResult first_triple_violation(const FiniteSemimetricSpace& s, TripleKind kind, Bound bound) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double lhs = s(i, j);
        const double rhs = bound(s(i, k), s(k, j));
        if (lhs > rhs) return {false, TripleViolation{i, j, k, lhs, rhs, kind}};
      }
  return {};
}

}  // namespace detail

/// Strong triangle inequality on every triple. The reported violation is the
/// lexicographically first (i<j, k) with d(i,j) > max{d(i,k), d(k,j)}.
inline PredicateResult is_ultrametric(const FiniteSemimetricSpace& s) {
  return detail::first_triple_violation(s, TripleKind::StrongTriangle,
                                        [](double a, double b) { return std::max(a, b); });
}

inline PredicateResult is_metric(const FiniteSemimetricSpace& s) {
  return detail::first_triple_violation(s, TripleKind::Triangle, [](double a, double b) { return a + b; });
}

/// Re-checks a stored violation against a space; true iff it is reproduced exactly.
inline bool reproduces(const FiniteSemimetricSpace& s, const TripleViolation& v) {
  if (std::max({v.i, v.j, v.k}) >= s.size()) return false;
  const double a = s(v.i, v.k), b = s(v.k, v.j);
  const double rhs = v.kind == TripleKind::StrongTriangle ? std::max(a, b) : a + b;
  return s(v.i, v.j) == v.lhs && rhs == v.rhs && v.lhs > v.rhs;
}

/// Distinct off-diagonal distances, strictly increasing.
inline std::vector<double> distance_spectrum(const FiniteSemimetricSpace& s) {
  std::vector<double> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) out.push_back(s(i, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline double min_positive_distance(const FiniteSemimetricSpace& s) {
  if (s.size() < 2) throw Error(ErrorCode::TooFewPoints, "need at least 2 points");
  return distance_spectrum(s).front();
}

inline double max_distance(const FiniteSemimetricSpace& s) {
  const auto spectrum = distance_spectrum(s);
  return spectrum.empty() ? 0.0 : spectrum.back();
}

/// Greedy closed-ball net: take the lowest-index uncovered point as a centre
/// and cover everything within distance <= eps. Minimum for ultrametrics,
/// where closed balls of one radius partition the space.
inline std::size_t covering_number(const FiniteSemimetricSpace& s, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be a positive real");
  const std::size_t n = s.size();
  std::vector<bool> covered(n, false);
  std::size_t centres = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (covered[c]) continue;
    ++centres;
    for (std::size_t j = 0; j < n; ++j)
      if (!covered[j] && s(c, j) <= eps) covered[j] = true;
  }
  return centres;
}

inline constexpr std::size_t kMaxIsometrySearch = 8;

/// Exhaustive search for a distance-preserving bijection a -> b. The result
/// maps index i of `a` to index result[i] of `b`.
inline std::optional<std::vector<std::size_t>> are_isometric_small(const FiniteSemimetricSpace& a,
                                                                   const FiniteSemimetricSpace& b) {
  if (a.size() > kMaxIsometrySearch || b.size() > kMaxIsometrySearch)
    throw Error(ErrorCode::TooLarge, "isometry search is limited to 8 points");
  if (a.size() != b.size()) return std::nullopt;
  if (distance_spectrum(a) != distance_spectrum(b)) return std::nullopt;

  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = i + 1; j < a.size() && ok; ++j) ok = a(i, j) == b(perm[i], perm[j]);
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Sub-space on the given indices (in the given order).
inline FiniteSemimetricSpace restrict_to(const FiniteSemimetricSpace& s, const std::vector<std::size_t>& idx) {
  DistanceMatrix m;
  for (std::size_t i : idx) m.labels.push_back(s.labels().at(i));
  m.dist.assign(idx.size(), std::vector<double>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m.dist[a][b] = s(idx[a], idx[b]);
  return validate_space(std::move(m));
}

}  // namespace ultra
