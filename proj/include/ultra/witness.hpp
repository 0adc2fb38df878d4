#pragma once

// Concrete finite spaces certifying that a function is not ultrametric
// preserving (3-point triangles) or not topology preserving (covering-number
// blow-up on a truncated totally bounded family), and isometric embeddings
// of 3-point ultrametric spaces into the universal space (R+2_0, d2+).

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ultra/classifier.hpp"
#include "ultra/generators.hpp"
#include "ultra/metric.hpp"
#include "ultra/properties.hpp"
#include "ultra/transform.hpp"

namespace ultra {

enum class WitnessKind { NotPU_Equilateral, NotPU_Isosceles, NotPT_CoveringDivergence };

inline std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::NotPU_Equilateral: return "NotPU_Equilateral";
    case WitnessKind::NotPU_Isosceles: return "NotPU_Isosceles";
    case WitnessKind::NotPT_CoveringDivergence: return "NotPT_CoveringDivergence";
  }
  return "?";
}

/// The semimetric axiom an image matrix breaks (diagonal or positivity).
struct MatrixViolation {
  ErrorCode code = ErrorCode::NonpositiveOffDiagonal;
  MatrixPos pos;
  double value = 0.0;
  bool operator==(const MatrixViolation&) const = default;
};

struct CoveringRow {
  std::size_t points = 0;
  double eps_before = 0.0;
  std::size_t covering_before = 0;
  double eps_after = 0.0;
  std::size_t covering_after = 0;
  bool operator==(const CoveringRow&) const = default;
};

struct WitnessCertificate {
  WitnessKind kind;
  FiniteSemimetricSpace space_before;
  DistanceMatrix space_after;
  std::optional<MatrixViolation> matrix_violation;
  std::optional<TripleViolation> triple_violation;
  std::vector<CoveringRow> covering_table;
  std::vector<std::pair<std::string, double>> parameters;
  std::size_t budget_used = 0;

  double parameter(const std::string& name) const {
    for (const auto& [k, v] : parameters)
      if (k == name) return v;
    throw Error(ErrorCode::InvalidArgument, "no parameter " + name);
  }
};

struct NoWitnessFound {
  std::size_t budget_used = 0;
  std::string reason;
};

using WitnessResult = std::variant<WitnessCertificate, NoWitnessFound>;

namespace detail {

inline std::optional<MatrixViolation> first_matrix_violation(const DistanceMatrix& m) {
  try {
    (void)validate_space(m);
  } catch (const Error& e) {
    if (!e.position()) throw;
    const auto p = *e.position();
    return MatrixViolation{e.code(), p, m.dist[p.row][p.col]};
  }
  return std::nullopt;
}

inline std::vector<std::size_t> prefix(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

/// Table sizes: 4, 8, 16, ... below n, then n itself.
inline std::vector<std::size_t> table_sizes(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 4; k < n; k *= 2) out.push_back(k);
  out.push_back(n);
  return out;
}

inline std::vector<CoveringRow> covering_rows(const FiniteSemimetricSpace& before, const FiniteSemimetricSpace& after,
                                              double eps_before, double eps_after) {
  std::vector<CoveringRow> rows;
  for (std::size_t n : table_sizes(before.size())) {
    const auto idx = prefix(n);
    rows.push_back({n, eps_before, covering_number(restrict_to(before, idx), eps_before), eps_after,
                    covering_number(restrict_to(after, idx), eps_after)});
  }
  return rows;
}

}  // namespace detail

/// Searches the witness grid for (i) c > 0 with f(c) <= 0, giving an
/// equilateral triangle of side c whose image has zero sides, or (ii)
/// c1 < c2 with 0 < f(c2) < f(c1), giving the isosceles triangle with sides
/// (c2, c2, c1) whose image breaks the strong triangle inequality. A spec
/// with f(0) != 0 is certified by the equilateral triangle of side 1.
inline WitnessResult witness_not_pu(const FunctionSpec& f, std::size_t budget = 10000) {
  const auto grid = probes::witness_grid(f);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f.raw(grid[i]);

  auto equilateral = [&](double c, std::size_t used) {
    auto before = triangle_equilateral(c);
    auto after = apply_raw(before, f);
    auto violation = detail::first_matrix_violation(after);
    return WitnessCertificate{WitnessKind::NotPU_Equilateral, std::move(before), std::move(after), violation,
                              std::nullopt, {}, {{"c", c}}, used};
  };

  if (f.raw(0.0) != 0.0) return equilateral(1.0, 1);

  std::vector<double> order = grid;
  probes::sort_unit_scale(order);
  std::size_t used = 0;
  for (double c : order) {
    ++used;
    const double fc = f.raw(c);
    if (fc <= 0.0) return equilateral(c, used);
  }

  std::size_t examined = 0;
  const auto inv = probes::find_pair(grid, values, budget, examined,
                                     [](double v1, double v2) { return 0.0 < v2 && v2 < v1; });
  if (!inv) return NoWitnessFound{used + examined, "no zero and no inversion on the witness grid"};

  auto before = triangle_isosceles(inv->lo_t, inv->hi_t);
  auto after_raw = apply_raw(before, f);
  auto after = validate_space(after_raw);
  const auto check = is_ultrametric(after);
  if (check.holds) throw std::logic_error("isosceles witness image is ultrametric");
  return WitnessCertificate{WitnessKind::NotPU_Isosceles, std::move(before), std::move(after_raw), std::nullopt,
                            check.violation, {}, {{"c1", inv->lo_t}, {"c2", inv->hi_t}}, used + examined};
}

inline constexpr double kCoveringEpsBefore = 0.25;
inline constexpr double kTruncationRatio = 0.5;

/// For f ∈ P_U with f >= a > 0 on (0, inf): the truncation X_N = {(0, 2^-n)}
/// keeps a bounded covering number at eps = 1/4, while every pair of its
/// image is at least a apart, so the image needs N balls of radius a/2.
inline WitnessResult witness_not_pt(const FunctionSpec& f, std::size_t n, const CheckOptions& opt = {}) {
  if (n < 4) throw Error(ErrorCode::InvalidParameters, "N must be >= 4");
  const auto pu = classify_pu(f, opt);
  if (!pu.holds()) throw Error(ErrorCode::PreconditionFailed, "f is not ultrametric preserving");
  const auto inf = inf_on_positive(f, opt);
  if (!inf.exact || !(inf.estimate > 0.0))
    return NoWitnessFound{pu.budget_used, inf.exact ? "infimum over (0, inf) is 0" : "infimum not established exactly"};

  const double a = inf.estimate;
  auto family = tbu_noncompact_truncation(n, kTruncationRatio);
  auto after = apply_function(family.space, f);
  auto rows = detail::covering_rows(family.space, after, kCoveringEpsBefore, a / 2);
  return WitnessCertificate{WitnessKind::NotPT_CoveringDivergence,
                            family.space,
                            after.to_matrix(),
                            std::nullopt,
                            std::nullopt,
                            std::move(rows),
                            {{"a", a},
                             {"N", static_cast<double>(n)},
                             {"ratio", kTruncationRatio},
                             {"eps_before", kCoveringEpsBefore},
                             {"eps_after", a / 2}},
                            pu.budget_used};
}

/// Re-runs the metric-core predicates on the certificate's spaces.
inline bool certificate_reverifies(const WitnessCertificate& c) {
  switch (c.kind) {
    case WitnessKind::NotPU_Equilateral:
      return c.matrix_violation && detail::first_matrix_violation(c.space_after) == c.matrix_violation;
    case WitnessKind::NotPU_Isosceles: {
      if (!c.triple_violation) return false;
      const auto after = validate_space(c.space_after);
      const auto check = is_ultrametric(after);
      return !check.holds && check.violation == c.triple_violation && reproduces(after, *c.triple_violation);
    }
    case WitnessKind::NotPT_CoveringDivergence: {
      if (c.covering_table.empty()) return false;
      const auto after = validate_space(c.space_after);
      const auto rows = detail::covering_rows(c.space_before, after, c.covering_table.front().eps_before,
                                              c.covering_table.front().eps_after);
      if (rows != c.covering_table) return false;
      const auto& last = rows.back();
      return last.covering_after == last.points && last.covering_before < last.covering_after;
    }
  }
  return false;
}

namespace detail {

inline void require_three_point_ultrametric(const FiniteSemimetricSpace& s) {
  if (s.size() != 3) throw Error(ErrorCode::WrongSize, "need exactly 3 points, got " + std::to_string(s.size()));
  if (const auto u = is_ultrametric(s); !u.holds) {
    const auto& v = *u.violation;
    throw Error(ErrorCode::NotUltrametric,
                "d(" + std::to_string(v.i) + "," + std::to_string(v.j) + ") = " + format_number(v.lhs) + " > " +
                    format_number(v.rhs));
  }
}

/// Indices (i, j) of the unique shortest side and the opposite apex k.
inline std::array<std::size_t, 3> short_side(const FiniteSemimetricSpace& s) {
  if (s(0, 1) < s(0, 2)) return {0, 1, 2};
  if (s(0, 2) < s(0, 1)) return {0, 2, 1};
  return {1, 2, 0};
}

/// Point i of the result must sit at distance s(i,j) from point j.
inline void verify_embedding(const FiniteSemimetricSpace& s, const std::array<UniversalPoint, 3>& pts) {
  const auto image = dplus2_space({pts.begin(), pts.end()});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (image(i, j) != s(i, j)) throw std::logic_error("embedding does not preserve distances");
  if (!are_isometric_small(s, image)) throw std::logic_error("isometry search rejects embedding");
}

}  // namespace detail

/// Embeds a 3-point ultrametric space into (R+2_0, d2+). Two distances
/// d1 > d2 use {(0,0), (0,d2), (0,d1)}; an equilateral triangle of side d0
/// uses {(0,0), (0,d0), (d0,0)}. result[i] is the image of point i.
inline std::array<UniversalPoint, 3> embed_three_point_universal(const FiniteSemimetricSpace& s) {
  detail::require_three_point_ultrametric(s);
  const auto spectrum = distance_spectrum(s);
  std::array<UniversalPoint, 3> pts;
  if (spectrum.size() == 1) {
    const double d0 = spectrum[0];
    pts = {UniversalPoint{0, 0}, UniversalPoint{0, d0}, UniversalPoint{d0, 0}};
  } else {
    const auto [i, j, k] = detail::short_side(s);
    pts[i] = {0, 0};
    pts[j] = {0, spectrum[0]};
    pts[k] = {0, spectrum[1]};
  }
  detail::verify_embedding(s, pts);
  return pts;
}

struct TbuEmbedding {
  std::array<UniversalPoint, 3> points;
  LevelSequence levels;
};

/// Embeds a 3-point ultrametric space into the family max{s,t} = r_n with
/// r_n = M·ratio^(n-1), M the largest distance. Two distances r_1 > r_m use
/// {(0,r_1), (0,r_m), (0,r_{m+1})}; one distance uses {(0,r_1), (r_1,0), (0,r_2)}.
/// The smaller distance must be exactly one of the generated levels.
inline TbuEmbedding embed_three_point_tbu(const FiniteSemimetricSpace& s, double ratio = kTruncationRatio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorCode::InvalidParameters, "ratio must lie in (0, 1)");
  detail::require_three_point_ultrametric(s);
  const auto spectrum = distance_spectrum(s);
  TbuEmbedding out;
  auto& levels = out.levels.values;
  levels.push_back(spectrum.back());
  auto push_next = [&] {
    const double next = levels.back() * ratio;
    if (!(next > 0.0) || next >= levels.back())
      throw Error(ErrorCode::SpectrumNotEmbeddable, "level sequence underflows");
    levels.push_back(next);
  };

  if (spectrum.size() == 1) {
    push_next();
    out.points = {UniversalPoint{0, levels[0]}, UniversalPoint{levels[0], 0}, UniversalPoint{0, levels[1]}};
  } else {
    const double small = spectrum[0];
    while (levels.back() > small) push_next();
    if (levels.back() != small)
      throw Error(ErrorCode::SpectrumNotEmbeddable,
                  format_number(small) + " is not " + format_number(spectrum.back()) + " times a power of " +
                      format_number(ratio));
    push_next();
    const std::size_t m = levels.size() - 2;
    const auto [i, j, k] = detail::short_side(s);
    out.points[i] = {0, levels[m]};
    out.points[j] = {0, levels[m + 1]};
    out.points[k] = {0, levels[0]};
  }
  detail::verify_embedding(s, out.points);
  return out;
}

}  // namespace ultra
