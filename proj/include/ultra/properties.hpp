#pragma once

// Tri-state probes of the analytic properties of a FunctionSpec: amenable,
// nondecreasing, subadditive, continuous at 0, divergent at infinity, and the
// infimum over (0, inf).
//
// Each check first tries the structural rules in analysis.hpp (an exact
// answer, `symbolic = true`) and otherwise falls back to a deterministic probe
// set. Probe sets are scanned in "unit-scale" order: points sorted by
// |log2 t|, smaller t first on ties, so 1, 1/2, 2, 1/4, 4, ... When several
// probes violate a property the first one in that order is reported, which
// makes the reported witness independent of evaluation order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ultra/analysis.hpp"
#include "ultra/function_spec.hpp"
#include "ultra/rng.hpp"

namespace ultra {

enum class Status { Holds, FailsWithWitness, Undetermined };

enum class Property {
  Amenable,
  Increasing,
  Subadditive,
  ContinuousAtZero,
  DivergesAtInfinity,
  TripletPreservation,
  MinMaxEquation,
};

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::FailsWithWitness: return "FailsWithWitness";
    case Status::Undetermined: return "Undetermined";
  }
  return "?";
}

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::Amenable: return "amenable";
    case Property::Increasing: return "increasing";
    case Property::Subadditive: return "subadditive";
    case Property::ContinuousAtZero: return "continuous_at_zero";
    case Property::DivergesAtInfinity: return "diverges_at_infinity";
    case Property::TripletPreservation: return "triplet_preservation";
    case Property::MinMaxEquation: return "minmax_equation";
  }
  return "?";
}

/// One evaluated probe point.
struct Sample {
  double t = 0.0;
  double value = 0.0;
  bool operator==(const Sample&) const = default;
};

struct PropertyVerdict {
  Status status = Status::Undetermined;
  /// The property the witness refutes (for conjunctions: the failing conjunct).
  Property property = Property::Amenable;
  /// True when the status follows from structural rules rather than probes.
  bool symbolic = false;
  std::vector<Sample> witness;
  std::size_t budget_used = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string note;

  bool holds() const noexcept { return status == Status::Holds; }
  bool fails() const noexcept { return status == Status::FailsWithWitness; }
};

struct CheckOptions {
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  double tolerance = 0x1.0p-30;
};

/// Lower bound report for inf f over (0, inf).
struct InfBound {
  double estimate = 0.0;
  bool exact = false;
};

namespace probes {

inline bool unit_scale_less(double a, double b) {
  const double la = a == 0.0 ? kInf : std::abs(std::log2(a));
  const double lb = b == 0.0 ? kInf : std::abs(std::log2(b));
  if (la != lb) return la < lb;
  return a < b;
}

inline void sort_unit_scale(std::vector<double>& pts) { std::sort(pts.begin(), pts.end(), unit_scale_less); }

inline std::vector<double> dyadics(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

inline void collect_breakpoints(const Node& n, std::vector<double>& out) {
  if (n.kind == NodeKind::Piecewise) {
    for (const auto& p : n.pieces) {
      out.push_back(p.domain.lo);
      if (p.domain.hi != kInf) out.push_back(p.domain.hi);
      collect_breakpoints(*p.body, out);
    }
    return;
  }
  for (const auto& a : n.args) collect_breakpoints(*a, out);
}

/// Positive piece breakpoints and their neighbours b ± 2^-40.
inline std::vector<double> breakpoint_probes(const FunctionSpec& f) {
  std::vector<double> raw;
  collect_breakpoints(f.root(), raw);
  std::vector<double> out;
  for (double b : raw) {
    for (double v : {b - 0x1.0p-40, b, b + 0x1.0p-40})
      if (v > 0.0 && std::isfinite(v)) out.push_back(v);
  }
  return out;
}

inline void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Ascending positive probe grid: `budget` log-spaced points over
/// [2^-60, 2^60], every 2^k for k in [-60, 60], and the breakpoint probes.
inline std::vector<double> analytic_grid(const FunctionSpec& f, std::size_t budget) {
  std::vector<double> pts = dyadics(-60, 60);
  if (budget >= 2) {
    for (std::size_t i = 0; i < budget; ++i)
      pts.push_back(std::exp2(-60.0 + 120.0 * static_cast<double>(i) / static_cast<double>(budget - 1)));
  }
  for (double b : breakpoint_probes(f)) pts.push_back(b);
  sort_unique(pts);
  return pts;
}

/// Ascending grid for witness synthesis: breakpoint probes plus 2^k, k in [-40, 40].
inline std::vector<double> witness_grid(const FunctionSpec& f) {
  std::vector<double> pts = dyadics(-40, 40);
  for (double b : breakpoint_probes(f)) pts.push_back(b);
  sort_unique(pts);
  return pts;
}

struct Inversion {
  double lo_t, lo_value, hi_t, hi_value;
  std::size_t pairs_examined;
};

/// Searches pairs c1 < c2 of `ascending` with accept(f(c1), f(c2)). c1 runs
/// in unit-scale order and, for each c1, c2 ascends from c1, so the result is
/// the first hit in that order. Gives up after `max_pairs` pair evaluations.
template <typename Accept>
std::optional<Inversion> find_pair(const std::vector<double>& ascending, const std::vector<double>& values,
                                   std::size_t max_pairs, std::size_t& examined, Accept accept) {
  std::vector<std::size_t> order(ascending.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return unit_scale_less(ascending[a], ascending[b]); });
  for (std::size_t i : order) {
    for (std::size_t j = i + 1; j < ascending.size(); ++j) {
      if (examined >= max_pairs) return std::nullopt;
      ++examined;
      if (accept(values[i], values[j])) return Inversion{ascending[i], values[i], ascending[j], values[j], examined};
    }
  }
  return std::nullopt;
}

}  // namespace probes

namespace detail {

inline PropertyVerdict verdict(Property p, Status s, bool symbolic = false) {
  PropertyVerdict v;
  v.property = p;
  v.status = s;
  v.symbolic = symbolic;
  return v;
}

inline bool is_nan(double v) { return std::isnan(v); }

}  // namespace detail

/// f(0) = 0 and f(t) > 0 for t > 0.
inline PropertyVerdict check_amenable(const FunctionSpec& f, const CheckOptions& opt = {}) {
  using detail::verdict;
  const double f0 = f.raw(0.0);
  if (f0 != 0.0) {
    auto v = verdict(Property::Amenable, Status::FailsWithWitness, true);
    v.witness = {{0.0, f0}};
    v.note = "f(0) != 0";
    return v;
  }
  if (analysis::positive_on_open(f.root())) return verdict(Property::Amenable, Status::Holds, true);

  // polynomial pieces: test their roots and critical points directly
  std::vector<std::pair<const Node*, Interval>> bodies;
  if (f.root().kind == NodeKind::Piecewise) {
    for (const auto& p : f.root().pieces) bodies.emplace_back(p.body.get(), p.domain);
  } else {
    bodies.emplace_back(&f.root(), Interval{});
  }
  for (const auto& [body, domain] : bodies) {
    const auto poly = analysis::as_polynomial(*body);
    if (!poly) continue;
    for (double c : analysis::polynomial_zero_candidates(*poly, domain)) {
      const double fc = f.raw(c);
      if (fc <= 0.0) {
        auto v = verdict(Property::Amenable, Status::FailsWithWitness, true);
        v.witness = {{c, fc}};
        v.note = "polynomial piece reaches zero";
        return v;
      }
    }
  }

  auto grid = probes::analytic_grid(f, opt.budget);
  probes::sort_unit_scale(grid);
  PropertyVerdict v = verdict(Property::Amenable, Status::Holds);
  v.budget_used = grid.size();
  for (double t : grid) {
    const double ft = f.raw(t);
    if (detail::is_nan(ft)) {
      v.status = Status::Undetermined;
      v.note = "f is undefined at " + format_number(t);
      return v;
    }
    if (ft <= 0.0) {
      v.status = Status::FailsWithWitness;
      v.witness = {{t, ft}};
      return v;
    }
  }
  v.note = "no zero within budget";
  return v;
}

/// Nondecreasing on [0, inf). Witness: t1 < t2 with f(t1) > f(t2).
inline PropertyVerdict check_increasing(const FunctionSpec& f, const CheckOptions& opt = {}) {
  using detail::verdict;
  if (analysis::nondecreasing(f.root())) return verdict(Property::Increasing, Status::Holds, true);

  std::vector<double> grid = probes::analytic_grid(f, opt.budget);
  grid.insert(grid.begin(), 0.0);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f.raw(grid[i]);
    if (detail::is_nan(values[i])) {
      auto v = verdict(Property::Increasing, Status::Undetermined);
      v.budget_used = grid.size();
      v.note = "f is undefined at " + format_number(grid[i]);
      return v;
    }
  }
  // suffix minima tell, for each i, whether some later probe is smaller
  std::vector<double> suffix_min(grid.size() + 1, kInf);
  for (std::size_t i = grid.size(); i-- > 0;) suffix_min[i] = std::min(values[i], suffix_min[i + 1]);

  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probes::unit_scale_less(grid[a], grid[b]); });

  PropertyVerdict v = verdict(Property::Increasing, Status::Holds);
  v.budget_used = grid.size();
  for (std::size_t i : order) {
    if (!(suffix_min[i + 1] < values[i])) continue;
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (values[j] < values[i]) {
        v.status = Status::FailsWithWitness;
        v.witness = {{grid[i], values[i]}, {grid[j], values[j]}};
        return v;
      }
    }
  }
  v.note = "no inversion within budget";
  return v;
}

/// f(x+y) <= f(x) + f(y). Always samples; `symbolic` additionally records
/// that the structural closure rules certify the property.
inline PropertyVerdict check_subadditive(const FunctionSpec& f, const CheckOptions& opt = {}) {
  PropertyVerdict v = detail::verdict(Property::Subadditive, Status::Holds);
  v.seed = opt.seed;

  auto violates = [&](double x, double y, std::vector<Sample>& w) {
    const double fx = f.raw(x), fy = f.raw(y), fs = f.raw(x + y);
    if (fs > fx + fy) {
      w = {{x, fx}, {y, fy}, {x + y, fs}};
      return true;
    }
    return false;
  };

  // directed probes: the equality-prone diagonal x = y at every scale
  auto diag = probes::dyadics(-30, 30);
  probes::sort_unit_scale(diag);
  for (double x : diag) {
    ++v.budget_used;
    if (violates(x, x, v.witness)) {
      v.status = Status::FailsWithWitness;
      return v;
    }
  }

  Rng rng(opt.seed);
  std::optional<std::pair<double, double>> best;
  std::vector<Sample> best_w;
  for (std::size_t i = 0; i < opt.budget; ++i) {
    double x = rng.log_uniform(-30, 30), y = rng.log_uniform(-30, 30);
    if (y < x) std::swap(x, y);
    ++v.budget_used;
    std::vector<Sample> w;
    if (violates(x, y, w) && (!best || std::make_pair(x, y) < *best)) {
      best = {x, y};
      best_w = std::move(w);
    }
  }
  if (best) {
    v.status = Status::FailsWithWitness;
    v.witness = std::move(best_w);
    return v;
  }
  v.symbolic = analysis::subadditive(f.root());
  if (!v.symbolic) v.note = "no violation within budget";
  return v;
}

/// lim_{t -> 0+} f(t) = f(0).
inline PropertyVerdict check_continuous_at_zero(const FunctionSpec& f, const CheckOptions& opt = {}) {
  using detail::verdict;
  const double f0 = f.raw(0.0);
  if (const auto lim = analysis::limit_at_zero(f.root())) {
    if (*lim == f0) return verdict(Property::ContinuousAtZero, Status::Holds, true);
    for (int k = 60; k >= 1; --k) {
      const double t = std::ldexp(1.0, -k);
      const double ft = f.raw(t);
      if (ft != f0) {
        auto v = verdict(Property::ContinuousAtZero, Status::FailsWithWitness, true);
        v.witness = {{t, ft}, {0.0, f0}};
        v.note = "right limit at 0 is " + format_number(*lim);
        return v;
      }
    }
    auto v = verdict(Property::ContinuousAtZero, Status::Undetermined);
    v.note = "right limit differs from f(0) but no dyadic probe shows it";
    return v;
  }

  PropertyVerdict v = verdict(Property::ContinuousAtZero, Status::Undetermined);
  v.tolerance = opt.tolerance;
  v.budget_used = 60;
  double tail_max = 0.0, tail_min = kInf;
  for (int k = 40; k <= 60; ++k) {
    const double dev = std::abs(f.raw(std::ldexp(1.0, -k)) - f0);
    if (std::isnan(dev)) {
      v.note = "f is undefined near 0";
      return v;
    }
    tail_max = std::max(tail_max, dev);
    tail_min = std::min(tail_min, dev);
  }
  if (tail_max <= opt.tolerance) {
    v.status = Status::Holds;
    v.note = "f(2^-k) within tolerance of f(0) for k >= 40";
  } else if (tail_min > opt.tolerance) {
    const double t = std::ldexp(1.0, -60);
    v.status = Status::FailsWithWitness;
    v.witness = {{t, f.raw(t)}, {0.0, f0}};
  } else {
    v.note = "tail of f(2^-k) is inconclusive";
  }
  return v;
}

/// lim_{t -> inf} f(t) = +inf.
inline PropertyVerdict check_diverges_at_infinity(const FunctionSpec& f, const CheckOptions& /*opt*/ = {}) {
  using detail::verdict;
  const double top = std::ldexp(1.0, 60);
  if (const auto lim = analysis::limit_at_infinity(f.root())) {
    if (*lim == kInf) return verdict(Property::DivergesAtInfinity, Status::Holds, true);
    auto v = verdict(Property::DivergesAtInfinity, Status::FailsWithWitness, true);
    v.witness = {{top, f.raw(top)}};
    v.note = "bounded: limit at infinity is " + format_number(*lim);
    return v;
  }
  PropertyVerdict v = verdict(Property::DivergesAtInfinity, Status::Undetermined);
  v.budget_used = 60;
  if (f.raw(top) > std::ldexp(1.0, 30)) {
    v.status = Status::Holds;
    v.note = "f(2^60) exceeds 2^30";
  } else {
    v.note = "no divergence visible up to 2^60";
  }
  return v;
}

/// inf of f over (0, inf). Exact for nondecreasing specs with a known right
/// limit at 0, and whenever that limit is 0.
inline InfBound inf_on_positive(const FunctionSpec& f, const CheckOptions& opt = {}) {
  if (const auto lim = analysis::limit_at_zero(f.root())) {
    if (analysis::nondecreasing(f.root())) return {*lim, true};
    if (*lim == 0.0) return {0.0, true};
  }
  double best = kInf;
  for (double t : probes::analytic_grid(f, opt.budget)) {
    const double ft = f.raw(t);
    if (!std::isnan(ft)) best = std::min(best, ft);
  }
  return {best, false};
}

/// True iff the witness, re-evaluated on f, still violates the property.
inline bool witness_reverifies(const FunctionSpec& f, const PropertyVerdict& v) {
  if (v.status != Status::FailsWithWitness || v.witness.empty()) return false;
  for (const auto& s : v.witness) {
    const double again = f.raw(s.t);
    if (!(again == s.value)) return false;
  }
  const auto& w = v.witness;
  auto val = [&](std::size_t i) { return w[i].value; };
  switch (v.property) {
    case Property::Amenable:
      return w.size() == 1 && (w[0].t == 0.0 ? val(0) != 0.0 : val(0) <= 0.0);
    case Property::Increasing: return w.size() == 2 && w[0].t < w[1].t && val(0) > val(1);
    case Property::Subadditive: return w.size() == 3 && w[2].t == w[0].t + w[1].t && val(2) > val(0) + val(1);
    case Property::ContinuousAtZero:
      return w.size() == 2 && w[1].t == 0.0 && std::abs(val(0) - val(1)) > v.tolerance;
    case Property::DivergesAtInfinity: return w.size() == 1 && std::isfinite(val(0));
    case Property::TripletPreservation: {
      if (w.size() != 3) return false;
      const double p = w[0].t, q = w[1].t, l = w[2].t;
      const bool hypothesis = 2 * std::max({p, q, l}) <= p + q + l;
      return hypothesis && 2 * std::max({val(0), val(1), val(2)}) > val(0) + val(1) + val(2);
    }
    case Property::MinMaxEquation: {
      if (w.size() != 3) return false;
      auto eq = [](double p, double q, double l) {
        return std::min({std::max(p, q), std::max(q, l), std::max(p, l)}) == std::max({p, q, l});
      };
      return eq(w[0].t, w[1].t, w[2].t) && !eq(val(0), val(1), val(2));
    }
  }
  return false;
}

}  // namespace ultra
