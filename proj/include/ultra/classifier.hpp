#pragma once

// Membership in the preservation classes, built from the property probes:
//   P_U  (ultrametric preserving)           = increasing and amenable
//   PT   (topology preserving within P_U)   = P_U and continuous at 0
//   P_M ∩ P_U sufficient certificate        = increasing and subadditive
// plus the two sampled reformulations over triples: triangle-triplet
// preservation and the min-max functional equation.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ultra/properties.hpp"
#include "ultra/rng.hpp"

namespace ultra {

namespace detail {

/// Conjunction: the first failing conjunct wins, then Undetermined.
inline PropertyVerdict conjoin(std::initializer_list<PropertyVerdict> parts) {
  PropertyVerdict out;
  out.status = Status::Holds;
  out.symbolic = true;
  for (const auto& p : parts) {
    out.budget_used += p.budget_used;
    out.seed = std::max(out.seed, p.seed);
    if (p.status == Status::FailsWithWitness) {
      PropertyVerdict f = p;
      f.budget_used = out.budget_used;
      return f;
    }
  }
  for (const auto& p : parts) {
    out.symbolic = out.symbolic && p.symbolic;
    if (p.status == Status::Undetermined && out.status == Status::Holds) {
      out.status = Status::Undetermined;
      out.property = p.property;
      out.note = p.note;
    }
  }
  if (out.status == Status::Holds) out.property = parts.begin()->property;
  return out;
}

}  // namespace detail

/// f ∈ P_U iff f is increasing and amenable.
inline PropertyVerdict classify_pu(const FunctionSpec& f, const CheckOptions& opt = {}) {
  return detail::conjoin({check_amenable(f, opt), check_increasing(f, opt)});
}

/// f ∈ PT iff f is amenable, increasing and continuous at 0.
inline PropertyVerdict classify_pt(const FunctionSpec& f, const CheckOptions& opt = {}) {
  return detail::conjoin({classify_pu(f, opt), check_continuous_at_zero(f, opt)});
}

/// Increasing and subadditive amenable functions lie in P_M ∩ P_U.
inline PropertyVerdict classify_pm_sufficient(const FunctionSpec& f, const CheckOptions& opt = {}) {
  return detail::conjoin({check_increasing(f, opt), check_subadditive(f, opt)});
}

namespace detail {

struct Triple {
  double p, q, l;
  auto tie() const { return std::tie(p, q, l); }
};

/// Tests `image_ok` on the images of the directed triples in order, then of `samples`
/// drawn ones. The first directed violation is reported; failing that, the
/// lexicographically smallest sampled violation.
template <typename Draw>
PropertyVerdict run_triples(const FunctionSpec& f, Property prop, const std::vector<Triple>& directed,
                            std::size_t samples, std::uint64_t seed, Draw draw, bool (*image_ok)(double, double, double)) {
  PropertyVerdict v;
  v.property = prop;
  v.status = Status::Holds;
  v.seed = seed;
  auto witness = [&](const Triple& t) -> std::vector<Sample> {
    return {{t.p, f.raw(t.p)}, {t.q, f.raw(t.q)}, {t.l, f.raw(t.l)}};
  };
  auto ok = [&](const Triple& t) { return image_ok(f.raw(t.p), f.raw(t.q), f.raw(t.l)); };

  for (const auto& t : directed) {
    ++v.budget_used;
    if (!ok(t)) {
      v.status = Status::FailsWithWitness;
      v.witness = witness(t);
      return v;
    }
  }
  Rng rng(seed);
  std::optional<Triple> best;
  for (std::size_t i = 0; i < samples; ++i) {
    const Triple t = draw(rng);
    ++v.budget_used;
    if (!ok(t) && (!best || t.tie() < best->tie())) best = t;
  }
  if (best) {
    v.status = Status::FailsWithWitness;
    v.witness = witness(*best);
  } else {
    v.note = "no violation within budget";
  }
  return v;
}

inline bool triangle_triplet(double p, double q, double l) { return 2 * std::max({p, q, l}) <= p + q + l; }

inline bool minmax_equation(double p, double q, double l) {
  return std::min({std::max(p, q), std::max(q, l), std::max(p, l)}) == std::max({p, q, l});
}

}  // namespace detail

/// Samples triangle triplets (p,q,l), i.e. 2·max <= p+q+l, and checks that
/// their images are triangle triplets too. Directed probes: (0,0,0) and, for
/// each dyadic scale p, the triples (p,p,p), (0,p,p), (p,p,2p).
inline PropertyVerdict check_triplet_preservation(const FunctionSpec& f, std::size_t samples, std::uint64_t seed) {
  std::vector<detail::Triple> directed{{0, 0, 0}};
  auto scales = probes::dyadics(-30, 30);
  probes::sort_unit_scale(scales);
  for (double p : scales) {
    directed.push_back({p, p, p});
    directed.push_back({0, p, p});
    directed.push_back({p, p, 2 * p});
  }
  // p, q log-uniform; l uniform on [|p-q|, p+q] keeps the triangle inequality
  auto draw = [](Rng& rng) {
    for (;;) {
      const double p = rng.log_uniform(-30, 30), q = rng.log_uniform(-30, 30);
      const double l = rng.uniform(std::abs(p - q), p + q);
      if (detail::triangle_triplet(p, q, l)) return detail::Triple{p, q, l};
    }
  };
  return detail::run_triples(f, Property::TripletPreservation, directed, samples, seed, draw,
                             &detail::triangle_triplet);
}

/// Samples triples satisfying min{max{p,q}, max{q,l}, max{p,l}} = max{p,q,l}
/// (two largest entries equal) and checks the same equation on the images.
/// Directed probes: (0,0,0), (p,p,p) and (0,p,p) per dyadic scale, then the
/// grid pairs (c1, c2, c2) with c1 < c2 in unit-scale order, capped at
/// `directed_pairs`.
inline PropertyVerdict check_minmax_equation(const FunctionSpec& f, std::size_t samples, std::uint64_t seed,
                                             std::size_t directed_pairs = 10000) {
  std::vector<detail::Triple> directed{{0, 0, 0}};
  auto scales = probes::dyadics(-30, 30);
  probes::sort_unit_scale(scales);
  for (double p : scales) {
    directed.push_back({p, p, p});
    directed.push_back({0, p, p});
  }
  const auto grid = probes::witness_grid(f);
  std::vector<double> order = grid;
  probes::sort_unit_scale(order);
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < order.size() && pairs < directed_pairs; ++a) {
    const auto first_above = std::upper_bound(grid.begin(), grid.end(), order[a]);
    for (auto it = first_above; it != grid.end() && pairs < directed_pairs; ++it, ++pairs)
      directed.push_back({order[a], *it, *it});
  }
  auto draw = [](Rng& rng) {
    double p = rng.log_uniform(-30, 30), q = rng.log_uniform(-30, 30);
    if (q < p) std::swap(p, q);
    switch (rng.below(3)) {
      case 0: return detail::Triple{p, q, q};
      case 1: return detail::Triple{q, p, q};
      default: return detail::Triple{q, q, p};
    }
  };
  return detail::run_triples(f, Property::MinMaxEquation, directed, samples, seed, draw, &detail::minmax_equation);
}

/// The classes whose membership coincides with PT.
inline const std::vector<std::string>& pt_equal_classes() {
  static const std::vector<std::string> names{"P_CU", "P_TBU", "P_CU,TBU", "P_NUDU"};
  return names;
}

struct ClassificationReport {
  std::string spec;
  CheckOptions options;
  PropertyVerdict pu;
  PropertyVerdict pt;
  PropertyVerdict pm_sufficient;
  PropertyVerdict triplet;
  PropertyVerdict minmax;
  InfBound inf_bound;
  /// "PT = P_CU" and so on: each listed class has exactly PT's membership.
  std::vector<std::string> equalities;
};

/// Throws std::logic_error if the report contradicts the class inclusions.
inline void check_report_invariants(const ClassificationReport& r) {
  if (r.pt.holds() && !r.pu.holds()) throw std::logic_error("PT holds but P_U does not");
  if (r.pu.holds() && r.inf_bound.exact && r.inf_bound.estimate == 0.0 && !r.pt.holds())
    throw std::logic_error("P_U holds with inf 0 but PT does not");
}

inline ClassificationReport classify_report(const FunctionSpec& f, const CheckOptions& opt = {}) {
  ClassificationReport r;
  r.spec = f.source();
  r.options = opt;
  r.pu = classify_pu(f, opt);
  r.pt = classify_pt(f, opt);
  r.pm_sufficient = classify_pm_sufficient(f, opt);
  r.triplet = check_triplet_preservation(f, opt.budget, opt.seed);
  r.minmax = check_minmax_equation(f, opt.budget, opt.seed);
  r.inf_bound = inf_on_positive(f, opt);
  for (const auto& c : pt_equal_classes()) r.equalities.push_back("PT = " + c);
  check_report_invariants(r);
  return r;
}

}  // namespace ultra
