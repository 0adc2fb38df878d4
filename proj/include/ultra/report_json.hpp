#pragma once

#include <string>

#include <json.hpp>

#include "ultra/classifier.hpp"
#include "ultra/matrix_io.hpp"
#include "ultra/properties.hpp"
#include "ultra/witness.hpp"

namespace ultra {

inline constexpr const char* kToolVersion = "0.3.0";

inline nlohmann::json to_json(const PropertyVerdict& v) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& s : v.witness) w.push_back({{"t", s.t}, {"value", s.value}});
  nlohmann::json j{{"status", to_string(v.status)},
                   {"property", to_string(v.property)},
                   {"symbolic", v.symbolic},
                   {"witness", w},
                   {"seed", v.seed},
                   {"budget_used", v.budget_used}};
  if (v.tolerance > 0) j["tolerance"] = v.tolerance;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline nlohmann::json to_json(const InfBound& b) { return {{"estimate", b.estimate}, {"exact", b.exact}}; }

inline nlohmann::json to_json(const CheckOptions& o) {
  return {{"seed", o.seed}, {"budget", o.budget}, {"tolerance", o.tolerance}};
}

inline nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json membership;
  for (const auto& c : pt_equal_classes()) membership[c] = to_string(r.pt.status);
  return {{"tool_version", kToolVersion},
          {"spec", r.spec},
          {"config", to_json(r.options)},
          {"verdict_PU", to_json(r.pu)},
          {"verdict_PT", to_json(r.pt)},
          {"verdict_PM_sufficient", to_json(r.pm_sufficient)},
          {"verdict_triplet", to_json(r.triplet)},
          {"verdict_minmax", to_json(r.minmax)},
          {"inf_bound", to_json(r.inf_bound)},
          {"notes", {{"equalities", r.equalities}, {"membership_by_equality", membership}}}};
}

inline nlohmann::json to_json(const TripleViolation& v) {
  return {{"indices", {v.i, v.j, v.k}},
          {"lhs", v.lhs},
          {"rhs", v.rhs},
          {"kind", v.kind == TripleKind::StrongTriangle ? "StrongTriangle" : "Triangle"}};
}

inline nlohmann::json to_json(const WitnessCertificate& c) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.parameters) params[k] = v;
  nlohmann::json j{{"tool_version", kToolVersion},
                   {"result", "certificate"},
                   {"kind", to_string(c.kind)},
                   {"space_before", space_to_json(c.space_before)},
                   {"space_after", matrix_to_json(c.space_after)},
                   {"parameters", params},
                   {"budget_used", c.budget_used}};
  if (c.matrix_violation) {
    const auto& m = *c.matrix_violation;
    j["violation"] = {{"kind", to_string(m.code)}, {"indices", {m.pos.row, m.pos.col}}, {"value", m.value}};
  } else if (c.triple_violation) {
    j["violation"] = to_json(*c.triple_violation);
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : c.covering_table)
      rows.push_back({{"points", r.points},
                      {"eps_before", r.eps_before},
                      {"covering_before", r.covering_before},
                      {"eps_after", r.eps_after},
                      {"covering_after", r.covering_after}});
    j["violation"] = {{"kind", "CoveringTable"}, {"rows", rows}};
  }
  return j;
}

inline nlohmann::json to_json(const NoWitnessFound& n) {
  return {{"tool_version", kToolVersion}, {"result", "NoWitnessFound"}, {"budget_used", n.budget_used}, {"reason", n.reason}};
}

inline nlohmann::json to_json(const UniversalPoint& p) { return nlohmann::json::array({p.s, p.t}); }

}  // namespace ultra
