#pragma once

// Machine-readable forms of certificates, reports and move traces. Every
// top-level document carries "schema": 1. Keys keep insertion order so equal
// inputs give byte-identical text.

#include <nlohmann/json.hpp>

#include "ptangle/persistence.hpp"

namespace ptangle {

using Json = nlohmann::ordered_json;

inline constexpr int json_schema = 1;

inline Json to_json(const MoveRecord& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  j["face"] = m.face;
  j["arcs"] = m.arcs;
  j["crossings"] = m.crossings;
  j["fresh"] = m.fresh;
  j["removed"] = m.removed;
  j["recolored"] = m.recolored;
  if (m.kind == MoveKind::r2_plus) j["over"] = m.over;
  if (m.kind == MoveKind::r1_plus) j["variant"] = m.variant;
  return j;
}

inline MoveRecord move_from_json(const Json& j) {
  MoveRecord m;
  const auto kind = j.at("kind").get<std::string>();
  bool known = false;
  for (MoveKind k : {MoveKind::r1_plus, MoveKind::r1_minus, MoveKind::r2_plus, MoveKind::r2_minus, MoveKind::r3})
    if (kind == to_string(k)) {
      m.kind = k;
      known = true;
    }
  if (!known) throw std::invalid_argument("unknown move kind " + kind);
  m.face = j.at("face").get<int>();
  m.arcs = j.at("arcs").get<std::vector<ArcLabel>>();
  m.crossings = j.at("crossings").get<std::vector<int>>();
  m.fresh = j.at("fresh").get<std::vector<ArcLabel>>();
  m.removed = j.at("removed").get<std::vector<ArcLabel>>();
  m.recolored = j.at("recolored").get<std::vector<ArcLabel>>();
  m.over = j.value("over", true);
  m.variant = j.value("variant", 0);
  return m;
}

/// Colors as [[arc, color], ...] in arc order.
inline Json colors_json(const std::map<ArcLabel, Residue>& colors) {
  Json a = Json::array();
  for (const auto& [arc, c] : colors) a.push_back({arc, c});
  return a;
}

inline Json to_json(const Certificate& c, const std::string& tangle_file = "") {
  Json j;
  j["schema"] = json_schema;
  j["tangle"] = tangle_file;
  if (c.kind == CertificateKind::fox)
    j["kind"] = {{"fox", c.modulus}};
  else
    j["kind"] = {{"quandle", c.quandle ? c.quandle->name() : std::string("?")}};
  j["boundary_color"] = c.boundary_color;
  j["colors"] = colors_json(c.colors);
  j["witness"] = {c.witness.first, c.witness.second};
  j["moves"] = Json::array();
  for (const auto& m : c.moves) j["moves"].push_back(to_json(m));
  return j;
}

/// Inverse of to_json(Certificate). Quandle certificates name their quandle;
/// it is looked up in `quandles`, and dihedral(n) is always available.
inline Certificate certificate_from_json(const Json& j, const std::vector<Quandle>& quandles = {}) {
  if (j.value("schema", 0) != json_schema) throw std::invalid_argument("unsupported certificate schema");
  Certificate c;
  const auto& kind = j.at("kind");
  if (kind.contains("fox")) {
    c.kind = CertificateKind::fox;
    c.modulus = kind.at("fox").get<Residue>();
  } else {
    c.kind = CertificateKind::quandle;
    const auto name = kind.at("quandle").get<std::string>();
    for (const auto& q : quandles)
      if (q.name() == name) c.quandle = q;
    if (!c.quandle && name.rfind("dihedral(", 0) == 0) c.quandle = dihedral(std::stoi(name.substr(9)));
    if (!c.quandle) throw std::invalid_argument("unknown quandle " + name);
    c.modulus = c.quandle->size();
  }
  c.boundary_color = j.at("boundary_color").get<Residue>();
  for (const auto& pair : j.at("colors")) c.colors[pair.at(0).get<ArcLabel>()] = pair.at(1).get<Residue>();
  c.witness = {j.at("witness").at(0).get<ArcLabel>(), j.at("witness").at(1).get<ArcLabel>()};
  for (const auto& m : j.at("moves")) c.moves.push_back(move_from_json(m));
  return c;
}

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["schema"] = json_schema;
  j["passed"] = r.passed;
  j["hosts"] = r.hosts;
  j["hosts_passed"] = r.hosts_passed;
  j["closures_checked"] = r.closures_checked;
  j["vacuous"] = r.vacuous();
  if (!r.defect.empty()) j["defect"] = r.defect;
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  j["checks"] = Json::array();
  for (const auto& h : r.checks)
    j["checks"].push_back({{"host", h.host},
                           {"closure", to_string(h.closure)},
                           {"components", h.components},
                           {"checked", h.checked},
                           {"passed", h.passed}});
  return j;
}

inline Json to_json(const ClosureEvidence& e) {
  return {{"components", e.components},
          {"determinant", e.determinant},
          {"colorable_moduli", e.colorable_moduli},
          {"nontrivial", e.nontrivial}};
}

inline Json to_json(const IrreducibilityReport& r) {
  Json j;
  j["schema"] = json_schema;
  if (r.fraction) j["fraction"] = r.fraction->str();
  j["fraction_reducible_hint"] = r.fraction_reducible_hint;
  j["zero_or_infinity"] = r.zero_or_infinity;
  j["non_rational"] = r.non_rational ? Json(r.non_rational->str()) : Json(nullptr);
  j["closure_N"] = to_json(r.numerator);
  j["closure_D"] = to_json(r.denominator);
  j["krebes_gcd"] = r.krebes;
  j["local_knots"] = r.local_knots;
  j["verdict"] = r.verdict;
  return j;
}

inline Json to_json(const Propagation& p) {
  Json j;
  j["collapsed"] = p.collapsed;
  j["clashes"] = Json::array();
  for (const auto& c : p.clashes)
    j["clashes"].push_back({{"crossing", c.crossing}, {"relation", c.relation}, {"forces", c.str()}});
  return j;
}

}  // namespace ptangle
