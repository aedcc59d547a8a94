#include "iw/json_out.hpp"

#include "iw/description.hpp"
#include "iw/rational.hpp"

namespace iw {

Json verdict_json(const Verdict& v) {
  Json j;
  j["kind"] = verdict_name(v.kind);
  j["bound"] = ext_str(v.bound);
  j["level"] = v.level;
  j["prefix"] = v.prefix;
  j["certificate"] = v.certificate;
  return j;
}

Json derivation_json(const DerivationNode& n) {
  Json j;
  j["conclusion"] = n.conclusion;
  j["rule"] = n.rule;
  j["cite"] = n.cite;
  Json kids = Json::array();
  for (const auto& p : n.premises) kids.push_back(derivation_json(p));
  j["premises"] = kids;
  return j;
}

DerivationNode derivation_from_json(const Json& j) {
  DerivationNode n;
  n.conclusion = j.at("conclusion").get<std::string>();
  n.rule = j.at("rule").get<std::string>();
  n.cite = j.at("cite").get<std::string>();
  for (const auto& p : j.at("premises")) n.premises.push_back(derivation_from_json(p));
  return n;
}

static Json judgement_json(const Judgement& g) {
  Json j;
  j["value"] = trool_name(g.value);
  j["rule"] = g.rule;
  return j;
}

Json classification_json(const Classification& c) {
  Json a;
  a["analytic"] = judgement_json(c.attrs.analytic);
  a["tall"] = judgement_json(c.attrs.tall);
  a["countably_generated"] = judgement_json(c.attrs.countably_generated);
  a["nonpath_fsigma"] = judgement_json(c.attrs.nonpath_fsigma);
  a["egorov"] = judgement_json(c.attrs.egorov);
  Json j;
  j["attributes"] = a;
  j["derivation"] = derivation_json(c.derivation);
  return j;
}

Json axiom_json(const AxiomReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["checks"] = r.checks;
  j["failure"] = r.failure;
  j["witness_f"] = r.witness_f;
  j["witness_g"] = r.witness_g;
  return j;
}

Json hull_json(const HullReport& r) {
  Json j;
  j["set"] = r.set;
  j["phi"] = ext_str(r.phi_value);
  j["hull"] = rat_str(r.hull_value);
  j["gap"] = rat_str(r.gap);
  Json w = Json::array();
  for (const auto& [pt, mass] : r.witness) w.push_back({pt, rat_str(mass)});
  j["witness"] = w;
  j["family"] = r.family;
  j["constraints"] = r.constraints;
  j["witness_verified"] = r.witness_verified;
  j["witness_verified_exhaustive"] = r.witness_verified_exhaustive;
  j["lp_pivots"] = r.lp_pivots;
  return j;
}

Json scan_json(const ScanReport& r) {
  Json j;
  Json rows = Json::array();
  for (const auto& h : r.reports) rows.push_back(hull_json(h));
  j["reports"] = rows;
  j["all_zero_gaps"] = r.all_zero_gaps;
  j["max_gap"] = rat_str(r.max_gap);
  j["max_gap_set"] = r.max_gap_set;
  return j;
}

Json reduction_json(const ReductionReport& r) {
  Json j;
  Json rows = Json::array();
  for (const auto& p : r.pairs) {
    Json row;
    row["test"] = print_descr(p.test);
    row["preimage"] = print_descr(p.preimage);
    row["image_verdict"] = verdict_json(p.image_verdict);
    row["preimage_verdict"] = verdict_json(p.preimage_verdict);
    row["exact"] = p.exact;
    row["conflict"] = p.conflict;
    row["flagged"] = p.flagged;
    row["note"] = p.note;
    rows.push_back(row);
  }
  j["pairs"] = rows;
  j["consistent"] = r.consistent;
  j["failures"] = r.failures;
  return j;
}

Json diagonal_json(const DiagonalReport& r) {
  Json j;
  j["chosen_words"] = r.chosen_words;
  j["chosen_ones"] = r.chosen_ones;
  Json w = Json::array();
  for (const auto& q : r.level_weights) w.push_back(rat_str(q));
  j["level_weights"] = w;
  j["preimage_weight"] = rat_str(r.preimage_weight);
  j["flagged_levels"] = r.flagged_levels;
  return j;
}

Json growth_json(const GrowthVector& g) {
  Json j;
  j["prefix"] = g.prefix;
  j["affine_a"] = g.affine_a;
  j["affine_b"] = g.affine_b;
  return j;
}

GrowthVector growth_from_json(const Json& j) {
  GrowthVector g;
  g.prefix = j.at("prefix").get<std::vector<uint64_t>>();
  g.affine_a = j.at("affine_a").get<uint64_t>();
  g.affine_b = j.at("affine_b").get<uint64_t>();
  return g;
}

Json interval_tree_json(const IntervalTree& t) {
  Json j;
  j["growth"] = growth_json(t.c);
  j["depth"] = t.depth;
  Json spans = Json::array();  // std::map order keeps this sorted by code
  for (const auto& [code, span] : t.span)
    spans.push_back({code, rat_str(span.first), rat_str(span.second)});
  j["spans"] = spans;
  return j;
}

IntervalTree interval_tree_from_json(const Json& j) {
  IntervalTree t;
  t.c = growth_from_json(j.at("growth"));
  t.depth = j.at("depth").get<uint64_t>();
  for (const auto& row : j.at("spans")) {
    uint64_t code = row.at(0).get<uint64_t>();
    t.span[code] = {parse_rat(row.at(1).get<std::string>()),
                    parse_rat(row.at(2).get<std::string>())};
  }
  return t;
}

Json witness_audit_json(const WitnessAudit& a) {
  Json j;
  j["ok"] = a.ok;
  j["nodes_checked"] = a.nodes_checked;
  j["domination_checks"] = a.domination_checks;
  j["failures"] = a.failures;
  return j;
}

Json violation_json(const ViolationReport& r) {
  Json j;
  j["alpha"] = rat_str(r.alpha);
  j["level"] = r.level;
  j["best_node"] = r.best_node;
  j["ratio"] = rat_str(r.ratio);
  j["lower_bound"] = rat_str(r.lower_bound);
  j["hit_children"] = r.hit_children;
  j["mu_hits"] = rat_str(r.mu_hits);
  j["phi_hits"] = ext_str(r.phi_hits);
  return j;
}

}  // namespace iw
