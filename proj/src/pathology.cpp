#include "iw/pathology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

namespace iw {

namespace {

std::vector<uint64_t> sorted_codes(std::vector<uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Rat finite_value(const Submeasure& phi, const std::vector<uint64_t>& codes) {
  ExtRat v = phi.eval(codes);
  if (v.infinite) throw GroundTooLarge("submeasure is infinite on a finite set; cannot build the LP");
  return v.value;
}

}  // namespace

std::vector<LpConstraint> exhaustive_family(const Submeasure& phi, const std::vector<uint64_t>& ground) {
  if (ground.size() > 16) throw GroundTooLarge("exhaustive family capped at 16 ground points");
  uint64_t total = uint64_t{1} << ground.size();
  std::vector<LpConstraint> fam;
  fam.reserve(total - 1);
  for (uint64_t mask = 1; mask < total; ++mask) {
    LpConstraint con;
    for (size_t i = 0; i < ground.size(); ++i)
      if ((mask >> i) & 1) con.codes.push_back(ground[i]);
    con.bound = finite_value(phi, con.codes);
    con.tag = "exhaustive";
    fam.push_back(std::move(con));
  }
  return fam;
}

HullReport hull(const Submeasure& phi, const std::vector<uint64_t>& ground_in,
                const std::vector<uint64_t>& a_in, FamilyKind kind) {
  auto ground = sorted_codes(ground_in);
  auto a = sorted_codes(a_in);
  for (uint64_t c : a)
    if (!std::binary_search(ground.begin(), ground.end(), c))
      throw std::invalid_argument("objective set must lie inside the ground");

  std::vector<LpConstraint> fam;
  std::string family_label;
  if (kind == FamilyKind::Exhaustive) {
    fam = exhaustive_family(phi, ground);
    family_label = "exhaustive";
  } else {
    if (!phi.reduced) throw NoReducedFamily(phi.label + " carries no reduced constraint family");
    fam = phi.reduced(ground);
    family_label = fam.empty() ? "reduced" : fam.front().tag;
  }

  std::map<uint64_t, size_t> var;
  for (size_t i = 0; i < ground.size(); ++i) var[ground[i]] = i;
  DenseLp lp;
  lp.vars = ground.size();
  lp.objective.assign(lp.vars, Rat(0));
  for (uint64_t c : a) lp.objective[var.at(c)] = 1;
  lp.rows.reserve(fam.size());
  lp.bounds.reserve(fam.size());
  for (const auto& con : fam) {
    std::vector<Rat> row(lp.vars, Rat(0));
    for (uint64_t c : con.codes) row[var.at(c)] = 1;
    lp.rows.push_back(std::move(row));
    lp.bounds.push_back(con.bound);
  }
  LpSolution sol = lp_maximize(lp);

  HullReport rep;
  rep.set = a;
  rep.phi_value = phi.eval(a);
  if (rep.phi_value.infinite) throw GroundTooLarge("submeasure is infinite on the objective set");
  rep.hull_value = sol.value;
  rep.family = family_label;
  rep.constraints = fam.size();
  rep.lp_pivots = sol.pivots;
  for (size_t i = 0; i < ground.size(); ++i) rep.witness.emplace_back(ground[i], sol.x[i]);

  // the witness must satisfy the family it was solved against
  for (size_t i = 0; i < fam.size(); ++i) {
    Rat total = 0;
    for (uint64_t c : fam[i].codes) total += sol.x[var.at(c)];
    if (total > fam[i].bound) throw std::logic_error("simplex witness violates a solved constraint");
  }
  for (const Rat& mass : sol.x)
    if (mass < 0) throw std::logic_error("simplex witness has negative mass");
  rep.witness_verified = true;

  // cross-check against every subset constraint while that is affordable;
  // this also validates reduced families
  if (ground.size() <= 14) {
    uint64_t total_masks = uint64_t{1} << ground.size();
    std::vector<Rat> masked_sum(total_masks, Rat(0));
    std::vector<uint64_t> codes;
    for (uint64_t mask = 1; mask < total_masks; ++mask) {
      uint64_t low = std::countr_zero(mask);
      masked_sum[mask] = masked_sum[mask & (mask - 1)] + sol.x[low];
      codes.clear();
      for (size_t i = 0; i < ground.size(); ++i)
        if ((mask >> i) & 1) codes.push_back(ground[i]);
      ExtRat bound = phi.eval(codes);
      if (!(ExtRat(masked_sum[mask]) <= bound))
        throw std::logic_error("witness violates a subset constraint: the family is unsound");
    }
    rep.witness_verified_exhaustive = true;
  }

  rep.gap = rep.phi_value.value - rep.hull_value;
  if (rep.gap < 0)
    throw std::logic_error("hull exceeds the submeasure: constraint family incomplete");
  return rep;
}

ScanReport pathology_scan(const Submeasure& phi, const std::vector<uint64_t>& ground_in,
                          uint64_t samples, uint64_t seed) {
  auto ground = sorted_codes(ground_in);
  FamilyKind kind = FamilyKind::Reduced;
  if (!phi.reduced) {
    kind = FamilyKind::Exhaustive;
  } else {
    try {
      phi.reduced(ground);
    } catch (const NoReducedFamily&) {
      kind = FamilyKind::Exhaustive;
    }
  }

  ScanReport scan;
  scan.max_gap = 0;
  std::mt19937_64 rng(seed);
  for (uint64_t s = 0; s < samples; ++s) {
    std::vector<uint64_t> a;
    uint64_t bits = 0;
    for (size_t i = 0; i < ground.size(); ++i) {
      if (i % 64 == 0) bits = rng();
      if ((bits >> (i % 64)) & 1) a.push_back(ground[i]);
    }
    scan.reports.push_back(hull(phi, ground, a, kind));
    const HullReport& rep = scan.reports.back();
    if (rep.gap != 0) {
      scan.all_zero_gaps = false;
      if (scan.max_gap < rep.gap) {
        scan.max_gap = rep.gap;
        scan.max_gap_set = rep.set;
      }
    }
  }
  return scan;
}

}  // namespace iw
