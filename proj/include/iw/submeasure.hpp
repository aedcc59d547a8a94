#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iw/description.hpp"
#include "iw/rational.hpp"
#include "iw/space.hpp"

namespace iw {

struct GroundTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoReducedFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weight assignment for summable submeasures: explicit prefix, then either
// the 1/(n+1) rule or a constant.
struct WeightRule {
  std::vector<Rat> prefix;
  bool harmonic_tail = true;
  Rat constant_tail = 0;

  Rat at(uint64_t n) const {
    if (n < prefix.size()) return prefix[n];
    if (harmonic_tail) return rat(1, n + 1);
    return constant_tail;
  }
};
WeightRule parse_weight_rule(const std::string& text);
std::string print_weight_rule(const WeightRule& r);

// One LP constraint: sum of masses over `codes` is at most `bound`.
struct LpConstraint {
  std::vector<uint64_t> codes;
  Rat bound;
  std::string tag;
};

// Monotone subadditive set function on finite coded sets, with an optional
// reduced constraint family for the hull LP. Codes passed to eval must be
// sorted, duplicate free and valid in the space.
struct Submeasure {
  SpacePtr space;
  std::string label;
  std::function<ExtRat(const std::vector<uint64_t>&)> eval;
  // generator of a sound constraint family restricted to `ground`, or null
  std::function<std::vector<LpConstraint>(const std::vector<uint64_t>&)> reduced;
  // counting-style divergence: any infinite set provably escapes Fin(phi)
  bool infinite_implies_divergent = false;
};

Submeasure counting_submeasure();
Submeasure summable_submeasure(WeightRule rule);
Submeasure density_submeasure();
Submeasure antichain_submeasure();                 // on binary words
Submeasure edfin_submeasure();                     // on the triangle
Submeasure mazur_submeasure();                     // all parts, max of the part values
Submeasure mazur_part_submeasure(uint64_t n);      // same values, family pinned to part n
Submeasure solecki_cover_submeasure(int l);

ExtRat mazur_phi(uint64_t n, const std::vector<uint64_t>& locals);

// catalogue addressing: counting, summable:<rule>, density, ib, edfin,
// mazur, mazur:<n>, solecki:<l>
Submeasure submeasure_by_id(const std::string& id);
std::vector<std::string> catalogue_submeasure_ids();

struct AxiomReport {
  bool passed = true;
  uint64_t checks = 0;
  std::string failure;
  std::vector<uint64_t> witness_f, witness_g;
};
AxiomReport check_axioms(const Submeasure& phi, uint64_t prefix, uint64_t trials, uint64_t seed);
// every pair of subsets of the first `count` codes
AxiomReport check_axioms_exhaustive(const Submeasure& phi, uint64_t count);

struct TailProfile {
  std::vector<std::pair<uint64_t, ExtRat>> samples;  // (cut, value), nonincreasing
  bool vanishing = false;  // some sampled tail already has value 0
  ExtRat floor;            // 0 when vanishing, else the last sampled value
  uint64_t at_cut = 0;     // cut the hint refers to
  uint64_t prefix = 0;
};
TailProfile tail_profile(const Submeasure& phi, const Descr& d,
                         const std::vector<uint64_t>& cuts, uint64_t prefix);

}  // namespace iw
