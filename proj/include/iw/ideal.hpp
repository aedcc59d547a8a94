#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iw/description.hpp"
#include "iw/rational.hpp"
#include "iw/submeasure.hpp"

namespace iw {

// Membership oracles for ideals of described sets. A verdict is either a
// proof (In/Out, with a replayable certificate: rerunning decide on the same
// description and budget reproduces it) or graded finite evidence.

enum class VerdictKind { ProvedIn, BoundedUpTo, Unknown, DivergentUpTo, ProvedOut };

const char* verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  ExtRat bound;        // BoundedUpTo: mass seen; ProvedIn: size evidence when meaningful
  uint64_t level = 0;  // DivergentUpTo: the threshold that was crossed
  uint64_t prefix = 0; // space codes examined for empirical verdicts
  std::vector<std::string> certificate;
};

Verdict v_in(std::string why);
Verdict v_out(std::string why);
Verdict v_bounded(ExtRat bound, uint64_t prefix, std::string why);
Verdict v_divergent(uint64_t level, uint64_t prefix, std::string why);
Verdict v_unknown(std::string why);

// Conjunction across components: a set belongs to the compound ideal exactly
// when it belongs to every part. Evidence is ranked
//   ProvedIn < BoundedUpTo < Unknown < DivergentUpTo < ProvedOut
// and the conjunction keeps the worst rank; Out-evidence for one component is
// Out-evidence for the whole, and it never fabricates a proof.
Verdict verdict_and(Verdict a, const Verdict& b);

// Resource bounds for a decide call. All fields must be positive; exceeding
// `depth` while splitting products or sums yields Unknown, never a wrong
// proof. `level` is the mass threshold for divergence evidence.
struct Budget {
  uint64_t prefix = 64;
  uint64_t level = 8;
  uint64_t depth = 8;
};

Budget parse_budget(const std::string& text);  // "prefix[,level[,depth]]"
Budget budget_from_env();                      // IDEALC_BUDGET, else defaults

enum class Trool { Yes, No, Maybe };
const char* trool_name(Trool t);

struct IdealAttrs {
  Trool analytic = Trool::Maybe;
  Trool tall = Trool::Maybe;
  Trool countably_generated = Trool::Maybe;
  Trool nonpath_fsigma = Trool::Maybe;
};

struct IdealOracle {
  SpacePtr space;
  std::string provenance;  // expression that built the oracle
  IdealAttrs attrs;
  std::function<Verdict(const Descr&, const Budget&)> decide;
};

// --------------------------------------------------------------- base ideals

// Fin(phi): sets of finite submeasure mass. Structural shortcuts when the
// description is decidably finite (mass is then finite) or decidably infinite
// with a submeasure that diverges on every infinite set; otherwise the mass
// of the described set over growing code prefixes is watched until it passes
// budget.level (DivergentUpTo) or the prefix runs out (BoundedUpTo).
IdealOracle fin_of(const Submeasure& phi);

// Finite subsets of an arbitrary coded space.
IdealOracle finite_ideal(SpacePtr sp);

// The one-member ideal {empty}. Not proper; plumbing for the padded products
// below, where "section outside the ideal" has to mean "section inhabited".
IdealOracle trivial_ideal(SpacePtr sp);

IdealOracle summable_ideal(const WeightRule& rule);

// Vanishing dyadic block density. Membership is genuinely a tail condition,
// so beyond the structural fragment (finite sets in, eventually periodic
// inhabited sets out) the oracle only reports sampled tail evidence.
IdealOracle density_ideal();

IdealOracle ib_ideal();     // finitely many branches cover the set
IdealOracle edfin_ideal();  // uniformly bounded diagonal sections
IdealOracle mazur_ideal();  // bounded cover numbers across the function parts

// Finite-resolution stand-in driven by description syntax: explicitly listed
// member families count as small, their complements as large, and the
// small/large algebra is closed under the boolean constructors. Everything
// outside that fragment is Unknown rather than guessed.
IdealOracle solecki_ideal(int l);

// --------------------------------------------------------------- combinators

// Components answer on their own parts; both must accept.
IdealOracle direct_sum(IdealOracle i, IdealOracle j);
// Only part 0 is constrained; part 1 is free.
IdealOracle full_pad(IdealOracle i);

// Product ideal: the set of first coordinates whose section falls outside j
// must belong to i. Sections are decided classwise; the undecided classes are
// bracketed between a proved-bad lower bound and a not-proved-good upper
// bound, and a proof is issued only when the bracket settles it.
IdealOracle fubini(IdealOracle i, IdealOracle j);

// i (x) {empty}: supports with i-small sets of inhabited sections.
IdealOracle col_ext(IdealOracle i);
// {empty} (x) j: every section must belong to j.
IdealOracle row_ext(IdealOracle j);

// Iterated fubini power of finite_ideal(omega) on nested product spaces.
IdealOracle finpow(uint64_t n);

// A part-indexed family of ideals. Factories must denote proper ideals that
// contain every finite set; the tail rules of the indexed sums lean on that.
struct IndexedFamily {
  std::function<IdealOracle(uint64_t)> part;
  std::string label;
};

// Host space for the indexed sums: one omega part per index. Section traces
// are recoded into each part oracle's own space (part codings are onto the
// naturals, so the plain set constructors transfer verbatim).
SpacePtr indexed_host();

// Every section in its part ideal.
IdealOracle indexed_sum(IndexedFamily parts);
// The set of part indices whose section escapes its ideal belongs to j.
IdealOracle indexed_sum_over(IdealOracle j, IndexedFamily parts);

// Intersection of ideals on one shared space.
IdealOracle meet(std::vector<IdealOracle> parts);

// Growing powers on the parts, meeting the support restriction: inhabited
// parts may escape `base` only finitely often. `base` lives on omega.
IdealOracle jfamily(const Descr& base);

}  // namespace iw
