#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iw/analysis.hpp"
#include "iw/ideal.hpp"

namespace iw {

// Expression language over the catalogue ideals, plus a rule engine that
// derives Egorov status together with a replayable, citation-bearing
// derivation tree. The engine is sound but deliberately incomplete:
// expressions beyond the reach of the rule base classify Unknown.

struct IdealExpr;
using ExprPtr = std::shared_ptr<const IdealExpr>;

struct IdealExpr {
  enum class Kind {
    // atoms
    Fin,
    FinPow,    // iterated product of the finite ideal, power >= 1
    Summable,  // finite total weight
    Density,   // vanishing block density
    Ib,        // finitely many branches cover the set (binary words)
    EDFin,     // uniformly bounded diagonal columns
    Mazur,     // bounded cover numbers across the function parts
    Solecki,   // measure-half clopen sets through prescribed points
    BI,        // meet of a row extension with a grid product (see expansion)
    CEI,       // meet of the row and column extensions of the cube
    JFam,      // growing powers restricted to supports inside a base set
    FinSets,   // finite subsets of the omega x omega grid
    // constructors
    DirectSum,
    FullPad,
    Fubini,
    ColExt,
    RowExt,
    IndexedSum,
    IndexedSumOver,
    Meet,
    Restrict,
  };

  Kind kind = Kind::Fin;
  uint64_t power = 1;              // FinPow
  std::optional<WeightRule> rule;  // Summable
  std::optional<Descr> set;        // JFam base (on omega), Restrict set
  std::vector<ExprPtr> kids;
  // IndexedSum kids: head parts in order, then the repeated tail part last.
  // IndexedSumOver kids: the index ideal first, then the same layout.
};

ExprPtr expr_atom(IdealExpr::Kind k);
ExprPtr expr_finpow(uint64_t n);
ExprPtr expr_summable(WeightRule r);
ExprPtr expr_jfam(Descr base);
ExprPtr expr_node(IdealExpr::Kind k, std::vector<ExprPtr> kids);
ExprPtr expr_sum(std::vector<ExprPtr> heads, ExprPtr tail);
ExprPtr expr_sum_over(ExprPtr index, std::vector<ExprPtr> heads, ExprPtr tail);
ExprPtr expr_restrict(ExprPtr e, Descr set);

// Published grammar. The infix operators "(+)" (direct sum) and "(x)"
// (product) associate to the left and bind alike; FullPad, ColExt, RowExt,
// Meet and Restrict are written as calls; Sum(seq) and SumOver(expr; seq)
// take an eventually constant sequence "e0, ..., ek; tail…" or just "tail…"
// (ASCII "..." works too). Atoms: Fin, FinPow n, Summable rule, Density, Ib,
// EDFin, Mazur, Solecki, BI, CEI, FinSets, JFam (descr). A weight rule
// swallows "," and ";" only when a digit follows, so rules sit inside
// argument lists unquoted; Restrict's set is parsed over the base
// expression's space, JFam's over omega.
ExprPtr parse_expr(const std::string& text);
// Inverse of parse_expr on its own output. Right-nested infix trees built by
// hand have no faithful rendering (the grammar has no grouping), so printing
// them trips the round-trip; parsed trees always nest to the left.
std::string print_expr(const IdealExpr& e);
bool expr_equal(const IdealExpr& a, const IdealExpr& b);

// Host space of the denoted ideal. Products nest to the right: the n-th
// power of the finite ideal lives on omega x (omega x (... x omega)).
SpacePtr expr_space(const IdealExpr& e);

// BI and CEI stand for textbook decompositions into the constructors above;
// nullptr for everything else.
ExprPtr definitional_expansion(const IdealExpr& e);

// Membership oracle denoted by the expression, when the combinator algebra
// covers it (Restrict has no backing; a meet of parts on mismatched spaces
// throws). CEI's column component is rebased onto the right-nested host so
// both meet components share a space. The Solecki atom resolves to the
// resolution-3 finite stand-in.
std::optional<IdealOracle> resolve_oracle(const IdealExpr& e);

// ---------------------------------------------------------------- the rules
//
// R1   countably generated => Egorov
// R2   non-pathological finite-mass form and not countably generated => not
// R3   tall non-pathological finite-mass form => not
// R4   direct sum: Egorov iff both summands are
// R5   full pad: Egorov iff the constrained part is
// R6   column extension: Egorov iff the base is
// R7   indexed sum (and row extension): Egorov iff every part is
// R8   meet: all parts Egorov => Egorov (one direction only)
// R9   indexed sum over an index ideal, analytic parts: Egorov iff the index
//      ideal is and the set of bad part indices belongs to it; the bad set
//      is decided by the index ideal's own oracle
// R10  product, analytic second factor: Egorov iff both factors are
// R11  Rudin-Keisler edges from the catalogue: a reduction source inherits
//      Egorov from the target, and non-Egorov flows the other way
// R12  restriction: Egorov passes from the ideal to each restriction
// A1   tall => not countably generated
// A2   analyticity closed under every constructor
// A3   countable generation closed under direct sum, pad, column extension

struct RuleSet {
  std::set<std::string> ids;
  bool has(const std::string& id) const { return ids.count(id) != 0; }
  static RuleSet all();
};

struct DerivationNode {
  std::string conclusion;  // "egorov(Fin (x) Fin) = Yes", "Ib <=RK Solecki"
  std::string rule;        // R1..R12, A1..A3, fact, def, member, none
  std::string cite;
  std::vector<DerivationNode> premises;
};

struct Judgement {
  Trool value = Trool::Maybe;
  std::string rule;  // provenance: the rule id that settled the value
};

struct AttributeRecord {
  Judgement analytic, tall, countably_generated, nonpath_fsigma, egorov;
};

struct Classification {
  AttributeRecord attrs;
  DerivationNode derivation;  // the egorov verdict, replayable node by node
};

Classification classify(const IdealExpr& e);
Classification classify(const IdealExpr& e, const RuleSet& rules);

// Re-derives every internal node from its premises by the labeled rule;
// member nodes are re-decided against the resolved oracle. Returns false and
// a complaint for the first node that does not check out.
bool replay(const DerivationNode& n, std::string* complaint = nullptr);

// ------------------------------------------------ countably generated forms

enum class CanonKind { IsoFin, IsoFinPadded, IsoFinTimesEmpty };
const char* canon_name(CanonKind k);

struct UndecidableFiniteness : std::runtime_error {
  size_t generator;
  UndecidableFiniteness(std::string what, size_t idx)
      : std::runtime_error(std::move(what)), generator(idx) {}
};

struct Canonicalization {
  CanonKind kind = CanonKind::IsoFin;
  std::vector<Descr> blocks;            // disjointified generators, in order
  std::vector<size_t> infinite_blocks;  // indices whose block is infinite
  bool schematic_tail = false;          // the every-index generator schema
  std::string witness;                  // partition recipe for the bijection
};

// Disjointifies the generators (each minus the union of its predecessors)
// and sorts the generated ideal into one of the three countably generated
/// shapes: no infinite block, finitely many (the list stands complete), or
// one per index when `every_index_tail` asserts the family continues
// schematically. Generators must share a space; blocks outside the decidable
// fragment raise UndecidableFiniteness with the offending index.
Canonicalization canonicalize_countably_generated(
    const std::vector<Descr>& generators, bool every_index_tail = false);

// --------------------------------------------------------------- the table

struct GoldenEntry {
  std::string expression;
  Trool expected;
  Classification result;
};

/// The fixed 15-row verdict table: nine Egorov entries (the finite ideal, its
// padded, column- and row-extended forms, the square, cube and fourth power,
// and the two meet examples) and six non-Egorov entries (harmonic summable,
// density, and the four catalogue atoms with reduction edges).
std::vector<GoldenEntry> example_verdicts();

}  // namespace iw
