#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iw/description.hpp"
#include "iw/ideal.hpp"
#include "iw/rational.hpp"
#include "iw/space.hpp"
#include "iw/submeasure.hpp"

namespace iw {

struct EmptySequence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoAvoidingElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UniverseExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point map between coded spaces, read against the ideals as: a set A of
// target points is pulled back to {c : apply(c) in A}. `domain` (null: all
// valid source codes) restricts the map; preimages are always taken inside
// the domain. `pull_back` optionally produces an exact description of the
// preimage of a described set; when it declines, callers fall back to
// materializing the preimage over an enumerated prefix.
struct WitnessMap {
  SpacePtr source;
  SpacePtr target;
  std::string rule;
  std::function<uint64_t(uint64_t)> apply;
  std::function<bool(uint64_t)> domain;
  std::function<std::optional<Descr>(const Descr&)> pull_back;
  Trool finite_to_one = Trool::Maybe;
};

// every domain code among the first `prefix` maps to a valid target code
bool map_total_on_prefix(const WitnessMap& f, uint64_t prefix);
// largest fiber size observable within the first `prefix` source codes
uint64_t max_fiber_on_prefix(const WitnessMap& f, uint64_t prefix);

// stock maps
WitnessMap proj_first(SpacePtr prod);    // (i,j) -> i, exact rectangles back
WitnessMap proj_second(SpacePtr prod);   // (i,j) -> j
WitnessMap constant_map(SpacePtr source, SpacePtr target, uint64_t value);
WitnessMap enumerator_map();             // omega -> binary words, code-identical

// Clopen half-measure sets to binary words: split the member into maximal
// cylinders, keep the first-difference-least word, drop its leading bit.
uint64_t solecki_to_ib(int l, uint64_t code);
WitnessMap solecki_ib_map(int l);

// A half-measure clopen witness avoiding the sampled points while still
// projecting onto a chosen antichain element. Points are finite words read
// as the branch extending them by zeros.
struct ClopenWitness {
  int resolution = 0;       // cell length of the returned member
  uint64_t code = 0;        // code within ClopenHalf(resolution)
  uint64_t picked = 0;      // index of the antichain element used
};
ClopenWitness solecki_counterexample(
    const std::vector<std::vector<uint8_t>>& antichain,
    const std::vector<std::vector<uint8_t>>& points);

// Partition of the functions n -> 2n by the least value missing from the
// range; class i sits inside the i-th generator and outside the earlier ones.
uint64_t mazur_class(uint64_t n, uint64_t local);
std::vector<std::vector<uint64_t>> mazur_partition(uint64_t n);
WitnessMap mazur_edfin_map();            // function part (n, g) -> (n, class)

// Finite family A_0..A_{N-1} over [0, universe) whose Boolean cells along
// word antichains keep at least `slack` points on both sides of every later
// set, with chain-indexed sets kept disjoint. The companion map sends the
// triangle point (i, n) with i in A_n to the n-th binary word.
struct EdfinFamily {
  std::vector<std::vector<uint64_t>> sets;
  uint64_t universe = 0;
  uint64_t slack = 2;
  WitnessMap map;
};
EdfinFamily ib_to_edfin_family(uint64_t count, uint64_t universe, uint64_t slack = 2);

// One checked test of "A in the image ideal iff its preimage is in the
// source ideal". `exact` marks preimage descriptions that denote the true
// preimage (closed form, or a finite source fully enumerated); only exact
// pairs with proofs on both sides can conflict. Inexact or budget-limited
// evidence pointing in opposite directions is flagged, never failed.
struct ReductionPair {
  Descr test;
  Descr preimage;
  Verdict image_verdict;
  Verdict preimage_verdict;
  bool exact = false;
  bool conflict = false;
  bool flagged = false;
  std::string note;
};
struct ReductionReport {
  std::vector<ReductionPair> pairs;
  bool consistent = true;
  std::vector<std::string> failures;
};
ReductionReport verify_rk(const WitnessMap& f, const IdealOracle& image_ideal,
                          const IdealOracle& source_ideal,
                          const std::vector<Descr>& tests, const Budget& b);

// Level-by-level weight minimization against a map into binary words: on
// level k the candidates are the words of k zeros followed by n >= 1 ones,
// and the chosen one minimizes the summed weight of its preimage within the
// prefix. Levels whose minimum still reaches 2^-k are flagged.
struct DiagonalReport {
  std::vector<uint64_t> chosen_words;   // word codes, one per level
  std::vector<uint64_t> chosen_ones;    // the n picked on each level
  std::vector<Rat> level_weights;
  Rat preimage_weight = 0;              // sum over levels
  std::vector<uint64_t> flagged_levels;
};
DiagonalReport summable_diagonalize(const WeightRule& weights, const WitnessMap& f,
                                    uint64_t prefix, uint64_t levels = 0);

}  // namespace iw
