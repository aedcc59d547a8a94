#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iw/intervals.hpp"
#include "iw/rational.hpp"
#include "iw/space.hpp"
#include "iw/submeasure.hpp"

namespace iw {

struct MeasureMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroMeasureM : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finitely branching tree of depth `depth` whose level-n nodes carry c(n)
// children, a submeasure phi over the node codes, and one measure per
// internal node: node_measures[t][j] is the mass of child j, total n+1 at
// level n. The bundled witness uses pairwise incomparable binary words as
// node labels and the maximal-word submeasure, so domination is the identity
// |B|(n+1)/(n+2) <= |B|.
struct TreeWitness {
  GrowthVector c;
  uint64_t depth = 0;
  Submeasure phi;  // on tree_seq(c)
  std::map<uint64_t, std::vector<Rat>> node_measures;
};

// Codes of all level-`level` nodes, increasing.
std::vector<uint64_t> level_nodes(const GrowthVector& c, uint64_t level);

TreeWitness ib_tree_witness(uint64_t depth);
// The binary word labeling a tree node in the bundled witness: child j of a
// node labeled w gets w followed by j ones and, except for the last child, a
// closing zero. Siblings are pairwise incomparable by construction.
std::vector<uint8_t> ib_node_word(const GrowthVector& c,
                                  const std::vector<uint64_t>& tree_word);

struct WitnessAudit {
  bool ok = true;
  uint64_t nodes_checked = 0;
  uint64_t domination_checks = 0;
  std::vector<std::string> failures;
};
// Validates the witness invariants: per internal node, mass total n+1,
// phi(children) > n+1, and mu <= phi on child subsets (exhaustive up to 12
// children, seeded samples beyond).
WitnessAudit check_witness(const TreeWitness& w, uint64_t seed = 1);

// Half-open interval per node code; the root is [0,1) and the children of a
// level-n node tile their parent with lengths parent * mass / (n+1).
struct IntervalTree {
  GrowthVector c;
  uint64_t depth = 0;
  std::map<uint64_t, std::pair<Rat, Rat>> span;
};

IntervalTree build_intervals(const TreeWitness& w);

// Node codes at levels 0..level whose interval meets M with positive measure.
std::vector<uint64_t> hit_set(const IntervalTree& tree, const IntervalSet& m,
                              uint64_t level);

// The unique node per level 1..depth whose interval contains x.
std::vector<uint64_t> chain_through(const IntervalTree& tree, const Rat& x);

struct ViolationReport {
  Rat alpha;            // lambda(M)
  uint64_t level = 0;   // the k the check ran at
  uint64_t best_node = 0;
  Rat ratio;            // lambda(M cap I) / lambda(I) at the best node
  Rat lower_bound;      // (k+1) * ratio, >= (k+1) * alpha
  std::vector<uint64_t> hit_children;  // level-(k+1) codes under best_node
  Rat mu_hits;          // total child mass over hit_children
  ExtRat phi_hits;      // phi(hit_children)
};

// Certifies the uniform-convergence violation at one level: picks the
// level-k node where M is densest, collects its children meeting M, and
// reports the exact chain phi(hits) >= mu(hits) = (k+1)/lambda(I) * sum of
// child lengths >= (k+1) * ratio >= (k+1) * alpha.
ViolationReport violation_check(const IntervalTree& tree, const TreeWitness& w,
                                const IntervalSet& m, uint64_t level);

}  // namespace iw
