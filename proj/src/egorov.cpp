#include "iw/egorov.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace iw {

std::vector<uint64_t> level_nodes(const GrowthVector& c, uint64_t level) {
  for (uint64_t i = 0; i < level; ++i)
    if (c.at(i) == 0) return {};  // nothing survives a barren level
  std::vector<uint64_t> w(level, 0), out;
  while (true) {
    out.push_back(word_code(c, w));
    bool carried = true;
    for (uint64_t i = level; carried && i-- > 0;) {
      carried = ++w[i] == c.at(i);
      if (carried) w[i] = 0;
    }
    if (carried) return out;
  }
}

std::vector<uint8_t> ib_node_word(const GrowthVector& c,
                                  const std::vector<uint64_t>& tree_word) {
  std::vector<uint8_t> w;
  for (size_t n = 0; n < tree_word.size(); ++n) {
    for (uint64_t i = 0; i < tree_word[n]; ++i) w.push_back(1);
    if (tree_word[n] + 1 < c.at(n)) w.push_back(0);
  }
  return w;
}

namespace {

Submeasure comb_pulled_antichain(const GrowthVector& c) {
  Submeasure s;
  s.space = tree_seq(c);
  s.label = "ib along the comb labels";
  s.eval = [c, base = antichain_submeasure().eval](
               const std::vector<uint64_t>& codes) {
    std::vector<uint64_t> img;
    img.reserve(codes.size());
    for (uint64_t t : codes)
      img.push_back(binseq_code(ib_node_word(c, word_of_code(c, t))));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return base(img);
  };
  return s;
}

std::vector<uint64_t> child_codes(const GrowthVector& c, uint64_t node,
                                  uint64_t level) {
  auto word = word_of_code(c, node);
  std::vector<uint64_t> kids;
  kids.reserve(c.at(level));
  for (uint64_t j = 0; j < c.at(level); ++j) {
    word.push_back(j);
    kids.push_back(word_code(c, word));
    word.pop_back();
  }
  return kids;  // increasing: siblings are coded lexicographically
}

}  // namespace

TreeWitness ib_tree_witness(uint64_t depth) {
  if (depth == 0) throw IndexZero("tree witnesses start at depth 1");
  if (depth > 8) throw GroundTooLarge("the comb tree has (depth+1)! leaves");
  TreeWitness w;
  w.c = affine_growth(1, 2);  // n + 2 children at level n
  w.depth = depth;
  w.phi = comb_pulled_antichain(w.c);
  for (uint64_t n = 0; n < depth; ++n) {
    std::vector<Rat> atoms(
        w.c.at(n),
        rat(static_cast<long>(n + 1), static_cast<long>(n + 2)));
    for (uint64_t t : level_nodes(w.c, n)) w.node_measures.emplace(t, atoms);
  }
  return w;
}

WitnessAudit check_witness(const TreeWitness& w, uint64_t seed) {
  WitnessAudit audit;
  auto fail = [&](std::string msg) {
    audit.ok = false;
    audit.failures.push_back(std::move(msg));
  };
  for (uint64_t n = 0; n < w.depth; ++n) {
    uint64_t width = w.c.at(n);
    Rat want = rat(static_cast<long>(n + 1));
    for (uint64_t t : level_nodes(w.c, n)) {
      ++audit.nodes_checked;
      std::string at = "node " + std::to_string(t) + " (level " +
                       std::to_string(n) + ")";
      auto it = w.node_measures.find(t);
      if (it == w.node_measures.end()) {
        fail(at + " has no measure");
        continue;
      }
      const auto& atoms = it->second;
      if (atoms.size() != width) {
        fail(at + " measure arity " + std::to_string(atoms.size()) +
             ", child count " + std::to_string(width));
        continue;
      }
      Rat total = 0;
      for (const auto& a : atoms) {
        if (a < 0) fail(at + " carries a negative mass");
        total += a;
      }
      if (total != want)
        fail(at + " mass total " + rat_str(total) + ", expected " +
             rat_str(want));

      auto kids = child_codes(w.c, t, n);
      if (!(ExtRat{want} < w.phi.eval(kids)))
        fail(at + ": phi(children) does not exceed " + rat_str(want));

      auto dominated = [&](uint64_t mask) {
        std::vector<uint64_t> sub;
        Rat mass = 0;
        for (uint64_t j = 0; j < width; ++j)
          if (mask >> j & 1) {
            sub.push_back(kids[j]);
            mass += atoms[j];
          }
        ++audit.domination_checks;
        return !(w.phi.eval(sub) < ExtRat{mass});
      };
      if (width <= 12) {
        for (uint64_t mask = 1; mask < uint64_t{1} << width; ++mask)
          if (!dominated(mask)) {
            fail(at + ": mu exceeds phi on child subset " +
                 std::to_string(mask));
            break;
          }
      } else {
        std::mt19937_64 rng(seed ^ t);
        bool bad = false;
        for (uint64_t j = 0; j < width && !bad; ++j)
          bad = !dominated(uint64_t{1} << j);
        for (int trial = 0; trial < 64 && !bad && width < 64; ++trial)
          bad = !dominated(rng() & ((uint64_t{1} << width) - 1));
        if (bad) fail(at + ": mu exceeds phi on a sampled child subset");
      }
    }
  }
  return audit;
}

IntervalTree build_intervals(const TreeWitness& w) {
  IntervalTree t;
  t.c = w.c;
  t.depth = w.depth;
  t.span.emplace(0, std::pair<Rat, Rat>{rat(0), rat(1)});
  uint64_t nodes = 1;
  for (uint64_t n = 0; n < w.depth; ++n) {
    uint64_t width = w.c.at(n);
    auto level = level_nodes(w.c, n);
    nodes += level.size() * width;
    if (nodes > 500000)
      throw GroundTooLarge("interval tree beyond 5*10^5 nodes");
    Rat want = rat(static_cast<long>(n + 1));
    for (uint64_t node : level) {
      auto it = w.node_measures.find(node);
      if (it == w.node_measures.end())
        throw MeasureMismatch("no measure at node " + std::to_string(node));
      const auto& atoms = it->second;
      if (atoms.size() != width)
        throw MeasureMismatch("measure arity mismatch at node " +
                              std::to_string(node));
      Rat total = 0;
      for (const auto& a : atoms) {
        if (a < 0)
          throw MeasureMismatch("negative mass at node " + std::to_string(node));
        total += a;
      }
      if (total != want)
        throw MeasureMismatch("mass total " + rat_str(total) + " at level " +
                              std::to_string(n) + ", expected " + rat_str(want));
      auto [lo, hi] = t.span.at(node);
      Rat len = hi - lo, cur = lo;
      auto kids = child_codes(w.c, node, n);
      for (uint64_t j = 0; j < width; ++j) {
        Rat piece = len * atoms[j] / want;
        t.span.emplace(kids[j], std::pair<Rat, Rat>{cur, cur + piece});
        cur += piece;  // lands exactly on hi after the last child
      }
    }
  }
  return t;
}

std::vector<uint64_t> hit_set(const IntervalTree& tree, const IntervalSet& m,
                              uint64_t level) {
  if (level > tree.depth)
    throw std::invalid_argument("level beyond the materialized depth");
  std::vector<uint64_t> out;
  for (uint64_t k = 0; k <= level; ++k)
    for (uint64_t t : level_nodes(tree.c, k)) {
      const auto& [lo, hi] = tree.span.at(t);
      if (measure_of(clip(m, lo, hi)) > 0) out.push_back(t);
    }
  return out;
}

std::vector<uint64_t> chain_through(const IntervalTree& tree, const Rat& x) {
  if (x < 0 || !(x < 1)) throw std::invalid_argument("points live in [0,1)");
  std::vector<uint64_t> out, word;
  for (uint64_t n = 0; n < tree.depth; ++n) {
    bool found = false;
    for (uint64_t j = 0; j < tree.c.at(n) && !found; ++j) {
      word.push_back(j);
      const auto& [lo, hi] = tree.span.at(word_code(tree.c, word));
      if (lo <= x && x < hi) {
        out.push_back(word_code(tree.c, word));
        found = true;
      } else {
        word.pop_back();
      }
    }
    if (!found) break;  // only reachable past a zero-length seam
  }
  return out;
}

ViolationReport violation_check(const IntervalTree& tree, const TreeWitness& w,
                                const IntervalSet& m, uint64_t level) {
  if (!(tree.c == w.c) || tree.depth != w.depth)
    throw std::invalid_argument("interval tree was built from another witness");
  Rat alpha = measure_of(m);
  if (alpha == 0)
    throw ZeroMeasureM("the restriction set must have positive measure");
  if (level + 1 > tree.depth)
    throw std::invalid_argument("the check reads level " +
                                std::to_string(level + 1) +
                                " children; build a deeper tree");

  ViolationReport rep;
  rep.alpha = alpha;
  rep.level = level;
  bool have = false;
  for (uint64_t t : level_nodes(tree.c, level)) {
    const auto& [lo, hi] = tree.span.at(t);
    if (!(lo < hi)) continue;
    Rat ratio = measure_of(clip(m, lo, hi)) / (hi - lo);
    if (!have || rep.ratio < ratio) {
      have = true;
      rep.ratio = ratio;
      rep.best_node = t;
    }
  }
  if (!have)
    throw std::logic_error("level intervals tile [0,1); a node must qualify");
  rep.lower_bound = rat(static_cast<long>(level + 1)) * rep.ratio;

  const auto& atoms = w.node_measures.at(rep.best_node);
  auto kids = child_codes(tree.c, rep.best_node, level);
  rep.mu_hits = 0;
  for (uint64_t j = 0; j < kids.size(); ++j) {
    const auto& [lo, hi] = tree.span.at(kids[j]);
    if (measure_of(clip(m, lo, hi)) > 0) {
      rep.hit_children.push_back(kids[j]);
      rep.mu_hits += atoms[j];
    }
  }
  rep.phi_hits = w.phi.eval(rep.hit_children);
  return rep;
}

}  // namespace iw
