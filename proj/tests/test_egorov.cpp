#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iw/egorov.hpp"

using namespace iw;

namespace {

bool prefix_of(const std::vector<uint8_t>& s, const std::vector<uint8_t>& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

uint64_t node(const GrowthVector& c, std::vector<uint64_t> w) {
  return word_code(c, w);
}

// a witness with one fixed branching and a simple explicit submeasure
TreeWitness toy_witness(uint64_t width, uint64_t depth,
                        std::function<ExtRat(const std::vector<uint64_t>&)> eval,
                        std::vector<Rat> atoms_level0) {
  TreeWitness w;
  w.c = constant_growth(width);
  w.depth = depth;
  w.phi.space = tree_seq(w.c);
  w.phi.label = "toy";
  w.phi.eval = std::move(eval);
  for (uint64_t n = 0; n < depth; ++n) {
    std::vector<Rat> atoms = n == 0 ? atoms_level0
                                    : std::vector<Rat>(width, rat(static_cast<long>(n + 1)) / rat(static_cast<long>(width)));
    for (uint64_t t : level_nodes(w.c, n)) w.node_measures.emplace(t, atoms);
  }
  return w;
}

}  // namespace

TEST_CASE("interval sets normalize, parse and measure exactly") {
  IntervalSet s = make_intervals({{rat(1, 2), rat(3, 4)},
                                  {rat(0), rat(1, 4)},
                                  {rat(1, 4), rat(1, 2)},
                                  {rat(7, 8), rat(7, 8)}});
  REQUIRE(s.parts.size() == 1);  // touching pieces merge, empty piece drops
  CHECK(s.parts[0] == std::pair<Rat, Rat>{rat(0), rat(3, 4)});
  CHECK(measure_of(s) == rat(3, 4));

  IntervalSet t = parse_intervals("[0, 1/4) u [1/2, 3/4)");
  CHECK(t.parts.size() == 2);
  CHECK(measure_of(t) == rat(1, 2));
  CHECK(parse_intervals("[0,1/4) \xE2\x88\xAA [1/2,3/4)") == t);
  CHECK(parse_intervals("[1/2,3/4), [0,1/4)") == t);
  CHECK(parse_intervals(print_intervals(t)) == t);
  CHECK(parse_intervals("  ").parts.empty());
  CHECK(print_intervals(IntervalSet{}) == "{}");

  CHECK(clip(t, rat(1, 8), rat(5, 8)) ==
        make_intervals({{rat(1, 8), rat(1, 4)}, {rat(1, 2), rat(5, 8)}}));
  CHECK(clip(t, rat(1, 4), rat(1, 2)).parts.empty());  // half-open boundaries

  CHECK_THROWS_AS(parse_intervals("[0 1/4)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_intervals("(0, 1/4)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_intervals("[0, 1/4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_intervals("[3/4, 5/4)"), std::invalid_argument);
  CHECK_THROWS_AS(make_intervals({{rat(-1, 2), rat(1, 4)}}),
                  std::invalid_argument);
}

TEST_CASE("comb labels keep every level pairwise incomparable") {
  GrowthVector c = affine_growth(1, 2);
  CHECK(level_nodes(c, 0) == std::vector<uint64_t>{0});
  CHECK(level_nodes(c, 1).size() == 2);
  CHECK(level_nodes(c, 3).size() == 24);

  CHECK(ib_node_word(c, {0}) == std::vector<uint8_t>{0});
  CHECK(ib_node_word(c, {1}) == std::vector<uint8_t>{1});
  CHECK(ib_node_word(c, {0, 0}) == std::vector<uint8_t>{0, 0});
  CHECK(ib_node_word(c, {0, 1}) == std::vector<uint8_t>{0, 1, 0});
  CHECK(ib_node_word(c, {0, 2}) == std::vector<uint8_t>{0, 1, 1});

  for (uint64_t level = 1; level <= 4; ++level) {
    auto codes = level_nodes(c, level);
    std::vector<std::vector<uint8_t>> words;
    for (uint64_t t : codes) words.push_back(ib_node_word(c, word_of_code(c, t)));
    for (size_t i = 0; i < words.size(); ++i)
      for (size_t j = i + 1; j < words.size(); ++j) {
        CHECK_FALSE(prefix_of(words[i], words[j]));
        CHECK_FALSE(prefix_of(words[j], words[i]));
      }
  }
}

TEST_CASE("the bundled witness carries uniform masses and passes its audit") {
  TreeWitness w1 = ib_tree_witness(1);
  REQUIRE(w1.node_measures.count(0) == 1);
  CHECK(w1.node_measures.at(0) == std::vector<Rat>{rat(1, 2), rat(1, 2)});
  CHECK(w1.phi.eval(level_nodes(w1.c, 1)) == ExtRat{rat(2)});  // phi(G) = 2 > 1

  TreeWitness w2 = ib_tree_witness(2);
  for (uint64_t t : level_nodes(w2.c, 1)) {
    REQUIRE(w2.node_measures.count(t) == 1);
    CHECK(w2.node_measures.at(t) == std::vector<Rat>(3, rat(2, 3)));
  }

  WitnessAudit audit = check_witness(ib_tree_witness(4));
  CHECK(audit.ok);
  CHECK(audit.failures.empty());
  CHECK(audit.nodes_checked == 1 + 2 + 6 + 24);
  CHECK(audit.domination_checks > 800);  // exhaustive subsets at every node

  CHECK_THROWS_AS(ib_tree_witness(0), IndexZero);
  CHECK_THROWS_AS(ib_tree_witness(9), GroundTooLarge);
}

TEST_CASE("the audit catches short masses and domination breaches") {
  // half-counting submeasure: phi(B) = |B|/2, so a full point mass breaks it
  auto half_count = [](const std::vector<uint64_t>& codes) {
    return ExtRat{Rat(static_cast<unsigned long>(codes.size())) / 2};
  };
  TreeWitness bad = toy_witness(2, 1, half_count, {rat(1), rat(0)});
  WitnessAudit audit = check_witness(bad);
  CHECK_FALSE(audit.ok);
  REQUIRE(audit.failures.size() == 2);
  CHECK(audit.failures[0].find("phi(children)") != std::string::npos);
  CHECK(audit.failures[1].find("mu exceeds phi") != std::string::npos);

  TreeWitness short_mass = toy_witness(2, 1, half_count, {rat(1, 2), rat(1, 3)});
  CHECK_FALSE(check_witness(short_mass).ok);
  CHECK_THROWS_AS(build_intervals(short_mass), MeasureMismatch);

  TreeWitness missing = ib_tree_witness(2);
  missing.node_measures.erase(0);
  CHECK_FALSE(check_witness(missing).ok);
  CHECK_THROWS_AS(build_intervals(missing), MeasureMismatch);
}

TEST_CASE("intervals split by mass and tile every level") {
  GrowthVector c = affine_growth(1, 2);
  IntervalTree t1 = build_intervals(ib_tree_witness(1));
  CHECK(t1.span.at(0) == std::pair<Rat, Rat>{rat(0), rat(1)});
  CHECK(t1.span.at(node(c, {0})) == std::pair<Rat, Rat>{rat(0), rat(1, 2)});
  CHECK(t1.span.at(node(c, {1})) == std::pair<Rat, Rat>{rat(1, 2), rat(1)});

  IntervalTree t2 = build_intervals(ib_tree_witness(2));
  CHECK(t2.span.at(node(c, {0, 0})) == std::pair<Rat, Rat>{rat(0), rat(1, 6)});
  for (uint64_t code : level_nodes(c, 2)) {
    auto [lo, hi] = t2.span.at(code);
    CHECK(hi - lo == rat(1, 6));  // 1/2 * (2/3) / 2
  }

  TreeWitness w = ib_tree_witness(4);
  IntervalTree t = build_intervals(w);
  for (uint64_t level = 0; level <= 4; ++level) {
    Rat total = 0;
    for (uint64_t code : level_nodes(c, level)) {
      auto [lo, hi] = t.span.at(code);
      CHECK(lo <= hi);
      total += hi - lo;
    }
    CHECK(total == rat(1));
  }
  // length formula and tiling audit against the parent
  for (uint64_t level = 0; level < 4; ++level) {
    Rat want = rat(static_cast<long>(level + 1));
    for (uint64_t parent : level_nodes(c, level)) {
      auto [plo, phi_] = t.span.at(parent);
      const auto& atoms = w.node_measures.at(parent);
      auto word = word_of_code(c, parent);
      Rat cursor = plo;
      for (uint64_t j = 0; j < c.at(level); ++j) {
        word.push_back(j);
        auto [lo, hi] = t.span.at(word_code(c, word));
        word.pop_back();
        CHECK(lo == cursor);
        CHECK(hi - lo == (phi_ - plo) * atoms[j] / want);
        cursor = hi;
      }
      CHECK(cursor == phi_);
    }
  }

  // a single-child witness reproduces the parent interval at every level
  auto count = [](const std::vector<uint64_t>& codes) {
    return ExtRat{Rat(static_cast<unsigned long>(codes.size()))};
  };
  TreeWitness degen = toy_witness(1, 3, count, {rat(1)});
  IntervalTree dt = build_intervals(degen);
  for (const auto& [code, span] : dt.span)
    CHECK(span == std::pair<Rat, Rat>{rat(0), rat(1)});
}

TEST_CASE("hit sets follow positive-measure overlap") {
  GrowthVector c = affine_growth(1, 2);
  IntervalTree t = build_intervals(ib_tree_witness(2));

  CHECK(hit_set(t, parse_intervals("[0, 1)"), 2).size() == 1 + 2 + 6);
  CHECK(hit_set(t, IntervalSet{}, 2).empty());

  auto hits = hit_set(t, parse_intervals("[0, 1/6)"), 2);
  CHECK(hits == std::vector<uint64_t>{0, node(c, {0}), node(c, {0, 0})});

  // endpoint-only contact does not count
  auto grazing = hit_set(t, parse_intervals("[1/2, 7/12)"), 1);
  CHECK(grazing == std::vector<uint64_t>{0, node(c, {1})});

  CHECK_THROWS_AS(hit_set(t, parse_intervals("[0, 1)"), 3),
                  std::invalid_argument);
}

TEST_CASE("one point threads a single chain with antichain value one") {
  TreeWitness w = ib_tree_witness(4);
  IntervalTree t = build_intervals(w);
  std::mt19937_64 rng(11);
  std::vector<Rat> points = {rat(0), rat(1, 2), rat(1, 3), rat(119, 120)};
  for (int i = 0; i < 40; ++i)
    points.push_back(rat(static_cast<long>(rng() % 960), 960));
  for (const Rat& x : points) {
    auto chain = chain_through(t, x);
    REQUIRE(chain.size() == 4);
    for (uint64_t code : chain) {
      auto [lo, hi] = t.span.at(code);
      CHECK(lo <= x);
      CHECK(x < hi);
    }
    // the hits along one branch stay a single generator: phi value 1
    CHECK(w.phi.eval(chain) == ExtRat{rat(1)});
    std::vector<uint64_t> with_root = {0};
    with_root.insert(with_root.end(), chain.begin(), chain.end());
    CHECK(w.phi.eval(with_root) == ExtRat{rat(1)});
  }
  CHECK_THROWS_AS(chain_through(t, rat(1)), std::invalid_argument);
}

TEST_CASE("frozen violation replay at depth two") {
  GrowthVector c = affine_growth(1, 2);
  TreeWitness w = ib_tree_witness(2);
  IntervalTree t = build_intervals(w);
  ViolationReport rep = violation_check(t, w, parse_intervals("[0, 1/4)"), 1);
  CHECK(rep.alpha == rat(1, 4));
  CHECK(rep.best_node == node(c, {0}));
  CHECK(rep.ratio == rat(1, 2));
  CHECK(rep.lower_bound == rat(1));
  CHECK(rep.hit_children ==
        std::vector<uint64_t>{node(c, {0, 0}), node(c, {0, 1})});
  CHECK(rep.mu_hits == rat(4, 3));
  CHECK(rep.phi_hits == ExtRat{rat(2)});
}

TEST_CASE("full-set and single-interval violations come out exact") {
  TreeWitness w = ib_tree_witness(4);
  IntervalTree t = build_intervals(w);
  IntervalSet full = parse_intervals("[0, 1)");
  for (uint64_t k = 0; k < 4; ++k) {
    ViolationReport rep = violation_check(t, w, full, k);
    CHECK(rep.alpha == rat(1));
    CHECK(rep.ratio == rat(1));
    CHECK(rep.lower_bound == rat(static_cast<long>(k + 1)));
    CHECK(rep.mu_hits == rat(static_cast<long>(k + 1)));
    CHECK(ExtRat{rep.lower_bound} <= rep.phi_hits);
  }

  // M = one level-2 interval: its parent sees the singleton hit exactly
  GrowthVector c = affine_growth(1, 2);
  auto [lo, hi] = t.span.at(node(c, {0, 1}));
  IntervalSet m = make_intervals({{lo, hi}});
  ViolationReport rep = violation_check(t, w, m, 1);
  CHECK(rep.best_node == node(c, {0}));
  CHECK(rep.ratio == rat(1, 3));  // (1/6) / (1/2)
  CHECK(rep.hit_children == std::vector<uint64_t>{node(c, {0, 1})});
  CHECK(rep.mu_hits == rep.lower_bound);  // 2 * 1/3 = 2/3, one atom
  CHECK(rep.phi_hits == ExtRat{rat(1)});

  ViolationReport self = violation_check(t, w, m, 2);
  CHECK(self.best_node == node(c, {0, 1}));
  CHECK(self.ratio == rat(1));
  CHECK(self.lower_bound == rat(3));

  CHECK_THROWS_AS(violation_check(t, w, IntervalSet{}, 1), ZeroMeasureM);
  CHECK_THROWS_AS(violation_check(t, w, full, 4), std::invalid_argument);
  IntervalTree shallow = build_intervals(ib_tree_witness(2));
  CHECK_THROWS_AS(violation_check(shallow, w, full, 1), std::invalid_argument);
}

TEST_CASE("a thousand random sets never beat the pigeonhole or the growth bound") {
  TreeWitness w = ib_tree_witness(3);
  IntervalTree t = build_intervals(w);
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    long den = 1 << (3 + rng() % 5);
    std::vector<long> cuts(4);
    for (auto& v : cuts) v = static_cast<long>(rng() % (den + 1));
    std::sort(cuts.begin(), cuts.end());
    IntervalSet m = make_intervals({{rat(cuts[0], den), rat(cuts[1], den)},
                                    {rat(cuts[2], den), rat(cuts[3], den)}});
    Rat alpha = measure_of(m);
    if (alpha == 0) continue;
    ++checked;
    for (uint64_t k = 0; k < 3; ++k) {
      ViolationReport rep = violation_check(t, w, m, k);
      CHECK(alpha <= rep.ratio);
      CHECK(rep.lower_bound <= rep.mu_hits);
      CHECK(ExtRat{rep.mu_hits} <= rep.phi_hits);
    }
    for (uint64_t k = 0; k <= 3; ++k) {
      // the submeasure of the level-k hit set defeats every integer below
      // (k+1) * alpha
      long m_floor = strict_floor(rat(static_cast<long>(k + 1)) * alpha);
      if (m_floor < 0) continue;
      ExtRat phi = w.phi.eval(hit_set(t, m, k));
      CHECK(ExtRat{rat(m_floor)} < phi);
    }
  }
  CHECK(checked > 900);
}
