#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <numeric>

#include "iw/analysis.hpp"
#include "iw/ideal.hpp"
#include "iw/reduction.hpp"

using namespace iw;

namespace {

using VK = VerdictKind;

uint64_t code_of_cells(int l, std::initializer_list<uint64_t> cells) {
  uint64_t mask = 0;
  for (auto c : cells) mask |= uint64_t{1} << c;
  return clopen_code(l, mask);
}

bool prefix_of(const std::vector<uint8_t>& s, const std::vector<uint8_t>& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

// whether the cylinder of `word` lies inside the member with the given mask
bool cylinder_inside(int l, uint64_t mask, const std::vector<uint8_t>& word) {
  if (word.size() > static_cast<size_t>(l)) return false;
  uint64_t base = cell_value(word) << (l - word.size());
  uint64_t span = uint64_t{1} << (l - word.size());
  for (uint64_t v = base; v < base + span; ++v)
    if (!(mask >> v & 1)) return false;
  return true;
}

}  // namespace

TEST_CASE("clopen members map to words through their least cylinder") {
  // all six half-measure members at resolution 2
  CHECK(solecki_to_ib(2, code_of_cells(2, {0, 1})) == binseq_code({}));
  CHECK(solecki_to_ib(2, code_of_cells(2, {0, 2})) == binseq_code({0}));
  CHECK(solecki_to_ib(2, code_of_cells(2, {0, 3})) == binseq_code({0}));
  CHECK(solecki_to_ib(2, code_of_cells(2, {1, 2})) == binseq_code({1}));
  CHECK(solecki_to_ib(2, code_of_cells(2, {1, 3})) == binseq_code({1}));
  CHECK(solecki_to_ib(2, code_of_cells(2, {2, 3})) == binseq_code({}));

  CHECK(solecki_to_ib(1, code_of_cells(1, {1})) == binseq_code({}));
  CHECK_THROWS_AS(solecki_to_ib(0, 0), IndexZero);
}

TEST_CASE("the least cylinder starts with zero except for the top half") {
  for (int l = 1; l <= 3; ++l) {
    uint64_t top_half = 0;
    for (uint64_t v = uint64_t{1} << (l - 1); v < uint64_t{1} << l; ++v)
      top_half |= uint64_t{1} << v;
    uint64_t exceptions = 0;
    for (uint64_t code = 0; code < clopen_member_count(l); ++code) {
      std::vector<uint8_t> zero_side{0};
      for (auto b : binseq_word(solecki_to_ib(l, code))) zero_side.push_back(b);
      if (cylinder_inside(l, clopen_mask(l, code), zero_side)) continue;
      ++exceptions;
      CHECK(clopen_mask(l, code) == top_half);
    }
    CHECK(exceptions == 1);
  }
}

TEST_CASE("half-measure witnesses dodge the sampled branches") {
  // one point on the zero side: the surviving word is (1)
  ClopenWitness w = solecki_counterexample({{0}, {1}}, {{0, 0}});
  CHECK(w.picked == 1);
  CHECK(w.resolution == 3);
  uint64_t mask = clopen_mask(w.resolution, w.code);
  CHECK(std::popcount(mask) == 4);
  CHECK_FALSE(bool(mask >> cell_value({0, 0, 0}) & 1));  // the sampled branch stays out
  CHECK(solecki_to_ib(w.resolution, w.code) == binseq_code({1}));

  // no points at all: deterministic padding on the one side
  ClopenWitness v = solecki_counterexample({{0}}, {});
  CHECK(v.resolution == 3);
  CHECK(clopen_mask(v.resolution, v.code) == 0x33u);

  // two points on the one side knock out two padding cells
  ClopenWitness u = solecki_counterexample({{0}, {1, 0}, {1, 1}}, {{1, 0}, {1, 1}});
  CHECK(u.picked == 2);
  CHECK(u.resolution == 4);
  uint64_t um = clopen_mask(u.resolution, u.code);
  CHECK(std::popcount(um) == 8);
  CHECK_FALSE(bool(um >> cell_value({1, 0, 0, 0}) & 1));
  CHECK_FALSE(bool(um >> cell_value({1, 1, 0, 0}) & 1));
  CHECK(solecki_to_ib(u.resolution, u.code) == binseq_code({1, 1}));

  CHECK_THROWS_AS(solecki_counterexample({{0}}, {{0}}), NoAvoidingElement);
  CHECK_THROWS_AS(solecki_counterexample({{0}, {0, 1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(solecki_counterexample({}, {}), std::invalid_argument);
}

TEST_CASE("least-missing-value classes partition every function part") {
  CHECK_THROWS_AS(mazur_partition(0), IndexZero);
  CHECK(mazur_class(1, 0) == 1);  // the function (0) misses 1 first
  CHECK(mazur_class(1, 1) == 0);

  std::vector<std::vector<uint64_t>> expected_sizes = {
      {1, 1}, {9, 5, 2}, {125, 61, 24, 6}, {2401, 1105, 434, 132, 24}};
  for (uint64_t n = 1; n <= 4; ++n) {
    auto classes = mazur_partition(n);
    REQUIRE(classes.size() == n + 1);
    std::vector<uint64_t> sizes, all;
    for (auto& c : classes) {
      sizes.push_back(c.size());
      all.insert(all.end(), c.begin(), c.end());
    }
    CHECK(sizes == expected_sizes[n - 1]);
    std::sort(all.begin(), all.end());
    std::vector<uint64_t> iota(mazur_part_card(n));
    std::iota(iota.begin(), iota.end(), 0);
    CHECK(all == iota);  // disjoint and covering
  }

  // class 0 of part 2: exactly the functions avoiding the value 0
  auto part2 = mazur_partition(2);
  for (auto local : part2[0])
    for (auto v : mazur_fn(2, local)) CHECK(v != 0);
}

TEST_CASE("the covering number of a union of classes counts the classes") {
  for (uint64_t n = 1; n <= 4; ++n) {
    auto classes = mazur_partition(n);
    for (uint64_t f = 0; f < uint64_t{1} << (n + 1); ++f) {
      std::vector<uint64_t> locals;
      for (uint64_t i = 0; i <= n; ++i)
        if (f >> i & 1)
          locals.insert(locals.end(), classes[i].begin(), classes[i].end());
      std::sort(locals.begin(), locals.end());
      CHECK(mazur_phi(n, locals) == ExtRat{rat(std::popcount(f))});
    }
  }
}

TEST_CASE("stock maps pull descriptions back exactly") {
  SpacePtr grid = product(omega(), omega());
  WitnessMap p0 = proj_first(grid);
  auto pre = p0.pull_back(d_finite(omega(), {3}));
  REQUIRE(pre.has_value());
  CHECK(member(*pre, pair_code(3, 9)));
  CHECK_FALSE(member(*pre, pair_code(4, 0)));
  CHECK(map_total_on_prefix(p0, 200));
  CHECK(max_fiber_on_prefix(p0, 200) > 1);

  WitnessMap c7 = constant_map(omega(), omega(), 7);
  CHECK(max_fiber_on_prefix(c7, 100) == 100);
  auto full = c7.pull_back(d_threshold(omega(), 3));
  REQUIRE(full.has_value());
  CHECK(full->kind == Descr::Kind::Full);
  auto none = c7.pull_back(d_finite(omega(), {1, 2}));
  REQUIRE(none.has_value());
  CHECK(none->kind == Descr::Kind::Empty);

  WitnessMap en = enumerator_map();
  CHECK(max_fiber_on_prefix(en, 300) == 1);
  auto cof = en.pull_back(d_compl(d_finite(binary_seq(), {5})));
  REQUIRE(cof.has_value());
  CHECK_FALSE(member(*cof, 5));
  CHECK(member(*cof, 6));
  CHECK_FALSE(en.pull_back(d_branch(binary_seq(), {}, {0})).has_value());

  CHECK_THROWS_AS(proj_first(omega()), SpaceMismatch);
  CHECK_THROWS_AS(constant_map(omega(), mazur_sum(), 0), std::invalid_argument);
}

TEST_CASE("function parts project onto the triangle by class") {
  WitnessMap f = mazur_edfin_map();
  CHECK(f.apply(pair_code(1, 1)) == delta_code(1, 0));
  CHECK(f.apply(pair_code(1, 0)) == delta_code(1, 1));
  CHECK(f.finite_to_one == Trool::Yes);
  CHECK(map_total_on_prefix(f, 400));

  auto pre = f.pull_back(d_finite(delta_space(), {delta_code(2, 1)}));
  REQUIRE(pre.has_value());
  auto codes = try_finite_codes(*pre);
  REQUIRE(codes.has_value());
  CHECK(codes->size() == 5);  // |class 1 of part 2|
  for (auto c : *codes) CHECK(f.apply(c) == delta_code(2, 1));

  auto cof = f.pull_back(d_compl(d_finite(delta_space(), {delta_code(1, 0)})));
  REQUIRE(cof.has_value());
  CHECK(cof->kind == Descr::Kind::Complement);
  CHECK_FALSE(member(*cof, pair_code(1, 1)));
  CHECK(member(*cof, pair_code(1, 0)));

  CHECK_FALSE(f.pull_back(d_row(delta_space(), 2)).has_value());
  CHECK_FALSE(
      f.pull_back(d_finite(delta_space(), {delta_code(6, 0)})).has_value());
}

TEST_CASE("projection witnesses check out and a constant map is caught") {
  Budget b;
  SpacePtr grid = product(omega(), omega());
  IdealOracle fin = finite_ideal(omega());

  ReductionReport a =
      verify_rk(proj_first(grid), fin, col_ext(fin),
                {d_finite(omega(), {0, 1, 2}), d_finite(omega(), {5}),
                 d_full(omega()), d_threshold(omega(), 4),
                 d_compl(d_finite(omega(), {3}))},
                b);
  CHECK(a.consistent);
  for (const auto& p : a.pairs) {
    CHECK(p.exact);
    CHECK_FALSE(p.flagged);
  }

  ReductionReport c = verify_rk(proj_second(grid), fin, fubini(fin, fin),
                                {d_finite(omega(), {0}), d_full(omega())}, b);
  CHECK(c.consistent);
  CHECK(c.pairs[0].image_verdict.kind == VK::ProvedIn);
  CHECK(c.pairs[0].preimage_verdict.kind == VK::ProvedIn);

  ReductionReport broken =
      verify_rk(constant_map(omega(), omega(), 7), fin, fin,
                {d_compl(d_finite(omega(), {7})), d_compl(d_finite(omega(), {3}))},
                b);
  CHECK_FALSE(broken.consistent);
  REQUIRE(broken.failures.size() == 1);
  CHECK(broken.pairs[0].conflict);
  CHECK(broken.pairs[0].image_verdict.kind == VK::ProvedOut);
  CHECK(broken.pairs[0].preimage_verdict.kind == VK::ProvedIn);
  CHECK_FALSE(broken.pairs[1].conflict);

  CHECK_THROWS_AS(verify_rk(proj_first(grid), edfin_ideal(), col_ext(fin), {}, b),
                  SpaceMismatch);
}

TEST_CASE("the clopen-to-words reduction is consistent on the full resolution") {
  Budget b;
  b.prefix = 128;  // covers all 70 members at resolution 3
  SpacePtr words = binary_seq();
  std::vector<Descr> tests = {
      d_branch(words, {1}, {1}),
      d_compl(d_branch(words, {1}, {1})),
      d_union(d_branch(words, {1}, {1}), d_finite(words, {1})),
      d_finite(words, {0, 1, 2, 5}),
      d_empty(words),
      d_full(words),
  };
  ReductionReport r = verify_rk(solecki_ib_map(3), ib_ideal(), solecki_ideal(3),
                                tests, b);
  CHECK(r.consistent);
  CHECK(r.failures.empty());
  for (const auto& p : r.pairs) {
    CHECK(p.exact);  // the finite source is fully enumerated
    CHECK_FALSE(p.flagged);
    if (p.image_verdict.kind == VK::ProvedIn)
      CHECK(p.preimage_verdict.kind == VK::ProvedIn);
    if (p.image_verdict.kind == VK::ProvedOut)
      CHECK(p.preimage_verdict.kind == VK::ProvedOut);
  }
}

TEST_CASE("selection bias toward low cylinders shows up on the zero branch") {
  // words with all-zero tails absorb 36 of the 70 resolution-3 members, so
  // the windowed preimage of the zero branch turns cofull and the harness
  // reports the finite-scale clash instead of hiding it
  Budget b;
  b.prefix = 128;
  SpacePtr words = binary_seq();
  ReductionReport r = verify_rk(solecki_ib_map(3), ib_ideal(), solecki_ideal(3),
                                {d_branch(words, {}, {0})}, b);
  CHECK_FALSE(r.consistent);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].exact);
  CHECK(r.pairs[0].conflict);
  CHECK(r.pairs[0].image_verdict.kind == VK::ProvedIn);
  CHECK(r.pairs[0].preimage_verdict.kind == VK::ProvedOut);
  CHECK(r.pairs[0].preimage.kind == Descr::Kind::Complement);
}

TEST_CASE("the function-part reduction is consistent and finite-to-one") {
  Budget b;
  SpacePtr tri = delta_space();
  std::vector<Descr> tests = {
      d_finite(tri, {delta_code(1, 0), delta_code(2, 2), delta_code(3, 1)}),
      d_compl(d_finite(tri, {delta_code(1, 1)})),
      d_column(tri, 3),
      d_compl(d_column(tri, 3)),
      d_empty(tri),
      d_full(tri),
      d_row(tri, 1),
  };
  ReductionReport r =
      verify_rk(mazur_edfin_map(), edfin_ideal(), mazur_ideal(), tests, b);
  CHECK(r.consistent);
  CHECK(r.failures.empty());
  for (size_t i = 0; i + 1 < tests.size(); ++i) CHECK(r.pairs[i].exact);
  // diagonal rows have no closed-form preimage; evidence is one-sided
  CHECK_FALSE(r.pairs.back().exact);
  CHECK(r.pairs.back().image_verdict.kind == VK::ProvedIn);
  CHECK(r.pairs.back().preimage_verdict.kind == VK::ProvedIn);
}

TEST_CASE("greedy family keeps chain sets disjoint and antichain cells split") {
  EdfinFamily fam = ib_to_edfin_family(4, 0);
  REQUIRE(fam.sets.size() == 4);
  for (const auto& s : fam.sets) {
    CHECK(!s.empty());
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() < fam.universe);
  }

  std::vector<std::vector<uint8_t>> words;
  for (uint64_t j = 0; j < 4; ++j) words.push_back(binseq_word(j));

  // chain-indexed sets never meet
  for (uint64_t k = 0; k < 4; ++k)
    for (uint64_t n = k + 1; n < 4; ++n) {
      if (!prefix_of(words[k], words[n]) && !prefix_of(words[n], words[k]))
        continue;
      std::vector<uint64_t> common;
      std::set_intersection(fam.sets[k].begin(), fam.sets[k].end(),
                            fam.sets[n].begin(), fam.sets[n].end(),
                            std::back_inserter(common));
      CHECK(common.empty());
    }

  // replay the Boolean cells of each step and audit the two-sided slack
  auto contains = [&](uint64_t n, uint64_t x) {
    return std::binary_search(fam.sets[n].begin(), fam.sets[n].end(), x);
  };
  for (uint64_t n = 0; n < 4; ++n) {
    for (uint32_t mask = 0; mask < uint32_t{1} << n; ++mask) {
      bool relevant = true;
      for (uint64_t k = 0; k < n && relevant; ++k) {
        if (!(mask >> k & 1)) continue;
        relevant = !prefix_of(words[k], words[n]) && !prefix_of(words[n], words[k]);
        for (uint64_t j = k + 1; j < n && relevant; ++j)
          if (mask >> j & 1)
            relevant = !prefix_of(words[k], words[j]) && !prefix_of(words[j], words[k]);
      }
      if (!relevant && mask != 0) continue;
      uint64_t in = 0, out = 0;
      for (uint64_t p = 0; p < fam.universe; ++p) {
        bool cell = true;
        for (uint64_t k = 0; k < n && cell; ++k)
          cell = contains(k, p) == bool(mask >> k & 1);
        if (!cell) continue;
        (contains(n, p) ? in : out)++;
      }
      CHECK(in >= fam.slack);
      CHECK(out >= fam.slack);
    }
  }

  // preimages of branches touch each triangle column at most once
  std::vector<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>> branches = {
      {{}, {0}}, {{}, {1}}, {{0}, {1}}, {{1}, {0}}, {{1, 0}, {0, 1}}};
  for (const auto& [bp, bq] : branches) {
    for (uint64_t p = 0; p < fam.universe; ++p) {
      uint64_t hits = 0;
      for (uint64_t j = 0; j < 4; ++j) {
        bool on_branch = true;
        for (size_t i = 0; i < words[j].size() && on_branch; ++i)
          on_branch = words[j][i] == ep_digit(bp, bq, i);
        if (on_branch && contains(j, p)) ++hits;
      }
      CHECK(hits <= 1);
    }
  }

  // the allocator is deterministic
  EdfinFamily again = ib_to_edfin_family(4, 0);
  CHECK(again.sets == fam.sets);
  CHECK(again.universe == fam.universe);

  // the two-set family separates the empty word from its extension
  EdfinFamily two = ib_to_edfin_family(2, 0);
  std::vector<uint64_t> common;
  std::set_intersection(two.sets[0].begin(), two.sets[0].end(),
                        two.sets[1].begin(), two.sets[1].end(),
                        std::back_inserter(common));
  CHECK(common.empty());

  CHECK_THROWS_AS(ib_to_edfin_family(0, 0), IndexZero);
  CHECK_THROWS_AS(ib_to_edfin_family(17, 0), GroundTooLarge);
  CHECK_THROWS_AS(ib_to_edfin_family(3, 0, 0), std::invalid_argument);
}

TEST_CASE("the family map is consistent with flags only where evidence thins") {
  Budget b;
  EdfinFamily fam = ib_to_edfin_family(4, 0);
  CHECK(map_total_on_prefix(fam.map, 400));
  CHECK(max_fiber_on_prefix(fam.map, 10000) >= 2);

  SpacePtr words = binary_seq();
  std::vector<Descr> tests = {
      d_finite(words, {2, 3}),
      d_branch(words, {}, {0}),
      d_full(words),
  };
  ReductionReport r = verify_rk(fam.map, ib_ideal(), edfin_ideal(), tests, b);
  CHECK(r.consistent);
  CHECK(r.pairs[0].exact);  // finite fibers give the exact preimage
  CHECK(r.pairs[0].preimage_verdict.kind == VK::ProvedIn);
  CHECK_FALSE(r.pairs[2].exact);
  CHECK(r.pairs[2].flagged);  // materialized preimage cannot follow Full out
}

TEST_CASE("level-by-level weight minimization stays summable") {
  DiagonalReport d =
      summable_diagonalize(parse_weight_rule("1/(n+1)"), enumerator_map(), 1024);
  CHECK(d.chosen_words.size() == 10);
  CHECK(d.flagged_levels.empty());
  CHECK(d.preimage_weight < rat(2));
  for (size_t i = 0; i < d.chosen_words.size(); ++i) {
    std::vector<uint8_t> expect(i, 0);
    expect.insert(expect.end(), d.chosen_ones[i], 1);
    CHECK(binseq_word(d.chosen_words[i]) == expect);
  }
  // the chosen words form an antichain
  for (size_t i = 0; i < d.chosen_words.size(); ++i)
    for (size_t j = i + 1; j < d.chosen_words.size(); ++j) {
      auto wi = binseq_word(d.chosen_words[i]);
      auto wj = binseq_word(d.chosen_words[j]);
      CHECK_FALSE(prefix_of(wi, wj));
      CHECK_FALSE(prefix_of(wj, wi));
    }

  // a single level returns one all-ones word
  DiagonalReport one =
      summable_diagonalize(parse_weight_rule("1/(n+1)"), enumerator_map(), 64, 1);
  REQUIRE(one.chosen_words.size() == 1);
  CHECK(binseq_word(one.chosen_words[0]) ==
        std::vector<uint8_t>(one.chosen_ones[0], 1));

  // a map collapsing everything to the empty word leaves nothing to weigh
  DiagonalReport zero = summable_diagonalize(
      parse_weight_rule("1/(n+1)"), constant_map(omega(), binary_seq(), 0), 1024);
  CHECK(zero.preimage_weight == rat(0));
  CHECK(zero.flagged_levels.empty());

  CHECK_THROWS_AS(
      summable_diagonalize(parse_weight_rule("1/(n+1)"), mazur_edfin_map(), 100),
      SpaceMismatch);
}

TEST_CASE("a map saturating one level gets that level flagged") {
  WitnessMap ladder;
  ladder.source = omega();
  ladder.target = binary_seq();
  ladder.rule = "ones-ladder";
  ladder.apply = [](uint64_t i) {
    return binseq_code(std::vector<uint8_t>(i % 48 + 1, 1));
  };
  WeightRule unit;
  unit.harmonic_tail = false;
  unit.constant_tail = 1;
  DiagonalReport d = summable_diagonalize(unit, ladder, 96, 2);
  REQUIRE(d.chosen_words.size() == 2);
  CHECK(d.flagged_levels == std::vector<uint64_t>{0});
  CHECK(d.level_weights[0] == rat(2));  // every candidate carries two points
  CHECK(d.level_weights[1] == rat(0));
  CHECK(d.preimage_weight == rat(2));
}
