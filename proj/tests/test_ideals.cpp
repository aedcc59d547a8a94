#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "iw/analysis.hpp"
#include "iw/ideal.hpp"

using namespace iw;

namespace {

using VK = VerdictKind;

Descr rand_descr(SpacePtr sp, std::mt19937_64& rng, int depth);

Descr rand_leaf(SpacePtr sp, std::mt19937_64& rng, int depth) {
  // finite leaves dominate so that proved-in pairs appear often
  uint64_t roll = rng() % 10;
  if (roll < 5) {
    auto pool = enumerate_space(*sp, 48);
    std::vector<uint64_t> codes;
    uint64_t k = rng() % 5;
    for (uint64_t i = 0; i < k; ++i) codes.push_back(pool[rng() % pool.size()]);
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return d_finite(sp, std::move(codes));
  }
  if (roll == 5) return d_empty(sp);
  if (roll == 6) return d_full(sp);
  switch (sp->kind) {
    case Space::Kind::Omega:
      return roll == 7 ? d_threshold(sp, rng() % 8)
                       : d_stride(sp, rng() % 4, 1 + rng() % 4);
    case Space::Kind::Product:
      if (roll == 7) return d_column(sp, rng() % 6);
      if (roll == 8) return d_row(sp, rng() % 6);
      return depth > 0 ? d_rectangle(rand_descr(sp->left, rng, depth - 1),
                                     rand_descr(sp->right, rng, depth - 1))
                       : d_column(sp, rng() % 6);
    case Space::Kind::BinarySeq: {
      std::vector<uint8_t> prefix, period;
      uint64_t pl = rng() % 3;
      for (uint64_t i = 0; i < pl; ++i) prefix.push_back(rng() % 2);
      period.push_back(rng() % 2);
      if (rng() % 2) period.push_back(rng() % 2);
      return d_branch(sp, std::move(prefix), std::move(period));
    }
    case Space::Kind::Delta:
      return roll == 7 ? d_column(sp, rng() % 6) : d_row(sp, rng() % 6);
    case Space::Kind::DisjointSum:
      return d_section(sp, rng() % 5);
    case Space::Kind::MazurSum:
      return d_section(sp, 1 + rng() % 4);
    default:
      return d_empty(sp);
  }
}

Descr rand_descr(SpacePtr sp, std::mt19937_64& rng, int depth) {
  if (depth == 0) return rand_leaf(sp, rng, depth);
  switch (rng() % 5) {
    case 0:
      return d_compl(rand_descr(sp, rng, depth - 1));
    case 1:
      return d_union(rand_descr(sp, rng, depth - 1), rand_descr(sp, rng, depth - 1));
    case 2:
      return d_inter(rand_descr(sp, rng, depth - 1), rand_descr(sp, rng, depth - 1));
    default:
      return rand_leaf(sp, rng, depth);
  }
}

IndexedFamily const_fin_family() {
  IndexedFamily f;
  f.part = [](uint64_t) { return finite_ideal(omega()); };
  f.label = "fin";
  return f;
}

Descr evens() { return d_stride(omega(), 0, 2); }

SpacePtr host() { return indexed_host(); }

// exposed oracles that denote proper ideals containing the finite sets
std::vector<IdealOracle> proper_suite() {
  std::vector<IdealOracle> v;
  v.push_back(fin_of(counting_submeasure()));
  v.push_back(summable_ideal(parse_weight_rule("1/(n+1)")));
  v.push_back(density_ideal());
  v.push_back(ib_ideal());
  v.push_back(edfin_ideal());
  v.push_back(mazur_ideal());
  v.push_back(solecki_ideal(3));
  v.push_back(finite_ideal(product(omega(), omega())));
  v.push_back(fubini(finite_ideal(omega()), finite_ideal(omega())));
  v.push_back(direct_sum(finite_ideal(omega()),
                         summable_ideal(parse_weight_rule("1/(n+1)"))));
  v.push_back(full_pad(finite_ideal(omega())));
  v.push_back(col_ext(finite_ideal(omega())));
  v.push_back(row_ext(finite_ideal(omega())));
  v.push_back(finpow(3));
  v.push_back(indexed_sum(const_fin_family()));
  v.push_back(indexed_sum_over(finite_ideal(omega()), const_fin_family()));
  v.push_back(jfamily(evens()));
  v.push_back(meet({finite_ideal(omega()),
                    summable_ideal(parse_weight_rule("1/(n+1)"))}));
  return v;
}

}  // namespace

TEST_CASE("verdict conjunction keeps the worst evidence") {
  Budget b;
  CHECK(verdict_and(v_in("a"), v_in("b")).kind == VK::ProvedIn);
  CHECK(verdict_and(v_in("a"), v_out("b")).kind == VK::ProvedOut);
  CHECK(verdict_and(v_out("a"), v_in("b")).kind == VK::ProvedOut);
  CHECK(verdict_and(v_in("a"), v_unknown("b")).kind == VK::Unknown);
  CHECK(verdict_and(v_bounded(ExtRat{rat(3)}, 16, "a"), v_in("b")).kind ==
        VK::BoundedUpTo);
  CHECK(verdict_and(v_divergent(5, 83, "a"), v_bounded(ExtRat{rat(1)}, 8, "b")).kind ==
        VK::DivergentUpTo);
  CHECK(verdict_and(v_unknown("a"), v_divergent(2, 9, "b")).kind == VK::DivergentUpTo);
  Verdict m = verdict_and(v_bounded(ExtRat{rat(3)}, 16, "a"),
                          v_bounded(ExtRat{rat(7, 2)}, 32, "b"));
  CHECK(m.bound == ExtRat{rat(7, 2)});
  CHECK(m.prefix == 32);
  CHECK(m.certificate.size() == 2);
  (void)b;
}

TEST_CASE("budget parsing and environment default") {
  Budget b = parse_budget("96");
  CHECK(b.prefix == 96);
  CHECK(b.level == 8);
  CHECK(b.depth == 8);
  b = parse_budget("128,5");
  CHECK(b.prefix == 128);
  CHECK(b.level == 5);
  b = parse_budget("64,8,4");
  CHECK(b.depth == 4);
  CHECK_THROWS_AS(parse_budget("0"), SyntaxError);
  CHECK_THROWS_AS(parse_budget("64,,8"), SyntaxError);
  CHECK_THROWS_AS(parse_budget("64,8,8,8"), SyntaxError);
  CHECK_THROWS_AS(parse_budget("many"), SyntaxError);
  CHECK_THROWS_AS(parse_budget("-4"), SyntaxError);

  setenv("IDEALC_BUDGET", "32,4,2", 1);
  Budget e = budget_from_env();
  CHECK(e.prefix == 32);
  CHECK(e.level == 4);
  CHECK(e.depth == 2);
  unsetenv("IDEALC_BUDGET");
  e = budget_from_env();
  CHECK(e.prefix == 64);
}

TEST_CASE("counting oracle decides finite sets and the full set") {
  IdealOracle fin = fin_of(counting_submeasure());
  Budget b;
  CHECK(fin.decide(d_finite(omega(), {1, 2, 3}), b).kind == VK::ProvedIn);
  CHECK(fin.decide(d_full(omega()), b).kind == VK::ProvedOut);
  CHECK(fin.decide(d_empty(omega()), b).kind == VK::ProvedIn);
  CHECK(fin.decide(d_stride(omega(), 1, 3), b).kind == VK::ProvedOut);

  CHECK_THROWS_AS(fin.decide(d_full(binary_seq()), b), SpaceMismatch);
  Budget zero;
  zero.level = 0;
  CHECK_THROWS_AS(fin.decide(d_full(omega()), zero), std::invalid_argument);
}

TEST_CASE("bare growth watch crosses level 5 at code 83 on the full set") {
  IdealOracle sm = fin_of(summable_submeasure(parse_weight_rule("1/(n+1)")));
  Budget b;
  b.prefix = 128;
  b.level = 5;
  Verdict v = sm.decide(d_full(omega()), b);
  CHECK(v.kind == VK::DivergentUpTo);
  CHECK(v.level == 5);
  CHECK(v.prefix == 83);

  // shorter prefix: the mass stays under the level, and the verdict says so
  Budget small;
  small.prefix = 64;
  small.level = 5;
  Verdict w = sm.decide(d_full(omega()), small);
  CHECK(w.kind == VK::BoundedUpTo);
  CHECK(w.prefix == 64);
  CHECK(w.bound < ExtRat{rat(5)});

  Budget lvl1;
  lvl1.level = 1;
  Verdict t = sm.decide(d_threshold(omega(), 10), lvl1);
  CHECK(t.kind == VK::DivergentUpTo);
  CHECK(t.level == 1);
}

TEST_CASE("summable oracle knows periodic sets diverge") {
  IdealOracle sm = summable_ideal(parse_weight_rule("1/(n+1)"));
  Budget b;
  CHECK(sm.decide(d_full(omega()), b).kind == VK::ProvedOut);
  CHECK(sm.decide(d_stride(omega(), 0, 2), b).kind == VK::ProvedOut);
  CHECK(sm.decide(d_threshold(omega(), 40), b).kind == VK::ProvedOut);
  CHECK(sm.decide(d_finite(omega(), {0, 1, 2}), b).kind == VK::ProvedIn);
  Verdict v = sm.decide(d_finite(omega(), {0, 1, 2}), b);
  CHECK(v.bound == ExtRat{rat(11, 6)});
}

TEST_CASE("density oracle is structural across the whole omega grammar") {
  IdealOracle dz = density_ideal();
  Budget b;
  CHECK(dz.decide(d_finite(omega(), {5, 9}), b).kind == VK::ProvedIn);
  CHECK(dz.decide(d_full(omega()), b).kind == VK::ProvedOut);
  CHECK(dz.decide(d_stride(omega(), 1, 3), b).kind == VK::ProvedOut);
  CHECK(dz.decide(d_compl(d_stride(omega(), 1, 3)), b).kind == VK::ProvedOut);
  CHECK(dz.decide(d_threshold(omega(), 9), b).kind == VK::ProvedOut);
  CHECK(dz.decide(d_inter(d_stride(omega(), 0, 2), d_finite(omega(), {0, 2, 5})), b).kind ==
        VK::ProvedIn);
}

TEST_CASE("branch cover oracle separates small families from their complements") {
  IdealOracle ib = ib_ideal();
  Budget b;
  SpacePtr sp = binary_seq();
  Descr left = d_branch(sp, {}, {0});
  Descr mixed = d_branch(sp, {1, 0}, {1, 0});
  Verdict one = ib.decide(left, b);
  CHECK(one.kind == VK::ProvedIn);
  CHECK(one.bound == ExtRat{rat(1)});
  Verdict two = ib.decide(d_union(left, mixed), b);
  CHECK(two.kind == VK::ProvedIn);
  CHECK(two.bound == ExtRat{rat(2)});
  CHECK(ib.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(ib.decide(d_compl(left), b).kind == VK::ProvedOut);
  CHECK(ib.decide(d_inter(d_compl(left), d_compl(mixed)), b).kind == VK::ProvedOut);
  CHECK(ib.decide(d_finite(sp, {0, 1, 2, 5}), b).kind == VK::ProvedIn);
  CHECK(ib.decide(d_union(left, d_finite(sp, {4, 6})), b).kind == VK::ProvedIn);
}

TEST_CASE("row cover oracle bounds diagonal sections") {
  IdealOracle ed = edfin_ideal();
  Budget b;
  SpacePtr sp = delta_space();
  Verdict row = ed.decide(d_row(sp, 2), b);
  CHECK(row.kind == VK::ProvedIn);
  CHECK(row.bound == ExtRat{rat(1)});
  Descr rows = d_union(d_row(sp, 0), d_union(d_row(sp, 1), d_row(sp, 4)));
  Verdict three = ed.decide(rows, b);
  CHECK(three.kind == VK::ProvedIn);
  CHECK(three.bound == ExtRat{rat(3)});
  CHECK(ed.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(ed.decide(d_compl(d_row(sp, 0)), b).kind == VK::ProvedOut);
  CHECK(ed.decide(d_column(sp, 5), b).kind == VK::ProvedIn);  // columns are finite
}

TEST_CASE("function-part oracle reads the tail sections") {
  IdealOracle mz = mazur_ideal();
  Budget b;
  SpacePtr sp = mazur_sum();
  CHECK(mz.decide(d_section(sp, 2), b).kind == VK::ProvedIn);
  CHECK(mz.decide(d_finite(sp, {pair_code(1, 0), pair_code(2, 7)}), b).kind ==
        VK::ProvedIn);
  CHECK(mz.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(mz.decide(d_compl(d_section(sp, 2)), b).kind == VK::ProvedOut);
  CHECK(mz.decide(d_compl(d_finite(sp, {pair_code(3, 5)})), b).kind == VK::ProvedOut);
  CHECK(mz.decide(d_union(d_section(sp, 1), d_section(sp, 3)), b).kind == VK::ProvedIn);
}

TEST_CASE("resolution stand-in follows the small/large syntax algebra") {
  IdealOracle so = solecki_ideal(3);
  Budget b;
  SpacePtr sp = so.space;
  Descr listed = d_finite(sp, {0, 4, 17});
  CHECK(so.decide(d_empty(sp), b).kind == VK::ProvedIn);
  CHECK(so.decide(listed, b).kind == VK::ProvedIn);
  CHECK(so.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(so.decide(d_compl(listed), b).kind == VK::ProvedOut);
  CHECK(so.decide(d_union(listed, d_compl(listed)), b).kind == VK::ProvedOut);
  CHECK(so.decide(d_inter(listed, d_compl(listed)), b).kind == VK::ProvedIn);
  CHECK(so.decide(d_union(listed, d_finite(sp, {30})), b).kind == VK::ProvedIn);
  CHECK_THROWS_AS(solecki_ideal(0), IndexZero);
  CHECK_THROWS_AS(solecki_ideal(6), CountExceedsSpace);
}

TEST_CASE("two-part sum constrains both parts") {
  IdealOracle ds = direct_sum(finite_ideal(omega()),
                              summable_ideal(parse_weight_rule("1/(n+1)")));
  Budget b;
  SpacePtr sp = ds.space;
  CHECK(ds.decide(d_section(sp, 0), b).kind == VK::ProvedOut);
  CHECK(ds.decide(d_section(sp, 1), b).kind == VK::ProvedOut);
  CHECK(ds.decide(d_finite(sp, {pair_code(0, 3), pair_code(1, 9)}), b).kind ==
        VK::ProvedIn);
  CHECK(ds.decide(d_empty(sp), b).kind == VK::ProvedIn);
  CHECK(ds.decide(d_full(sp), b).kind == VK::ProvedOut);
}

TEST_CASE("padded sum frees part one") {
  IdealOracle fp = full_pad(finite_ideal(omega()));
  Budget b;
  SpacePtr sp = fp.space;
  CHECK(fp.decide(d_section(sp, 1), b).kind == VK::ProvedIn);
  CHECK(fp.decide(d_section(sp, 0), b).kind == VK::ProvedOut);
  CHECK(fp.decide(d_finite(sp, {pair_code(0, 1), pair_code(1, 5)}), b).kind ==
        VK::ProvedIn);
  CHECK(fp.decide(d_union(d_section(sp, 1), d_finite(sp, {pair_code(0, 2)})), b).kind ==
        VK::ProvedIn);
  CHECK(fp.decide(d_full(sp), b).kind == VK::ProvedOut);
}

TEST_CASE("product oracle brackets the bad rows") {
  IdealOracle ff = fubini(finite_ideal(omega()), finite_ideal(omega()));
  Budget b;
  SpacePtr sp = ff.space;
  CHECK(ff.decide(d_column(sp, 0), b).kind == VK::ProvedIn);
  CHECK(ff.decide(d_full(sp), b).kind == VK::ProvedOut);
  Descr strip = d_rectangle(d_finite(omega(), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}),
                            d_full(omega()));
  CHECK(ff.decide(strip, b).kind == VK::ProvedIn);
  CHECK(ff.decide(d_compl(strip), b).kind == VK::ProvedOut);
  CHECK(ff.decide(d_row(sp, 5), b).kind == VK::ProvedIn);
  CHECK(ff.decide(d_rectangle(d_full(omega()), d_finite(omega(), {0, 1})), b).kind ==
        VK::ProvedIn);

  Budget shallow;
  shallow.depth = 1;
  CHECK(ff.decide(d_full(sp), shallow).kind == VK::Unknown);
}

TEST_CASE("support and section extensions of the product") {
  IdealOracle ce = col_ext(finite_ideal(omega()));
  Budget b;
  SpacePtr cs = ce.space;
  CHECK(ce.decide(d_column(cs, 3), b).kind == VK::ProvedIn);
  CHECK(ce.decide(d_union(d_column(cs, 0), d_column(cs, 7)), b).kind == VK::ProvedIn);
  CHECK(ce.decide(d_rectangle(d_full(omega()), d_finite(omega(), {7})), b).kind ==
        VK::ProvedOut);
  CHECK(ce.decide(d_row(cs, 0), b).kind == VK::ProvedOut);

  IdealOracle cs2 = col_ext(summable_ideal(parse_weight_rule("1/(n+1)")));
  CHECK(cs2.decide(d_rectangle(d_stride(omega(), 0, 2), d_finite(omega(), {0})), b).kind ==
        VK::ProvedOut);
  CHECK(cs2.decide(d_rectangle(d_finite(omega(), {0, 1, 2}), d_full(omega())), b).kind ==
        VK::ProvedIn);

  IdealOracle re = row_ext(finite_ideal(omega()));
  SpacePtr rs = re.space;
  CHECK(re.decide(d_row(rs, 0), b).kind == VK::ProvedIn);
  CHECK(re.decide(d_column(rs, 0), b).kind == VK::ProvedOut);
  CHECK(re.decide(d_full(rs), b).kind == VK::ProvedOut);
  CHECK(re.decide(d_rectangle(d_full(omega()), d_finite(omega(), {0, 1, 2})), b).kind ==
        VK::ProvedIn);
}

TEST_CASE("meet intersects components on one space") {
  IdealOracle a = row_ext(fubini(finite_ideal(omega()), finite_ideal(omega())));
  IdealOracle bb = fubini(finite_ideal(omega()),
                          finite_ideal(product(omega(), omega())));
  IdealOracle big = meet({a, bb});
  Budget b;
  CHECK(big.decide(d_full(big.space), b).kind == VK::ProvedOut);
  CHECK(big.decide(d_empty(big.space), b).kind == VK::ProvedIn);

  CHECK_THROWS_AS(meet({finite_ideal(omega()), edfin_ideal()}), SpaceMismatch);
  CHECK_THROWS_AS(meet({}), std::invalid_argument);

  IdealOracle small = meet({finite_ideal(omega()),
                            summable_ideal(parse_weight_rule("1/(n+1)"))});
  CHECK(small.decide(d_threshold(omega(), 3), b).kind == VK::ProvedOut);
  CHECK(small.decide(d_finite(omega(), {1, 4}), b).kind == VK::ProvedIn);
}

TEST_CASE("iterated product powers") {
  Budget b;
  CHECK_THROWS_AS(finpow(0), IndexZero);
  IdealOracle f3 = finpow(3);
  CHECK(f3.decide(d_full(f3.space), b).kind == VK::ProvedOut);
  CHECK(f3.decide(d_column(f3.space, 0), b).kind == VK::ProvedIn);
  CHECK(f3.decide(d_empty(f3.space), b).kind == VK::ProvedIn);

  Budget shallow;
  shallow.depth = 2;
  CHECK(f3.decide(d_full(f3.space), shallow).kind == VK::Unknown);
}

TEST_CASE("indexed sum checks every part, its relaxation only the bad index set") {
  IdealOracle every = indexed_sum(const_fin_family());
  IdealOracle almost = indexed_sum_over(finite_ideal(omega()), const_fin_family());
  Budget b;
  SpacePtr sp = host();

  Descr spread = d_finite(sp, {pair_code(0, 5), pair_code(3, 1)});
  CHECK(every.decide(spread, b).kind == VK::ProvedIn);
  CHECK(almost.decide(spread, b).kind == VK::ProvedIn);

  // one fully occupied part: fatal for the plain sum, excusable for the
  // relaxation because a single bad index is a finite set
  Descr one_bad = d_section(sp, 4);
  CHECK(every.decide(one_bad, b).kind == VK::ProvedOut);
  CHECK(almost.decide(one_bad, b).kind == VK::ProvedIn);

  CHECK(every.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(almost.decide(d_full(sp), b).kind == VK::ProvedOut);
  CHECK(every.decide(d_compl(d_finite(sp, {pair_code(1, 1)})), b).kind ==
        VK::ProvedOut);
  CHECK(almost.decide(d_compl(d_finite(sp, {pair_code(1, 1)})), b).kind ==
        VK::ProvedOut);

  CHECK_THROWS_AS(indexed_sum_over(edfin_ideal(), const_fin_family()), SpaceMismatch);
}

TEST_CASE("growing powers with support restriction") {
  IdealOracle ja = jfamily(evens());
  Budget b;
  SpacePtr sp = host();

  Verdict fin_part = ja.decide(d_finite(sp, {pair_code(0, 3), pair_code(0, 7)}), b);
  CHECK(fin_part.kind == VK::ProvedIn);
  CHECK(fin_part.bound == ExtRat{rat(0)});

  CHECK(ja.decide(d_section(sp, 1), b).kind == VK::ProvedOut);
  CHECK(ja.decide(d_full(sp), b).kind == VK::ProvedOut);

  // singletons across the first N odd parts stay inside, but the measured
  // escape count grows linearly with N
  auto odd_singles = [&](uint64_t n) {
    Descr d = d_empty(sp);
    for (uint64_t k = 0; k < n; ++k)
      d = d_union(std::move(d), d_finite(sp, {pair_code(2 * k + 1, 0)}));
    return d;
  };
  Verdict v3 = ja.decide(odd_singles(3), b);
  CHECK(v3.kind == VK::ProvedIn);
  CHECK(v3.bound == ExtRat{rat(3)});
  Verdict v5 = ja.decide(odd_singles(5), b);
  CHECK(v5.kind == VK::ProvedIn);
  CHECK(v5.bound == ExtRat{rat(5)});

  // the same sets measured against the odd support base never escape
  IdealOracle jb = jfamily(d_stride(omega(), 1, 2));
  Verdict w5 = jb.decide(odd_singles(5), b);
  CHECK(w5.kind == VK::ProvedIn);
  CHECK(w5.bound == ExtRat{rat(0)});

  CHECK_THROWS_AS(jfamily(d_full(binary_seq())), SpaceMismatch);
}

TEST_CASE("verdicts replay exactly") {
  Budget b;
  b.prefix = 128;
  b.level = 5;
  std::vector<std::pair<IdealOracle, Descr>> probes;
  probes.emplace_back(fin_of(summable_submeasure(parse_weight_rule("1/(n+1)"))),
                      d_full(omega()));
  probes.emplace_back(fubini(finite_ideal(omega()), finite_ideal(omega())),
                      d_column(product(omega(), omega()), 0));
  probes.emplace_back(jfamily(evens()), d_section(host(), 1));
  probes.emplace_back(mazur_ideal(), d_compl(d_section(mazur_sum(), 2)));
  for (auto& [oracle, d] : probes) {
    Verdict x = oracle.decide(d, b);
    Verdict y = oracle.decide(d, b);
    CHECK(x.kind == y.kind);
    CHECK(x.bound == y.bound);
    CHECK(x.level == y.level);
    CHECK(x.prefix == y.prefix);
    CHECK(x.certificate == y.certificate);
    CHECK(!x.certificate.empty());
  }
}

TEST_CASE("every proper oracle accepts the empty set and rejects the full set") {
  Budget b;
  for (auto& o : proper_suite()) {
    INFO(o.provenance);
    CHECK(o.decide(d_empty(o.space), b).kind == VK::ProvedIn);
    CHECK(o.decide(d_full(o.space), b).kind == VK::ProvedOut);
  }
}

TEST_CASE("every proper oracle accepts random finite descriptions") {
  Budget b;
  std::mt19937_64 rng(20260814);
  for (auto& o : proper_suite()) {
    INFO(o.provenance);
    auto pool = enumerate_space(*o.space, 40);
    for (int t = 0; t < 25; ++t) {
      std::vector<uint64_t> codes;
      uint64_t k = rng() % 7;
      for (uint64_t i = 0; i < k; ++i) codes.push_back(pool[rng() % pool.size()]);
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      CHECK(o.decide(d_finite(o.space, codes), b).kind == VK::ProvedIn);
    }
  }
}

TEST_CASE("proved unions of proved members stay proved") {
  Budget b;
  std::mt19937_64 rng(77);
  for (auto& o : proper_suite()) {
    INFO(o.provenance);
    uint64_t both_in = 0;
    for (int t = 0; t < 1000; ++t) {
      Descr d1 = rand_descr(o.space, rng, 2);
      Descr d2 = rand_descr(o.space, rng, 2);
      Verdict v1 = o.decide(d1, b);
      Verdict v2 = o.decide(d2, b);
      if (v1.kind != VK::ProvedIn || v2.kind != VK::ProvedIn) continue;
      ++both_in;
      Verdict u = o.decide(d_union(d1, d2), b);
      INFO("union of ", print_descr(d1), " and ", print_descr(d2));
      REQUIRE(u.kind == VK::ProvedIn);
    }
    CHECK(both_in > 100);
  }
}

TEST_CASE("detected subsets and supersets move with the proof") {
  Budget b;
  std::mt19937_64 rng(78);
  for (auto& o : proper_suite()) {
    INFO(o.provenance);
    for (int t = 0; t < 400; ++t) {
      Descr d = rand_descr(o.space, rng, 2);
      Descr x = rand_descr(o.space, rng, 2);
      Verdict v = o.decide(d, b);
      if (v.kind == VK::ProvedIn) {
        Verdict w = o.decide(d_inter(d, x), b);
        INFO("shrinking ", print_descr(d), " by ", print_descr(x));
        REQUIRE(w.kind == VK::ProvedIn);
      } else if (v.kind == VK::ProvedOut) {
        Verdict w = o.decide(d_union(d, x), b);
        INFO("growing ", print_descr(d), " by ", print_descr(x));
        REQUIRE(w.kind == VK::ProvedOut);
      }
    }
  }
}
