#include "iw/reduction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <unordered_map>

#include "iw/analysis.hpp"

namespace iw {

namespace {

std::string count_str(uint64_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

bool word_prefix(const std::vector<uint8_t>& s, const std::vector<uint8_t>& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

// strict first-difference order; prefix-comparable words are incomparable
bool word_before(const std::vector<uint8_t>& s, const std::vector<uint8_t>& t) {
  for (size_t m = 0; m < std::min(s.size(), t.size()); ++m)
    if (s[m] != t[m]) return s[m] < t[m];
  return false;
}

using FiberFn = std::function<std::optional<std::vector<uint64_t>>(uint64_t)>;

std::optional<std::vector<uint64_t>> fibers_of(const FiberFn& fiber,
                                               const std::vector<uint64_t>& codes) {
  std::vector<uint64_t> pre;
  for (auto y : codes) {
    auto f = fiber(y);
    if (!f) return std::nullopt;
    pre.insert(pre.end(), f->begin(), f->end());
  }
  std::sort(pre.begin(), pre.end());
  pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  return pre;
}

std::optional<Descr> pull_back_rec(const SpacePtr& src, const FiberFn& fiber,
                                   bool total, const Descr& d) {
  if (auto codes = try_finite_codes(d)) {
    auto pre = fibers_of(fiber, *codes);
    if (!pre) return std::nullopt;
    return d_finite(src, std::move(*pre));
  }
  // complements commute with preimages only when the map is total
  if (total) {
    if (auto missing = try_finite_codes(d_compl(d))) {
      auto pre = fibers_of(fiber, *missing);
      if (!pre) return std::nullopt;
      return d_compl(d_finite(src, std::move(*pre)));
    }
  }
  switch (d.kind) {
    case Descr::Kind::Complement: {
      if (!total) return std::nullopt;
      auto child = pull_back_rec(src, fiber, total, *d.a);
      if (!child) return std::nullopt;
      return d_compl(std::move(*child));
    }
    case Descr::Kind::Union:
    case Descr::Kind::Intersection: {
      auto x = pull_back_rec(src, fiber, total, *d.a);
      if (!x) return std::nullopt;
      auto y = pull_back_rec(src, fiber, total, *d.b);
      if (!y) return std::nullopt;
      return d.kind == Descr::Kind::Union ? d_union(std::move(*x), std::move(*y))
                                          : d_inter(std::move(*x), std::move(*y));
    }
    default:
      return std::nullopt;
  }
}

std::function<std::optional<Descr>(const Descr&)> fiber_pull_back(SpacePtr src,
                                                                  FiberFn fiber,
                                                                  bool total) {
  return [src = std::move(src), fiber = std::move(fiber), total](const Descr& d) {
    return pull_back_rec(src, fiber, total, d);
  };
}

uint64_t clamp_prefix(const Space& sp, uint64_t prefix) {
  return space_infinite(sp) ? prefix : std::min(prefix, space_card(sp));
}

bool in_domain(const WitnessMap& f, uint64_t code) {
  return !f.domain || f.domain(code);
}

bool in_evidence(VerdictKind k) {
  return k == VerdictKind::ProvedIn || k == VerdictKind::BoundedUpTo;
}
bool out_evidence(VerdictKind k) {
  return k == VerdictKind::ProvedOut || k == VerdictKind::DivergentUpTo;
}
bool proved(VerdictKind k) {
  return k == VerdictKind::ProvedIn || k == VerdictKind::ProvedOut;
}

std::vector<uint8_t> cell_word(int len, uint64_t value) {
  std::vector<uint8_t> w(len);
  for (int i = 0; i < len; ++i) w[i] = value >> (len - 1 - i) & 1;
  return w;
}

// branch digit of a finite word extended by zeros
uint8_t padded_digit(const std::vector<uint8_t>& p, uint64_t i) {
  return i < p.size() ? p[i] : 0;
}

}  // namespace

bool map_total_on_prefix(const WitnessMap& f, uint64_t prefix) {
  auto pool = enumerate_space(*f.source, clamp_prefix(*f.source, prefix));
  for (auto c : pool) {
    if (!in_domain(f, c)) continue;
    if (!valid_code(*f.target, f.apply(c))) return false;
  }
  return true;
}

uint64_t max_fiber_on_prefix(const WitnessMap& f, uint64_t prefix) {
  auto pool = enumerate_space(*f.source, clamp_prefix(*f.source, prefix));
  std::unordered_map<uint64_t, uint64_t> counts;
  uint64_t best = 0;
  for (auto c : pool) {
    if (!in_domain(f, c)) continue;
    best = std::max(best, ++counts[f.apply(c)]);
  }
  return best;
}

WitnessMap proj_first(SpacePtr prod) {
  if (prod->kind != Space::Kind::Product)
    throw SpaceMismatch("projection needs a product space");
  WitnessMap f;
  f.source = prod;
  f.target = prod->left;
  f.rule = "proj-first";
  f.apply = [](uint64_t c) { return unpair_code(c).first; };
  SpacePtr right = prod->right;
  f.pull_back = [right](const Descr& d) -> std::optional<Descr> {
    return d_rectangle(d, d_full(right));
  };
  f.finite_to_one = Trool::No;
  return f;
}

WitnessMap proj_second(SpacePtr prod) {
  if (prod->kind != Space::Kind::Product)
    throw SpaceMismatch("projection needs a product space");
  WitnessMap f;
  f.source = prod;
  f.target = prod->right;
  f.rule = "proj-second";
  f.apply = [](uint64_t c) { return unpair_code(c).second; };
  SpacePtr left = prod->left;
  f.pull_back = [left](const Descr& d) -> std::optional<Descr> {
    return d_rectangle(d_full(left), d);
  };
  f.finite_to_one = Trool::No;
  return f;
}

WitnessMap constant_map(SpacePtr source, SpacePtr target, uint64_t value) {
  if (!valid_code(*target, value))
    throw std::invalid_argument("constant value is not a point of the target");
  WitnessMap f;
  f.source = source;
  f.target = target;
  f.rule = "constant(" + std::to_string(value) + ")";
  f.apply = [value](uint64_t) { return value; };
  SpacePtr src = source;
  f.pull_back = [src, value](const Descr& d) -> std::optional<Descr> {
    return member(d, value) ? d_full(src) : d_empty(src);
  };
  f.finite_to_one = space_infinite(*source) ? Trool::No : Trool::Yes;
  return f;
}

WitnessMap enumerator_map() {
  WitnessMap f;
  f.source = omega();
  f.target = binary_seq();
  f.rule = "word-enumerator";
  f.apply = [](uint64_t c) { return c; };
  f.pull_back = fiber_pull_back(
      f.source, [](uint64_t y) { return std::vector<uint64_t>{y}; }, true);
  f.finite_to_one = Trool::Yes;
  return f;
}

uint64_t solecki_to_ib(int l, uint64_t code) {
  if (l < 1) throw IndexZero("resolution must be at least 1");
  if (l > 6) throw CountExceedsSpace("resolution beyond the coded clopen spaces");
  uint64_t mask = clopen_mask(l, code);
  // words fully inside the member, one bitset per length
  std::vector<uint64_t> inside(l + 1);
  inside[l] = mask;
  for (int k = l - 1; k >= 0; --k)
    for (uint64_t v = 0; v < uint64_t{1} << k; ++v)
      if ((inside[k + 1] >> (2 * v) & 1) && (inside[k + 1] >> (2 * v + 1) & 1))
        inside[k] |= uint64_t{1} << v;
  std::vector<std::vector<uint8_t>> comp;
  for (int k = 0; k <= l; ++k)
    for (uint64_t v = 0; v < uint64_t{1} << k; ++v)
      if ((inside[k] >> v & 1) && (k == 0 || !(inside[k - 1] >> (v >> 1) & 1)))
        comp.push_back(cell_word(k, v));
  for (size_t i = 0; i < comp.size(); ++i)
    for (size_t j = i + 1; j < comp.size(); ++j)
      if (word_prefix(comp[i], comp[j]) || word_prefix(comp[j], comp[i]))
        throw std::logic_error("maximal cylinder set is not an antichain");
  size_t least = 0;
  for (size_t i = 1; i < comp.size(); ++i)
    if (word_before(comp[i], comp[least])) least = i;
  for (size_t i = 0; i < comp.size(); ++i)
    if (i != least && !word_before(comp[least], comp[i]))
      throw std::logic_error("first-difference order failed to select a least word");
  if (comp[least].empty())
    throw EmptySequence("selected cylinder is the whole space");
  std::vector<uint8_t> tail(comp[least].begin() + 1, comp[least].end());
  return binseq_code(tail);
}

WitnessMap solecki_ib_map(int l) {
  if (l < 1) throw IndexZero("resolution must be at least 1");
  WitnessMap f;
  f.source = clopen_half(l);
  f.target = binary_seq();
  f.rule = "solecki-ib(" + std::to_string(l) + ")";
  f.apply = [l](uint64_t c) { return solecki_to_ib(l, c); };
  f.finite_to_one = Trool::Maybe;
  return f;
}

ClopenWitness solecki_counterexample(
    const std::vector<std::vector<uint8_t>>& antichain,
    const std::vector<std::vector<uint8_t>>& points) {
  if (antichain.empty()) throw std::invalid_argument("antichain must be nonempty");
  for (size_t i = 0; i < antichain.size(); ++i)
    for (size_t j = i + 1; j < antichain.size(); ++j)
      if (word_prefix(antichain[i], antichain[j]) ||
          word_prefix(antichain[j], antichain[i]))
        throw std::invalid_argument("words are not an antichain");

  // an antichain element hit by no sampled point: a point hits s when the
  // point's branch with its leading bit dropped extends s
  size_t picked = antichain.size();
  for (size_t i = 0; i < antichain.size() && picked == antichain.size(); ++i) {
    bool hit = false;
    for (const auto& p : points) {
      bool match = true;
      for (size_t m = 0; m < antichain[i].size() && match; ++m)
        match = antichain[i][m] == padded_digit(p, m + 1);
      if (match) {
        hit = true;
        break;
      }
    }
    if (!hit) picked = i;
  }
  if (picked == antichain.size())
    throw NoAvoidingElement("every antichain element lies on a sampled branch");

  const auto& s = antichain[picked];
  uint64_t k = points.size();
  int m = static_cast<int>(s.size()) + 1;
  int l = m + 1;
  while ((uint64_t{1} << (l - m)) < k) ++l;
  if (l > 6) throw CountExceedsSpace("resolution beyond the coded clopen spaces");

  uint64_t mask = 0;
  // the zero side: all cells starting with 0 followed by the chosen word
  for (uint64_t v = 0; v < uint64_t{1} << l; ++v) {
    if (v >> (l - 1) & 1) continue;
    bool under = true;
    for (size_t i = 0; i < s.size() && under; ++i)
      under = (v >> (l - 2 - i) & 1) == s[i];
    if (under) mask |= uint64_t{1} << v;
  }
  // the one side: cells avoiding every sampled point, lowest values first
  uint64_t want = (uint64_t{1} << (l - 1)) - (uint64_t{1} << (l - m));
  uint64_t taken = 0;
  for (uint64_t w = 0; w < uint64_t{1} << (l - 1) && taken < want; ++w) {
    bool avoided = true;
    for (const auto& p : points) {
      if (padded_digit(p, 0) != 1) continue;
      bool match = true;
      for (int i = 0; i < l - 1 && match; ++i)
        match = (w >> (l - 2 - i) & 1) == padded_digit(p, i + 1);
      if (match) {
        avoided = false;
        break;
      }
    }
    if (avoided) {
      mask |= uint64_t{1} << ((uint64_t{1} << (l - 1)) | w);
      ++taken;
    }
  }
  if (taken != want)
    throw std::logic_error("cell counting left too few cylinders on the one side");
  if (static_cast<uint64_t>(std::popcount(mask)) != uint64_t{1} << (l - 1))
    throw std::logic_error("witness is not half measure");
  return ClopenWitness{l, clopen_code(l, mask), picked};
}

uint64_t mazur_class(uint64_t n, uint64_t local) {
  if (n == 0) throw IndexZero("function parts start at 1");
  auto g = mazur_fn(n, local);
  std::vector<bool> present(2 * n, false);
  for (auto v : g) present[v] = true;
  for (uint64_t i = 0; i < 2 * n; ++i)
    if (!present[i]) return i;
  throw std::logic_error("a function on n points cannot cover 2n values");
}

std::vector<std::vector<uint64_t>> mazur_partition(uint64_t n) {
  if (n == 0) throw IndexZero("function parts start at 1");
  uint64_t card = mazur_part_card(n);
  if (card > 4000000)
    throw GroundTooLarge("partition enumeration needs all (2n)^n functions");
  std::vector<std::vector<uint64_t>> classes(n + 1);
  for (uint64_t local = 0; local < card; ++local) {
    uint64_t i = mazur_class(n, local);
    if (i > n) throw std::logic_error("least missing value beyond n");
    classes[i].push_back(local);
  }
  return classes;
}

WitnessMap mazur_edfin_map() {
  WitnessMap f;
  f.source = mazur_sum();
  f.target = delta_space();
  f.rule = "mazur-edfin";
  f.apply = [](uint64_t c) {
    auto [n, local] = unpair_code(c);
    return delta_code(n, mazur_class(n, local));
  };
  FiberFn fiber = [](uint64_t y) -> std::optional<std::vector<uint64_t>> {
    auto [n, i] = delta_point(y);
    std::vector<uint64_t> pre;
    if (n == 0) return pre;  // parts start at 1
    uint64_t card = mazur_part_card(n);
    if (card > 100000) return std::nullopt;
    for (uint64_t local = 0; local < card; ++local)
      if (mazur_class(n, local) == i) pre.push_back(pair_code(n, local));
    std::sort(pre.begin(), pre.end());
    return pre;
  };
  f.pull_back = fiber_pull_back(f.source, std::move(fiber), true);
  f.finite_to_one = Trool::Yes;
  return f;
}

namespace {

struct FamilyData {
  uint64_t count = 0;
  std::vector<std::vector<uint64_t>> sets;  // sorted
  bool contains(uint64_t n, uint64_t x) const {
    const auto& s = sets[n];
    return std::binary_search(s.begin(), s.end(), x);
  }
};

// one allocation pass over a fixed universe; empty result means it ran out
std::optional<std::vector<std::vector<uint64_t>>> allocate_family(
    uint64_t count, uint64_t universe, uint64_t slack,
    const std::vector<std::vector<uint8_t>>& words) {
  std::vector<std::vector<uint64_t>> sets;
  std::vector<uint32_t> cell(universe, 0);  // bitmask of sets holding the point
  std::vector<bool> incomparable(count * count, false);
  for (uint64_t j = 0; j < count; ++j)
    for (uint64_t k = 0; k < count; ++k)
      incomparable[j * count + k] =
          !word_prefix(words[j], words[k]) && !word_prefix(words[k], words[j]);

  for (uint64_t n = 0; n < count; ++n) {
    std::map<uint32_t, std::vector<uint64_t>> buckets;
    uint32_t seen = (uint32_t{1} << n) - 1;
    for (uint64_t p = 0; p < universe; ++p) buckets[cell[p] & seen].push_back(p);

    std::vector<uint64_t> chosen;
    for (uint32_t mask = 0; mask <= seen; ++mask) {
      bool relevant = true;
      for (uint64_t k = 0; k < n && relevant; ++k) {
        if (!(mask >> k & 1)) continue;
        relevant = incomparable[k * count + n];
        for (uint64_t j = k + 1; j < n && relevant; ++j)
          if (mask >> j & 1) relevant = incomparable[k * count + j];
      }
      if (!relevant) continue;
      auto it = buckets.find(mask);
      size_t have = it == buckets.end() ? 0 : it->second.size();
      if (have < 2 * slack) return std::nullopt;
      // alternate along the cell so both sides keep at least `slack` points
      for (size_t i = 0; i < have; i += 2) chosen.push_back(it->second[i]);
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto p : chosen) cell[p] |= uint32_t{1} << n;
    sets.push_back(std::move(chosen));
  }
  return sets;
}

}  // namespace

EdfinFamily ib_to_edfin_family(uint64_t count, uint64_t universe, uint64_t slack) {
  if (count == 0) throw IndexZero("the family needs at least one set");
  if (count > 16)
    throw GroundTooLarge("Boolean cell bookkeeping is exponential in the family size");
  if (slack == 0) throw std::invalid_argument("slack must be positive");

  std::vector<std::vector<uint8_t>> words;
  for (uint64_t j = 0; j < count; ++j) words.push_back(binseq_word(j));

  uint64_t m = std::max<uint64_t>(universe, 4 * slack * count * count);
  std::optional<std::vector<std::vector<uint64_t>>> sets;
  for (int attempt = 0; attempt < 24 && !sets; ++attempt) {
    sets = allocate_family(count, m, slack, words);
    if (!sets) m *= 2;
  }
  if (!sets) throw UniverseExhausted("no universe size satisfied the cell splits");

  auto data = std::make_shared<FamilyData>();
  data->count = count;
  data->sets = *sets;

  EdfinFamily out;
  out.sets = std::move(*sets);
  out.universe = m;
  out.slack = slack;
  out.map.source = delta_space();
  out.map.target = binary_seq();
  out.map.rule = "ib-edfin(" + std::to_string(count) + "," + std::to_string(slack) + ")";
  out.map.apply = [](uint64_t c) { return delta_point(c).second; };
  out.map.domain = [data](uint64_t c) {
    auto [i, j] = delta_point(c);
    return j < data->count && data->contains(j, i);
  };
  FiberFn fiber = [data](uint64_t w) -> std::optional<std::vector<uint64_t>> {
    std::vector<uint64_t> pre;
    if (w >= data->count) return pre;
    for (auto i : data->sets[w])
      if (i >= w) pre.push_back(delta_code(i, w));
    std::sort(pre.begin(), pre.end());
    return pre;
  };
  out.map.pull_back = fiber_pull_back(out.map.source, std::move(fiber), false);
  out.map.finite_to_one = Trool::Yes;
  return out;
}

ReductionReport verify_rk(const WitnessMap& f, const IdealOracle& image_ideal,
                          const IdealOracle& source_ideal,
                          const std::vector<Descr>& tests, const Budget& b) {
  if (!same_space(*f.target, *image_ideal.space))
    throw SpaceMismatch("map target must carry the image ideal");
  if (!same_space(*f.source, *source_ideal.space))
    throw SpaceMismatch("map source must carry the source ideal");

  ReductionReport report;
  for (const auto& test : tests) {
    ReductionPair pair{test, d_empty(f.source), Verdict{}, Verdict{}, false,
                       false, false, ""};
    pair.image_verdict = image_ideal.decide(test, b);

    std::optional<Descr> pre;
    if (f.pull_back) {
      pre = f.pull_back(test);
      if (pre) {
        pair.exact = true;
        pair.note = "closed-form preimage";
      }
    }
    if (!pre) {
      uint64_t n = clamp_prefix(*f.source, b.prefix);
      bool whole = !space_infinite(*f.source) && n == space_card(*f.source);
      auto pool = enumerate_space(*f.source, n);
      std::vector<uint64_t> hit, miss;
      for (auto c : pool)
        (in_domain(f, c) && member(test, f.apply(c)) ? hit : miss).push_back(c);
      if (whole) {
        pair.exact = true;
        pair.note = "preimage computed over the whole finite space";
        if (hit.size() == pool.size())
          pre = d_full(f.source);
        else if (hit.empty())
          pre = d_empty(f.source);
        else if (hit.size() > pool.size() / 2)
          pre = d_compl(d_finite(f.source, std::move(miss)));
        else
          pre = d_finite(f.source, std::move(hit));
      } else {
        pair.note = "preimage materialized over the first " +
                    count_str(n, "source code") + "; membership evidence only";
        pre = d_finite(f.source, std::move(hit));
      }
    }
    pair.preimage = std::move(*pre);
    pair.preimage_verdict = source_ideal.decide(pair.preimage, b);

    VerdictKind vi = pair.image_verdict.kind;
    VerdictKind vj = pair.preimage_verdict.kind;
    pair.conflict = pair.exact && proved(vi) && proved(vj) && vi != vj;
    pair.flagged = !pair.conflict && ((in_evidence(vi) && out_evidence(vj)) ||
                                      (out_evidence(vi) && in_evidence(vj)));
    if (pair.conflict) {
      report.consistent = false;
      report.failures.push_back("test " + print_descr(test) + ": image " +
                                std::string(verdict_name(vi)) + " but preimage " +
                                std::string(verdict_name(vj)));
    }
    report.pairs.push_back(std::move(pair));
  }
  return report;
}

DiagonalReport summable_diagonalize(const WeightRule& weights, const WitnessMap& f,
                                    uint64_t prefix, uint64_t levels) {
  if (f.source->kind != Space::Kind::Omega)
    throw SpaceMismatch("weights index the naturals");
  if (f.target->kind != Space::Kind::BinarySeq)
    throw SpaceMismatch("diagonalization targets binary words");
  if (levels > 32) throw std::invalid_argument("level budget is capped at 32");
  if (levels == 0)
    levels = std::clamp<uint64_t>(prefix ? std::bit_width(prefix) - 1 : 1, 4, 16);

  std::unordered_map<uint64_t, Rat> fiber_weight;
  for (uint64_t c = 0; c < prefix; ++c) {
    if (!in_domain(f, c)) continue;
    fiber_weight[f.apply(c)] += weights.at(c);
  }

  DiagonalReport out;
  for (uint64_t k = 0; k < levels; ++k) {
    std::vector<uint8_t> word(k, 0);
    uint64_t best_code = 0, best_n = 0;
    Rat best_weight = 0;
    for (uint64_t n = 1; k + n <= 48; ++n) {
      word.push_back(1);
      uint64_t code = binseq_code(word);
      auto it = fiber_weight.find(code);
      Rat w = it == fiber_weight.end() ? Rat(0) : it->second;
      if (best_n == 0 || w < best_weight) {
        best_code = code;
        best_n = n;
        best_weight = w;
      }
      if (best_weight == 0) break;  // weights are nonnegative
    }
    out.chosen_words.push_back(best_code);
    out.chosen_ones.push_back(best_n);
    out.level_weights.push_back(best_weight);
    out.preimage_weight += best_weight;
    if (best_weight >= rat(1, uint64_t{1} << k)) out.flagged_levels.push_back(k);
  }
  return out;
}

}  // namespace iw
