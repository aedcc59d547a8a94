#include "iw/submeasure.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

namespace iw {

namespace {

bool word_prefix(const std::vector<uint8_t>& u, const std::vector<uint8_t>& v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

// min |F|, F a set of cells, such that every mask in `masks` meets the
// acceptance predicate for F. Searched by increasing size, lexicographic
// within a size; `hits` decides whether a single mask is taken care of by F.
template <typename Hits>
ExtRat min_cover(uint32_t cells, const std::vector<uint64_t>& masks, Hits hits) {
  for (uint32_t size = 0; size <= cells; ++size) {
    std::vector<uint32_t> idx(size);
    for (uint32_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      uint64_t fmask = 0;
      for (uint32_t i : idx) fmask |= uint64_t{1} << i;
      bool covered = true;
      for (uint64_t m : masks)
        if (!hits(m, fmask)) {
          covered = false;
          break;
        }
      if (covered) return ExtRat(rat(size));
      // next size-`size` combination in lex order
      int32_t j = static_cast<int32_t>(size) - 1;
      while (j >= 0 && idx[j] == cells - size + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (uint32_t i = j + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  throw std::logic_error("cover search exhausted all cell sets");
}

std::vector<uint64_t> mazur_range_masks(uint64_t n, const std::vector<uint64_t>& locals) {
  std::vector<uint64_t> masks;
  masks.reserve(locals.size());
  for (uint64_t loc : locals) {
    uint64_t m = 0;
    for (uint32_t v : mazur_fn(n, loc)) m |= uint64_t{1} << v;
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

// shared by `mazur` (part inferred) and `mazur:<n>` (part pinned)
std::vector<LpConstraint> mazur_union_family(uint64_t pinned, const std::vector<uint64_t>& ground) {
  if (ground.empty()) return {};
  uint64_t part = 0;
  std::vector<std::pair<uint64_t, uint64_t>> pts;  // (code, range mask)
  for (uint64_t c : ground) {
    auto [n, loc] = unpair_code(c);
    if (part == 0) part = n;
    if (n != part) throw NoReducedFamily("cover-union family needs a ground inside one part");
    uint64_t m = 0;
    for (uint32_t v : mazur_fn(n, loc)) m |= uint64_t{1} << v;
    pts.emplace_back(c, m);
  }
  if (pinned != 0 && part != pinned)
    throw NoReducedFamily("ground lies outside part " + std::to_string(pinned));
  uint32_t cells = static_cast<uint32_t>(2 * part);
  std::vector<LpConstraint> fam;
  for (uint64_t fmask = 1; fmask < (uint64_t{1} << cells); ++fmask) {
    LpConstraint con;
    for (auto& [code, range] : pts)
      if ((range & fmask) != fmask) con.codes.push_back(code);  // code lies in some M_i, i in F
    if (con.codes.empty()) continue;
    con.bound = rat(std::popcount(fmask));
    con.tag = "cover-union";
    fam.push_back(std::move(con));
  }
  return fam;
}

Submeasure mazur_core(uint64_t pinned) {
  Submeasure s;
  s.space = mazur_sum();
  s.label = pinned ? "mazur:" + std::to_string(pinned) : "mazur";
  s.eval = [s0 = s.space](const std::vector<uint64_t>& codes) {
    std::map<uint64_t, std::vector<uint64_t>> parts;
    for (uint64_t c : codes) {
      if (!valid_code(*s0, c)) throw SpaceMismatch("code " + std::to_string(c) + " invalid for mazur");
      auto [n, loc] = unpair_code(c);
      parts[n].push_back(loc);
    }
    ExtRat best{rat(0)};
    for (auto& [n, locals] : parts) best = ext_max(best, mazur_phi(n, locals));
    return best;
  };
  s.reduced = [pinned](const std::vector<uint64_t>& ground) { return mazur_union_family(pinned, ground); };
  return s;
}

uint64_t parse_index(const std::string& text, const char* what) {
  try {
    size_t used = 0;
    unsigned long v = std::stoul(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(std::string("bad ") + what + ": " + text);
  }
}

}  // namespace

WeightRule parse_weight_rule(const std::string& text) {
  auto weight = [&](const std::string& t) {
    try {
      return parse_rat(t);
    } catch (const std::exception&) {
      throw SyntaxError("bad weight '" + t + "' in rule: " + text);
    }
  };
  WeightRule r;
  auto tail_of = [&](const std::string& t, WeightRule& out) {
    if (t == "1/(n+1)") {
      out.harmonic_tail = true;
      return;
    }
    out.harmonic_tail = false;
    out.constant_tail = weight(t);
    if (out.constant_tail <= 0) throw SyntaxError("weight tail must be positive, got " + t);
  };
  auto semi = text.find(';');
  if (semi == std::string::npos) {
    r.prefix.clear();
    tail_of(text, r);
    return r;
  }
  std::string head = text.substr(0, semi);
  size_t pos = 0;
  while (!head.empty()) {
    auto comma = head.find(',', pos);
    std::string item = head.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw SyntaxError("empty weight entry in: " + text);
    Rat w = weight(item);
    if (w < 0) throw SyntaxError("negative weight in: " + text);
    r.prefix.push_back(w);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  tail_of(text.substr(semi + 1), r);
  return r;
}

std::string print_weight_rule(const WeightRule& r) {
  std::string tail = r.harmonic_tail ? "1/(n+1)" : rat_str(r.constant_tail);
  if (r.prefix.empty()) return tail;
  std::string out;
  for (size_t i = 0; i < r.prefix.size(); ++i) {
    if (i) out += ',';
    out += rat_str(r.prefix[i]);
  }
  return out + ";" + tail;
}

Submeasure counting_submeasure() {
  Submeasure s;
  s.space = omega();
  s.label = "counting";
  s.eval = [](const std::vector<uint64_t>& codes) { return ExtRat(rat(codes.size())); };
  s.reduced = [](const std::vector<uint64_t>& ground) {
    std::vector<LpConstraint> fam;
    for (uint64_t c : ground) fam.push_back({{c}, rat(1), "point"});
    return fam;
  };
  s.infinite_implies_divergent = true;
  return s;
}

Submeasure summable_submeasure(WeightRule rule) {
  for (const Rat& w : rule.prefix)
    if (w < 0) throw SyntaxError("negative weight in rule " + print_weight_rule(rule));
  if (!rule.harmonic_tail && rule.constant_tail <= 0)
    throw SyntaxError("weight tail must be positive in rule " + print_weight_rule(rule));
  Submeasure s;
  s.space = omega();
  s.label = "summable:" + print_weight_rule(rule);
  s.eval = [rule](const std::vector<uint64_t>& codes) {
    Rat total = 0;
    for (uint64_t c : codes) total += rule.at(c);
    return ExtRat(total);
  };
  s.reduced = [rule](const std::vector<uint64_t>& ground) {
    std::vector<LpConstraint> fam;
    for (uint64_t c : ground) fam.push_back({{c}, rule.at(c), "point"});
    return fam;
  };
  s.infinite_implies_divergent = !rule.harmonic_tail;  // positive constant tail
  return s;
}

Submeasure density_submeasure() {
  Submeasure s;
  s.space = omega();
  s.label = "density";
  // blocks B_n = [2^n - 1, 2^{n+1} - 1), value = max_n |A cap B_n| / 2^n
  s.eval = [](const std::vector<uint64_t>& codes) {
    std::map<int, uint64_t> per_block;
    for (uint64_t c : codes) per_block[std::bit_width(c + 1) - 1]++;
    Rat best = 0;
    for (auto& [n, count] : per_block) {
      Rat w = Rat(count) / Rat(mpz_class(1) << n);
      if (best < w) best = w;
    }
    return ExtRat(best);
  };
  return s;
}

Submeasure antichain_submeasure() {
  Submeasure s;
  s.space = binary_seq();
  s.label = "ib";
  s.eval = [](const std::vector<uint64_t>& codes) {
    std::vector<std::vector<uint8_t>> words;
    words.reserve(codes.size());
    for (uint64_t c : codes) words.push_back(binseq_word(c));
    uint64_t maximal = 0;
    for (size_t i = 0; i < words.size(); ++i) {
      bool has_ext = false;
      for (size_t j = 0; j < words.size() && !has_ext; ++j)
        if (j != i && word_prefix(words[i], words[j])) has_ext = true;
      if (!has_ext) ++maximal;
    }
    return ExtRat(rat(maximal));
  };
  s.reduced = [](const std::vector<uint64_t>& ground) {
    std::vector<std::vector<uint8_t>> words;
    for (uint64_t c : ground) words.push_back(binseq_word(c));
    std::vector<LpConstraint> fam;
    for (size_t i = 0; i < words.size(); ++i) {
      bool has_ext = false;
      for (size_t j = 0; j < words.size() && !has_ext; ++j)
        if (j != i && word_prefix(words[i], words[j])) has_ext = true;
      if (has_ext) continue;
      LpConstraint chain;  // everything below one maximal word
      for (size_t j = 0; j < words.size(); ++j)
        if (word_prefix(words[j], words[i])) chain.codes.push_back(ground[j]);
      std::sort(chain.codes.begin(), chain.codes.end());
      chain.bound = rat(1);
      chain.tag = "chain";
      fam.push_back(std::move(chain));
    }
    return fam;
  };
  return s;
}

Submeasure edfin_submeasure() {
  Submeasure s;
  s.space = delta_space();
  s.label = "edfin";
  s.eval = [](const std::vector<uint64_t>& codes) {
    std::map<uint64_t, uint64_t> sections;
    uint64_t best = 0;
    for (uint64_t c : codes) best = std::max(best, ++sections[delta_point(c).first]);
    return ExtRat(rat(best));
  };
  s.reduced = [](const std::vector<uint64_t>& ground) {
    std::map<uint64_t, std::vector<uint64_t>> sections;
    for (uint64_t c : ground) sections[delta_point(c).first].push_back(c);
    uint64_t family_size = 1;
    for (auto& [i, sec] : sections) {
      family_size *= sec.size() + 1;
      if (family_size > 200000) throw NoReducedFamily("transversal family too large for this ground");
    }
    // all nonempty picks of at most one point per section, bound 1
    std::vector<LpConstraint> fam;
    std::vector<std::pair<const std::vector<uint64_t>*, size_t>> counter;
    for (auto& [i, sec] : sections) counter.push_back({&sec, 0});
    while (true) {
      // advance mixed-radix counter (0 = skip the section)
      size_t k = 0;
      while (k < counter.size()) {
        if (++counter[k].second <= counter[k].first->size()) break;
        counter[k].second = 0;
        ++k;
      }
      if (k == counter.size()) break;
      LpConstraint t;
      for (auto& [sec, pick] : counter)
        if (pick > 0) t.codes.push_back((*sec)[pick - 1]);
      std::sort(t.codes.begin(), t.codes.end());
      t.bound = rat(1);
      t.tag = "transversal";
      fam.push_back(std::move(t));
    }
    return fam;
  };
  return s;
}

ExtRat mazur_phi(uint64_t n, const std::vector<uint64_t>& locals) {
  if (n == 0) throw IndexZero("mazur part index must be >= 1");
  if (n > 16) throw CountExceedsSpace("mazur part out of desk range: " + std::to_string(n));
  auto masks = mazur_range_masks(n, locals);
  // F covers B iff no g in B has F inside its range
  return min_cover(static_cast<uint32_t>(2 * n), masks,
                   [](uint64_t range, uint64_t fmask) { return (range & fmask) != fmask; });
}

Submeasure mazur_submeasure() { return mazur_core(0); }

Submeasure mazur_part_submeasure(uint64_t n) {
  if (n == 0) throw IndexZero("mazur part index must be >= 1");
  return mazur_core(n);
}

Submeasure solecki_cover_submeasure(int l) {
  if (l < 1) throw IndexZero("resolution must be >= 1");
  if (l > 5) throw CountExceedsSpace("resolution out of desk range: " + std::to_string(l));
  Submeasure s;
  s.space = clopen_half(l);
  s.label = "solecki:" + std::to_string(l);
  uint32_t cells = uint32_t{1} << l;
  s.eval = [l, cells, s0 = s.space](const std::vector<uint64_t>& codes) {
    std::vector<uint64_t> masks;
    masks.reserve(codes.size());
    for (uint64_t c : codes) {
      if (!valid_code(*s0, c)) throw SpaceMismatch("code " + std::to_string(c) + " invalid for solecki");
      masks.push_back(clopen_mask(l, c));
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    // F covers when every member contains a cell of F
    return min_cover(cells, masks, [](uint64_t member, uint64_t fmask) { return (member & fmask) != 0; });
  };
  s.reduced = [l, cells](const std::vector<uint64_t>& ground) {
    if (ground.size() << cells > (uint64_t{1} << 22))
      throw NoReducedFamily("cell-union family too large at this resolution");
    std::vector<LpConstraint> fam;
    for (uint64_t fmask = 1; fmask < (uint64_t{1} << cells); ++fmask) {
      LpConstraint con;
      for (uint64_t c : ground)
        if (clopen_mask(l, c) & fmask) con.codes.push_back(c);
      if (con.codes.empty()) continue;
      con.bound = rat(std::popcount(fmask));
      con.tag = "cell-union";
      fam.push_back(std::move(con));
    }
    return fam;
  };
  return s;
}

Submeasure submeasure_by_id(const std::string& id) {
  if (id == "counting") return counting_submeasure();
  if (id == "summable") return summable_submeasure(parse_weight_rule("1/(n+1)"));
  if (id.rfind("summable:", 0) == 0) return summable_submeasure(parse_weight_rule(id.substr(9)));
  if (id == "density") return density_submeasure();
  if (id == "ib") return antichain_submeasure();
  if (id == "edfin") return edfin_submeasure();
  if (id == "mazur") return mazur_submeasure();
  if (id.rfind("mazur:", 0) == 0) return mazur_part_submeasure(parse_index(id.substr(6), "part index"));
  if (id.rfind("solecki:", 0) == 0)
    return solecki_cover_submeasure(static_cast<int>(parse_index(id.substr(8), "resolution")));
  throw SyntaxError("unknown submeasure id: " + id);
}

std::vector<std::string> catalogue_submeasure_ids() {
  return {"counting", "summable:1/(n+1)", "density", "ib", "edfin", "mazur", "mazur:2", "solecki:2", "solecki:3"};
}

namespace {

struct AxiomSink {
  AxiomReport rep;
  bool fail(std::string why, std::vector<uint64_t> f, std::vector<uint64_t> g) {
    rep.passed = false;
    rep.failure = std::move(why);
    rep.witness_f = std::move(f);
    rep.witness_g = std::move(g);
    return false;
  }
  // null `why` on success
  const char* pair(const ExtRat& ff, const ExtRat& fg, const ExtRat& fu) {
    rep.checks += 3;
    if (!(ff <= fu)) return "monotonicity: value drops when extending the first set";
    if (!(fg <= fu)) return "monotonicity: value drops when extending the second set";
    if (!(fu <= ff + fg)) return "subadditivity fails on the union";
    return nullptr;
  }
};

std::vector<uint64_t> sorted_union(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  std::vector<uint64_t> u;
  u.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

// first `count` codes, or all of them on a small space
std::vector<uint64_t> pool_of(const Space& s, uint64_t count) {
  if (!space_infinite(s)) count = std::min(count, space_card(s));
  return enumerate_space(s, count);
}

}  // namespace

AxiomReport check_axioms(const Submeasure& phi, uint64_t prefix, uint64_t trials, uint64_t seed) {
  AxiomSink sink;
  auto pool = pool_of(*phi.space, prefix);
  if (!(phi.eval({}) == ExtRat(rat(0)))) {
    sink.fail("empty set must get value 0", {}, {});
    return sink.rep;
  }
  ++sink.rep.checks;
  for (uint64_t c : pool) {
    ++sink.rep.checks;
    if (phi.eval({c}).infinite) {
      sink.fail("singleton with infinite value", {c}, {});
      return sink.rep;
    }
  }
  std::mt19937_64 rng(seed);
  auto subset = [&]() {
    std::vector<uint64_t> out;
    uint64_t bits = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (i % 64 == 0) bits = rng();
      if ((bits >> (i % 64)) & 1) out.push_back(pool[i]);
    }
    return out;
  };
  for (uint64_t t = 0; t < trials; ++t) {
    auto f = subset(), g = subset();
    auto u = sorted_union(f, g);
    if (const char* why = sink.pair(phi.eval(f), phi.eval(g), phi.eval(u))) {
      sink.fail(why, f, g);
      return sink.rep;
    }
  }
  return sink.rep;
}

AxiomReport check_axioms_exhaustive(const Submeasure& phi, uint64_t count) {
  if (count > 20) throw GroundTooLarge("exhaustive axiom check capped at 20 codes");
  AxiomSink sink;
  auto pool = pool_of(*phi.space, count);
  count = pool.size();
  uint64_t total = uint64_t{1} << count;
  auto codes_of = [&](uint64_t mask) {
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i < count; ++i)
      if ((mask >> i) & 1) out.push_back(pool[i]);
    return out;
  };
  std::vector<ExtRat> value(total);
  for (uint64_t mask = 0; mask < total; ++mask) value[mask] = phi.eval(codes_of(mask));
  if (!(value[0] == ExtRat(rat(0)))) {
    sink.fail("empty set must get value 0", {}, {});
    return sink.rep;
  }
  ++sink.rep.checks;
  for (uint64_t i = 0; i < count; ++i) {
    ++sink.rep.checks;
    if (value[uint64_t{1} << i].infinite) {
      sink.fail("singleton with infinite value", {pool[i]}, {});
      return sink.rep;
    }
  }
  for (uint64_t f = 0; f < total; ++f)
    for (uint64_t g = f; g < total; ++g) {
      if (const char* why = sink.pair(value[f], value[g], value[f | g])) {
        sink.fail(why, codes_of(f), codes_of(g));
        return sink.rep;
      }
    }
  return sink.rep;
}

TailProfile tail_profile(const Submeasure& phi, const Descr& d, const std::vector<uint64_t>& cuts,
                         uint64_t prefix) {
  if (!same_space(*d.space, *phi.space)) throw SpaceMismatch("description lives in another space");
  TailProfile tp;
  tp.prefix = prefix;
  auto pool = pool_of(*phi.space, prefix);
  for (uint64_t cut : cuts) {
    std::vector<uint64_t> codes;
    for (size_t i = cut; i < pool.size(); ++i)
      if (member(d, pool[i])) codes.push_back(pool[i]);
    tp.samples.emplace_back(cut, phi.eval(codes));
  }
  for (auto& [cut, v] : tp.samples)
    if (v == ExtRat(rat(0))) {
      tp.vanishing = true;
      tp.floor = ExtRat(rat(0));
      tp.at_cut = cut;
      return tp;
    }
  if (!tp.samples.empty()) {
    tp.floor = tp.samples.back().second;
    tp.at_cut = tp.samples.back().first;
  }
  return tp;
}

}  // namespace iw
