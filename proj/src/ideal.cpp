#include "iw/ideal.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>

#include "iw/analysis.hpp"

namespace iw {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::ProvedIn: return "ProvedIn";
    case VerdictKind::BoundedUpTo: return "BoundedUpTo";
    case VerdictKind::Unknown: return "Unknown";
    case VerdictKind::DivergentUpTo: return "DivergentUpTo";
    case VerdictKind::ProvedOut: return "ProvedOut";
  }
  return "Unknown";
}

const char* trool_name(Trool t) {
  switch (t) {
    case Trool::Yes: return "yes";
    case Trool::No: return "no";
    case Trool::Maybe: return "maybe";
  }
  return "maybe";
}

Verdict v_in(std::string why) {
  Verdict v;
  v.kind = VerdictKind::ProvedIn;
  v.certificate.push_back(std::move(why));
  return v;
}

Verdict v_out(std::string why) {
  Verdict v;
  v.kind = VerdictKind::ProvedOut;
  v.certificate.push_back(std::move(why));
  return v;
}

Verdict v_bounded(ExtRat bound, uint64_t prefix, std::string why) {
  Verdict v;
  v.kind = VerdictKind::BoundedUpTo;
  v.bound = std::move(bound);
  v.prefix = prefix;
  v.certificate.push_back(std::move(why));
  return v;
}

Verdict v_divergent(uint64_t level, uint64_t prefix, std::string why) {
  Verdict v;
  v.kind = VerdictKind::DivergentUpTo;
  v.level = level;
  v.prefix = prefix;
  v.certificate.push_back(std::move(why));
  return v;
}

Verdict v_unknown(std::string why) {
  Verdict v;
  v.certificate.push_back(std::move(why));
  return v;
}

namespace {

int verdict_rank(VerdictKind k) {
  switch (k) {
    case VerdictKind::ProvedIn: return 0;
    case VerdictKind::BoundedUpTo: return 1;
    case VerdictKind::Unknown: return 2;
    case VerdictKind::DivergentUpTo: return 3;
    case VerdictKind::ProvedOut: return 4;
  }
  return 2;
}

}  // namespace

Verdict verdict_and(Verdict a, const Verdict& b) {
  if (verdict_rank(b.kind) > verdict_rank(a.kind)) a.kind = b.kind;
  a.bound = ext_max(a.bound, b.bound);
  a.level = std::max(a.level, b.level);
  a.prefix = std::max(a.prefix, b.prefix);
  a.certificate.insert(a.certificate.end(), b.certificate.begin(),
                       b.certificate.end());
  return a;
}

Budget parse_budget(const std::string& text) {
  std::vector<uint64_t> vals;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
      throw SyntaxError("budget wants comma-separated counts", start);
    vals.push_back(std::stoull(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.empty() || vals.size() > 3)
    throw SyntaxError("budget takes one to three fields: prefix[,level[,depth]]");
  for (auto v : vals)
    if (v == 0) throw SyntaxError("budget fields must be positive");
  Budget b;
  b.prefix = vals[0];
  if (vals.size() > 1) b.level = vals[1];
  if (vals.size() > 2) b.depth = vals[2];
  return b;
}

Budget budget_from_env() {
  const char* e = std::getenv("IDEALC_BUDGET");
  if (!e || !*e) return Budget{};
  return parse_budget(e);
}

namespace {

std::string count_str(uint64_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

void indent_into(std::vector<std::string>& lines, const Verdict& v) {
  for (const auto& line : v.certificate) lines.push_back("  " + line);
}

IdealOracle make_oracle(SpacePtr sp, std::string prov, IdealAttrs attrs,
                        std::function<Verdict(const Descr&, const Budget&)> raw) {
  IdealOracle o;
  o.space = sp;
  o.provenance = std::move(prov);
  o.attrs = attrs;
  o.decide = [sp, raw = std::move(raw)](const Descr& d, const Budget& b) {
    if (!d.space || !same_space(*d.space, *sp))
      throw SpaceMismatch("description lives on a different space than the oracle");
    if (b.prefix == 0 || b.level == 0 || b.depth == 0)
      throw std::invalid_argument("budget fields must all be positive");
    return raw(d, b);
  };
  return o;
}

// Section traces keep only the plain set constructors, which transfer to any
// space whose codes cover the trace's codes (part codings are onto omega).
Descr rehost(const Descr& t, SpacePtr sp) {
  if (same_space(*t.space, *sp)) return t;
  switch (t.kind) {
    case Descr::Kind::Empty:
      return d_empty(sp);
    case Descr::Kind::Full:
      return d_full(sp);
    case Descr::Kind::Finite:
      return d_finite(sp, t.codes);
    case Descr::Kind::Complement:
      return d_compl(rehost(*t.a, sp));
    case Descr::Kind::Union:
      return d_union(rehost(*t.a, sp), rehost(*t.b, sp));
    case Descr::Kind::Intersection:
      return d_inter(rehost(*t.a, sp), rehost(*t.b, sp));
    default:
      throw SpaceMismatch("section trace uses constructors tied to its own part");
  }
}

// Watch the mass of the described set over growing code prefixes.
Verdict growth_scan(const Submeasure& phi, const Descr& d, const Budget& b) {
  uint64_t want = b.prefix;
  if (!space_infinite(*phi.space))
    want = std::min(want, space_card(*phi.space));
  auto pool = enumerate_space(*phi.space, want);
  ExtRat threshold{Rat(static_cast<unsigned long>(b.level))};
  std::vector<uint64_t> got;
  ExtRat val;
  for (uint64_t m = 0; m < pool.size(); ++m) {
    if (!member(d, pool[m])) continue;
    got.push_back(pool[m]);
    val = phi.eval(got);
    if (threshold < val)
      return v_divergent(b.level, m + 1,
                         "mass passes " + std::to_string(b.level) +
                             " within the first " + count_str(m + 1, "code") +
                             " of the space");
  }
  return v_bounded(val, pool.size(),
                   "mass over the first " + count_str(pool.size(), "code") +
                       " is " + ext_str(val) + ", below the divergence level " +
                       std::to_string(b.level));
}

using StructuralRule =
    std::function<std::optional<Verdict>(const Descr&, const Budget&)>;

IdealOracle fin_core(const Submeasure& phi, std::vector<StructuralRule> rules,
                     std::string prov, IdealAttrs attrs) {
  Submeasure sub = phi;
  return make_oracle(
      phi.space, std::move(prov), attrs,
      [sub, rules = std::move(rules)](const Descr& d, const Budget& b) -> Verdict {
        for (const auto& rule : rules)
          if (auto v = rule(d, b)) return *v;
        if (auto codes = try_finite_codes(d)) {
          ExtRat val = sub.eval(*codes);
          Verdict v = v_in("finite description carrying " +
                           count_str(codes->size(), "point") + "; mass " +
                           ext_str(val) + " is finite");
          v.bound = val;
          return v;
        }
        if (auto inf = try_infinite(d); inf && *inf && sub.infinite_implies_divergent)
          return v_out("provably infinite, and every infinite set carries unbounded mass here");
        return growth_scan(sub, d, b);
      });
}

// ---------------------------------------------------------- structural rules

std::optional<Verdict> summable_tail_rule(const Descr& d, const Budget&) {
  // Any eventually periodic infinite set keeps a positive share of every long
  // interval, and both legal tail weight shapes sum beyond every bound along
  // such a set.
  auto e = try_extent(d);
  if (!e || *e == Extent::Finite) return std::nullopt;
  return v_out(
      "eventually periodic and infinite; tail weights along a periodic set sum "
      "beyond every bound");
}

std::optional<Verdict> branch_cover_rule(const Descr& d, const Budget&) {
  auto view = binseq_view(d);
  if (!view) return std::nullopt;
  if (view->cosmall)
    return v_out(
        "complement of finitely many branches plus finitely many words; such a "
        "set contains an infinite antichain, which no finite branch family "
        "absorbs");
  Verdict v = v_in("covered by " + count_str(view->branches, "branch") +
                   " with " + count_str(view->loose, "extra word") +
                   "; antichains inside are bounded by that count");
  v.bound = ExtRat{Rat(static_cast<unsigned long>(view->branches + view->loose))};
  return v;
}

std::optional<Verdict> row_cover_rule(const Descr& d, const Budget&) {
  auto view = delta_view(d);
  if (!view) return std::nullopt;
  if (view->corow)
    return v_out(
        "complement of finitely many rows plus corrections; its column "
        "sections grow without bound");
  Verdict v = v_in("contained in " + count_str(view->rows, "row") + " plus " +
                   count_str(view->loose, "extra point") +
                   "; every column section stays within that count");
  v.bound = ExtRat{Rat(static_cast<unsigned long>(view->rows + view->loose))};
  return v;
}

std::optional<Verdict> mazur_tail_rule(const Descr& d, const Budget&) {
  auto ss = sum_sections(d);
  if (!ss.tail) return std::nullopt;
  auto e = try_extent(*ss.tail);
  if (!e) return std::nullopt;
  if (*e == Extent::Finite) {
    auto codes = try_finite_codes(*ss.tail);
    if (!codes) return std::nullopt;
    Verdict v = v_in(
        "beyond finitely many parts every section matches one fixed set of " +
        count_str(codes->size(), "local code") +
        "; cover numbers stay bounded");
    v.bound = ExtRat{Rat(static_cast<unsigned long>(codes->size()))};
    return v;
  }
  if (*e == Extent::Cofinite) {
    auto missing = try_finite_codes(d_compl(*ss.tail));
    uint64_t c = missing ? missing->size() : 0;
    return v_out("beyond finitely many parts each section misses at most " +
                 count_str(c, "function") +
                 "; covering part n alone already costs n+1");
  }
  return std::nullopt;
}

// ----------------------------------------------------------------- sum split

struct SumVerdicts {
  std::vector<std::pair<uint64_t, Verdict>> parts;  // exceptional sections
  Verdict tail;      // the rule verdict for all remaining parts
  uint64_t probe;    // first part index the tail covers
};

SumVerdicts split_indexed(const SumSections& ss, const IndexedFamily& fam,
                          const Budget& b2) {
  SumVerdicts out;
  out.probe = ss.exceptional.empty() ? 0 : ss.exceptional.back().first + 1;
  for (const auto& [n, t] : ss.exceptional) {
    IdealOracle part = fam.part(n);
    out.parts.emplace_back(n, part.decide(rehost(t, part.space), b2));
  }
  if (!ss.tail) {
    out.tail = v_in("no parts remain beyond the listed ones");
    return out;
  }
  if (auto te = try_empty(*ss.tail); te && *te) {
    out.tail = v_in("sections beyond the listed parts are empty");
    return out;
  }
  auto e = try_extent(*ss.tail);
  if (e && *e == Extent::Finite) {
    out.tail = v_in(
        "cofinal sections all equal one fixed finite set, and every part "
        "ideal contains the finite sets");
    return out;
  }
  if (e && *e == Extent::Cofinite) {
    out.tail = v_out(
        "cofinal sections are cofinite inside their parts; a proper ideal "
        "over the finite sets never accepts a cofinite set");
    return out;
  }
  out.tail = v_unknown("cofinal sections fit no closed tail rule");
  return out;
}

std::string part_line(uint64_t n, const Verdict& v) {
  return "part " + std::to_string(n) + " -> " + std::string(verdict_name(v.kind));
}

}  // namespace

// ----------------------------------------------------------------- factories

IdealOracle fin_of(const Submeasure& phi) {
  return fin_core(phi, {}, "fin(" + phi.label + ")", IdealAttrs{});
}

IdealOracle finite_ideal(SpacePtr sp) {
  IdealAttrs attrs{Trool::Yes, Trool::No, Trool::Yes, Trool::Yes};
  return make_oracle(
      sp, "fin", attrs, [sp](const Descr& d, const Budget& b) -> Verdict {
        if (auto codes = try_finite_codes(d)) {
          Verdict v = v_in("finite description carrying " +
                           count_str(codes->size(), "point"));
          v.bound = ExtRat{Rat(static_cast<unsigned long>(codes->size()))};
          return v;
        }
        auto inf = try_infinite(d);
        if (inf && *inf) return v_out("provably infinite");
        if (inf && !*inf) return v_in("provably finite");
        auto pool = enumerate_space(
            *sp, space_infinite(*sp) ? b.prefix
                                     : std::min(b.prefix, space_card(*sp)));
        uint64_t count = 0;
        for (uint64_t m = 0; m < pool.size(); ++m) {
          if (!member(d, pool[m])) continue;
          ++count;
          if (count > b.level)
            return v_divergent(b.level, m + 1,
                               "more than " + std::to_string(b.level) +
                                   " points within the first " +
                                   count_str(m + 1, "code"));
        }
        return v_bounded(ExtRat{Rat(static_cast<unsigned long>(count))},
                         pool.size(),
                         count_str(count, "point") + " over the first " +
                             count_str(pool.size(), "code"));
      });
}

IdealOracle trivial_ideal(SpacePtr sp) {
  return make_oracle(sp, "{empty}", IdealAttrs{},
                     [](const Descr& d, const Budget&) -> Verdict {
                       auto e = try_empty(d);
                       if (!e)
                         return v_unknown(
                             "emptiness is not decidable in the structural fragment");
                       if (*e) return v_in("provably empty");
                       return v_out("provably inhabited");
                     });
}

IdealOracle summable_ideal(const WeightRule& rule) {
  Submeasure phi = summable_submeasure(rule);
  std::string prov = phi.label;
  return fin_core(phi, {summable_tail_rule}, std::move(prov),
                  IdealAttrs{Trool::Yes, Trool::Yes, Trool::No, Trool::Yes});
}

IdealOracle density_ideal() {
  Submeasure phi = density_submeasure();
  IdealAttrs attrs{Trool::Yes, Trool::Yes, Trool::No, Trool::No};
  return make_oracle(
      phi.space, "density", attrs,
      [phi](const Descr& d, const Budget& b) -> Verdict {
        if (auto codes = try_finite_codes(d)) {
          Verdict v = v_in("finite set of " + count_str(codes->size(), "point") +
                           "; block shares vanish beyond its largest one");
          v.bound = ExtRat{Rat(0)};
          return v;
        }
        if (auto e = try_extent(d); e && *e != Extent::Finite)
          return v_out(
              "eventually periodic and infinite; its blocks keep a fixed "
              "positive share forever");
        std::vector<uint64_t> cuts{0};
        for (uint64_t c = 4; c * 2 <= b.prefix; c *= 2) cuts.push_back(c);
        auto prof = tail_profile(phi, d, cuts, b.prefix);
        if (prof.vanishing)
          return v_bounded(ExtRat{Rat(0)}, b.prefix,
                           "sampled tail mass reaches zero at cut " +
                               std::to_string(prof.at_cut) + " within the first " +
                               count_str(b.prefix, "code"));
        return v_unknown("sampled tail mass stays at " + ext_str(prof.floor) +
                         " through cut " + std::to_string(prof.at_cut) +
                         "; the samples cannot settle a tail condition");
      });
}

IdealOracle ib_ideal() {
  return fin_core(antichain_submeasure(), {branch_cover_rule}, "ib",
                  IdealAttrs{Trool::Yes, Trool::No, Trool::No, Trool::Maybe});
}

IdealOracle edfin_ideal() {
  return fin_core(edfin_submeasure(), {row_cover_rule}, "edfin",
                  IdealAttrs{Trool::Yes, Trool::Yes, Trool::No, Trool::Yes});
}

IdealOracle mazur_ideal() {
  return fin_core(mazur_submeasure(), {mazur_tail_rule}, "mazur",
                  IdealAttrs{Trool::Yes, Trool::Yes, Trool::No, Trool::No});
}

IdealOracle solecki_ideal(int l) {
  if (l < 1) throw IndexZero("resolution must be at least 1");
  if (l > 5) throw CountExceedsSpace("resolution above 5 is not materializable");
  SpacePtr sp = clopen_half(l);
  IdealAttrs attrs{Trool::Yes, Trool::Yes, Trool::No, Trool::No};
  return make_oracle(
      sp, "solecki:" + std::to_string(l), attrs,
      [](const Descr& d, const Budget&) -> Verdict {
        enum class Tri { Small, Large, Unk };
        std::function<Tri(const Descr&)> tri = [&](const Descr& x) -> Tri {
          switch (x.kind) {
            case Descr::Kind::Empty:
            case Descr::Kind::Finite:
              return Tri::Small;
            case Descr::Kind::Full:
              return Tri::Large;
            case Descr::Kind::Complement: {
              Tri a = tri(*x.a);
              if (a == Tri::Small) return Tri::Large;
              if (a == Tri::Large) return Tri::Small;
              return Tri::Unk;
            }
            case Descr::Kind::Union: {
              Tri a = tri(*x.a), bb = tri(*x.b);
              if (a == Tri::Large || bb == Tri::Large) return Tri::Large;
              if (a == Tri::Small && bb == Tri::Small) return Tri::Small;
              return Tri::Unk;
            }
            case Descr::Kind::Intersection: {
              Tri a = tri(*x.a), bb = tri(*x.b);
              if (a == Tri::Small || bb == Tri::Small) return Tri::Small;
              if (a == Tri::Large && bb == Tri::Large) return Tri::Large;
              return Tri::Unk;
            }
            default:
              return Tri::Unk;
          }
        };
        switch (tri(d)) {
          case Tri::Small:
            return v_in(
                "assembled from explicitly listed members; such families stay "
                "small at every resolution");
          case Tri::Large:
            return v_out("complement of a small family");
          case Tri::Unk:
            return v_unknown("outside the small/large syntax fragment");
        }
        return v_unknown("outside the small/large syntax fragment");
      });
}

// --------------------------------------------------------------- combinators

IdealOracle direct_sum(IdealOracle i, IdealOracle j) {
  SpacePtr sp = disjoint_sum({i.space, j.space});
  std::string prov = "(" + i.provenance + ") (+) (" + j.provenance + ")";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [i = std::move(i), j = std::move(j)](const Descr& d, const Budget& b) -> Verdict {
        if (b.depth <= 1)
          return v_unknown("depth budget exhausted before the sum could be split");
        Budget b2 = b;
        --b2.depth;
        Verdict v0 = i.decide(section_trace(d, 0), b2);
        Verdict v1 = j.decide(section_trace(d, 1), b2);
        Verdict out = verdict_and(v0, v1);
        out.certificate.clear();
        out.certificate.push_back(part_line(0, v0));
        indent_into(out.certificate, v0);
        out.certificate.push_back(part_line(1, v1));
        indent_into(out.certificate, v1);
        return out;
      });
}

IdealOracle full_pad(IdealOracle i) {
  SpacePtr sp = disjoint_sum({i.space, omega()});
  std::string prov = "(" + i.provenance + ") (+) pow";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [i = std::move(i)](const Descr& d, const Budget& b) -> Verdict {
        if (b.depth <= 1)
          return v_unknown("depth budget exhausted before the sum could be split");
        Budget b2 = b;
        --b2.depth;
        Verdict v0 = i.decide(section_trace(d, 0), b2);
        Verdict out = v0;
        out.certificate.clear();
        out.certificate.push_back("part 1 is unrestricted");
        out.certificate.push_back(part_line(0, v0));
        indent_into(out.certificate, v0);
        return out;
      });
}

IdealOracle fubini(IdealOracle i, IdealOracle j) {
  SpacePtr sp = product(i.space, j.space);
  std::string prov = "(" + i.provenance + ") (x) (" + j.provenance + ")";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [i = std::move(i), j = std::move(j)](const Descr& d, const Budget& b) -> Verdict {
        // finite sets need no splitting, and deciding them here keeps deep
        // iterated products usable on the sections that matter
        if (auto codes = try_finite_codes(d)) {
          Verdict v = v_in("finite description carrying " +
                           count_str(codes->size(), "point") +
                           "; both factors contain the finite sets");
          v.bound = ExtRat{Rat(static_cast<unsigned long>(codes->size()))};
          return v;
        }
        if (b.depth <= 1)
          return v_unknown("depth budget exhausted before the product could be split");
        Budget b2 = b;
        --b2.depth;
        auto pc = product_classes(d);
        std::vector<std::string> lines;
        std::optional<Descr> good, bad;
        bool undecided = false;
        for (const auto& [g, t] : pc.classes) {
          Verdict vt = j.decide(t, b2);
          if (lines.size() < 12)
            lines.push_back("rows " + print_descr(g) + ": section " +
                            print_descr(t) + " -> " + verdict_name(vt.kind));
          if (vt.kind == VerdictKind::ProvedIn)
            good = good ? d_union(std::move(*good), g) : g;
          else if (vt.kind == VerdictKind::ProvedOut)
            bad = bad ? d_union(std::move(*bad), g) : g;
          else
            undecided = true;
        }
        if (pc.classes.size() > lines.size())
          lines.push_back("... " + std::to_string(pc.classes.size() - lines.size()) +
                          " further classes");
        Descr bad_upper = good ? d_compl(*good) : d_full(i.space);
        Descr bad_lower = bad ? *bad : d_empty(i.space);
        Verdict vu = i.decide(bad_upper, b2);
        if (vu.kind == VerdictKind::ProvedIn) {
          Verdict out = v_in("rows whose sections are not proved acceptable form " +
                             print_descr(bad_upper) +
                             ", itself a proved member on the left");
          out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
          indent_into(out.certificate, vu);
          return out;
        }
        Verdict vl = i.decide(bad_lower, b2);
        if (vl.kind == VerdictKind::ProvedOut) {
          Verdict out = v_out("rows with sections proved unacceptable form " +
                              print_descr(bad_lower) +
                              ", itself proved outside on the left");
          out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
          indent_into(out.certificate, vl);
          return out;
        }
        if (!undecided) {
          // every class settled, so bad_lower is exactly the bad-row set
          Verdict out = vl;
          out.certificate = lines;
          out.certificate.push_back("bad-row set is exactly " + print_descr(bad_lower) +
                                    "; the left verdict carries over");
          indent_into(out.certificate, vl);
          return out;
        }
        Verdict out = v_unknown(
            "undecided sections leave the bad-row set strictly between the "
            "sandwich bounds");
        out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
        return out;
      });
}

IdealOracle col_ext(IdealOracle i) {
  std::string prov = "col_ext(" + i.provenance + ")";
  IdealOracle o = fubini(std::move(i), trivial_ideal(omega()));
  o.provenance = std::move(prov);
  return o;
}

IdealOracle row_ext(IdealOracle j) {
  std::string prov = "row_ext(" + j.provenance + ")";
  IdealOracle o = fubini(trivial_ideal(omega()), std::move(j));
  o.provenance = std::move(prov);
  return o;
}

IdealOracle finpow(uint64_t n) {
  if (n == 0) throw IndexZero("power zero has no host space");
  IdealOracle acc = finite_ideal(omega());
  for (uint64_t k = 1; k < n; ++k) acc = fubini(finite_ideal(omega()), acc);
  acc.provenance = "fin^" + std::to_string(n);
  return acc;
}

SpacePtr indexed_host() { return disjoint_sum({}, omega()); }

IdealOracle indexed_sum(IndexedFamily parts) {
  SpacePtr sp = indexed_host();
  std::string prov = "sum_n(" + parts.label + ")";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [fam = std::move(parts)](const Descr& d, const Budget& b) -> Verdict {
        if (b.depth <= 1)
          return v_unknown("depth budget exhausted before the sum could be split");
        Budget b2 = b;
        --b2.depth;
        auto sv = split_indexed(sum_sections(d), fam, b2);
        Verdict total = sv.tail;
        std::vector<std::string> lines;
        for (const auto& [n, v] : sv.parts) {
          lines.push_back(part_line(n, v));
          indent_into(lines, v);
          total = verdict_and(std::move(total), v);
        }
        lines.push_back("parts from " + std::to_string(sv.probe) + " on -> " +
                        verdict_name(sv.tail.kind));
        indent_into(lines, sv.tail);
        total.certificate = std::move(lines);
        return total;
      });
}

IdealOracle indexed_sum_over(IdealOracle j, IndexedFamily parts) {
  if (j.space->kind != Space::Kind::Omega)
    throw SpaceMismatch("the outer ideal indexes parts, so it lives on omega");
  SpacePtr sp = indexed_host();
  std::string prov = "sum[" + j.provenance + "](" + parts.label + ")";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [j = std::move(j), fam = std::move(parts)](const Descr& d,
                                                 const Budget& b) -> Verdict {
        if (b.depth <= 1)
          return v_unknown("depth budget exhausted before the sum could be split");
        Budget b2 = b;
        --b2.depth;
        auto sv = split_indexed(sum_sections(d), fam, b2);
        std::vector<std::string> lines;
        std::vector<uint64_t> outs, mids;
        for (const auto& [n, v] : sv.parts) {
          lines.push_back(part_line(n, v));
          if (v.kind == VerdictKind::ProvedOut)
            outs.push_back(n);
          else if (v.kind != VerdictKind::ProvedIn)
            mids.push_back(n);
        }
        lines.push_back("parts from " + std::to_string(sv.probe) + " on -> " +
                        verdict_name(sv.tail.kind));
        bool tail_in = sv.tail.kind == VerdictKind::ProvedIn;
        bool tail_out = sv.tail.kind == VerdictKind::ProvedOut;
        Descr lower = outs.empty() ? d_empty(omega()) : d_finite(omega(), outs);
        if (tail_out) lower = d_union(std::move(lower), d_threshold(omega(), sv.probe));
        std::vector<uint64_t> loose = outs;
        loose.insert(loose.end(), mids.begin(), mids.end());
        std::sort(loose.begin(), loose.end());
        Descr upper = loose.empty() ? d_empty(omega()) : d_finite(omega(), loose);
        if (!tail_in) upper = d_union(std::move(upper), d_threshold(omega(), sv.probe));
        Verdict vu = j.decide(upper, b2);
        if (vu.kind == VerdictKind::ProvedIn) {
          Verdict out = v_in("parts whose sections are not proved acceptable form " +
                             print_descr(upper) + ", a proved member outside");
          out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
          indent_into(out.certificate, vu);
          return out;
        }
        Verdict vl = j.decide(lower, b2);
        if (vl.kind == VerdictKind::ProvedOut) {
          Verdict out = v_out("parts with sections proved unacceptable form " +
                              print_descr(lower) + ", proved outside the index ideal");
          out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
          indent_into(out.certificate, vl);
          return out;
        }
        if (mids.empty() && (tail_in || tail_out)) {
          Verdict out = vl;
          out.certificate = lines;
          out.certificate.push_back("bad-part set is exactly " + print_descr(lower) +
                                    "; the index verdict carries over");
          indent_into(out.certificate, vl);
          return out;
        }
        Verdict out = v_unknown(
            "undecided sections leave the bad-part set strictly between the "
            "sandwich bounds");
        out.certificate.insert(out.certificate.begin(), lines.begin(), lines.end());
        return out;
      });
}

IdealOracle meet(std::vector<IdealOracle> parts) {
  if (parts.empty()) throw std::invalid_argument("meet needs at least one component");
  for (const auto& p : parts)
    if (!same_space(*p.space, *parts.front().space))
      throw SpaceMismatch("meet components live on different spaces");
  std::string prov = "meet(";
  for (size_t k = 0; k < parts.size(); ++k)
    prov += (k ? ", " : "") + parts[k].provenance;
  prov += ")";
  SpacePtr sp = parts.front().space;
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [parts = std::move(parts)](const Descr& d, const Budget& b) -> Verdict {
        std::vector<std::string> lines;
        Verdict total;
        bool first = true;
        for (size_t k = 0; k < parts.size(); ++k) {
          Verdict v = parts[k].decide(d, b);
          lines.push_back("component " + std::to_string(k) + " -> " +
                          std::string(verdict_name(v.kind)));
          indent_into(lines, v);
          total = first ? v : verdict_and(std::move(total), v);
          first = false;
        }
        total.certificate = std::move(lines);
        return total;
      });
}

IdealOracle jfamily(const Descr& base) {
  if (base.space->kind != Space::Kind::Omega)
    throw SpaceMismatch("the support base lives on omega");
  IndexedFamily fam;
  fam.part = [](uint64_t n) { return finpow(n + 1); };
  fam.label = "fin^(n+1)";
  IdealOracle sum = indexed_sum(std::move(fam));
  SpacePtr sp = indexed_host();
  IdealOracle supp = make_oracle(
      sp, "support within " + print_descr(base), IdealAttrs{},
      [base](const Descr& d, const Budget&) -> Verdict {
        auto ss = sum_sections(d);
        std::vector<uint64_t> live;
        uint64_t fuzzy = 0;
        for (const auto& [n, t] : ss.exceptional) {
          auto e = try_empty(t);
          if (!e)
            ++fuzzy;
          else if (!*e)
            live.push_back(n);
        }
        uint64_t probe = ss.exceptional.empty() ? 0 : ss.exceptional.back().first + 1;
        auto te = ss.tail ? try_empty(*ss.tail) : std::optional<bool>(true);
        if (!te)
          return v_unknown("tail occupancy is undecidable in the structural fragment");
        uint64_t off = 0;
        for (auto n : live)
          if (!member(base, n)) ++off;
        // with an empty tail the support is finite whatever the undecided
        // sections hold, so membership is settled; fuzziness only blurs the
        // off-base count carried as evidence
        if (*te) {
          Verdict v = v_in(
              "support meets at most " + count_str(live.size() + fuzzy, "part") +
              "; " + std::to_string(off) + " of them lie off the base set" +
              (fuzzy ? " (" + count_str(fuzzy, "part") + " undecided)" : ""));
          v.bound = ExtRat{Rat(static_cast<unsigned long>(off))};
          return v;
        }
        auto e = try_extent(base);
        if (!e)
          return v_unknown("the base set's extent is outside the structural fragment");
        if (*e == Extent::Cofinite) {
          auto missing = try_finite_codes(d_compl(base));
          uint64_t beyond = 0;
          if (missing)
            for (auto c : *missing)
              if (c >= probe) ++beyond;
          Verdict v = v_in(
              "all but finitely many indices lie in the base set, so the "
              "escape set stays finite");
          v.bound = ExtRat{Rat(static_cast<unsigned long>(off + beyond + fuzzy))};
          return v;
        }
        return v_out(
            "every part from " + std::to_string(probe) +
            " on is inhabited, and infinitely many of those indices fall off "
            "the base set");
      });
  std::string prov = "jfamily(" + print_descr(base) + ")";
  return make_oracle(
      sp, std::move(prov), IdealAttrs{},
      [sum = std::move(sum), supp = std::move(supp)](const Descr& d,
                                                     const Budget& b) -> Verdict {
        Verdict vs = sum.decide(d, b);
        Verdict vp = supp.decide(d, b);
        Verdict out = verdict_and(vs, vp);
        // the informative size evidence for the family is the off-base escape
        // count measured by the support component
        if (out.kind == VerdictKind::ProvedIn) out.bound = vp.bound;
        return out;
      });
}

}  // namespace iw
