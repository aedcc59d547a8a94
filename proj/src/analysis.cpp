#include "iw/analysis.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <variant>

namespace iw {

namespace {

// ------------------------------------------------------------ periodic sets

// Subset of omega that is eventually periodic: explicit bits below
// head.size(), then body repeated forever.
struct PeriodicSet {
  std::vector<bool> head;
  std::vector<bool> body{false};

  bool test(uint64_t n) const {
    if (n < head.size()) return head[n];
    return body[(n - head.size()) % body.size()];
  }
};

PeriodicSet ps_align(const PeriodicSet& a, uint64_t head_len, uint64_t body_len) {
  PeriodicSet r;
  r.head.resize(head_len);
  for (uint64_t i = 0; i < head_len; ++i) r.head[i] = a.test(i);
  r.body.resize(body_len);
  for (uint64_t i = 0; i < body_len; ++i) r.body[i] = a.test(head_len + i);
  // body_len must be a multiple of a.body.size() for this to be faithful
  return r;
}

template <typename Op>
PeriodicSet ps_zip(const PeriodicSet& a, const PeriodicSet& b, Op op) {
  uint64_t head_len = std::max(a.head.size(), b.head.size());
  uint64_t body_len = std::lcm(a.body.size(), b.body.size());
  PeriodicSet x = ps_align(a, head_len, body_len);
  PeriodicSet y = ps_align(b, head_len, body_len);
  PeriodicSet r;
  r.head.resize(head_len);
  r.body.resize(body_len);
  for (uint64_t i = 0; i < head_len; ++i) r.head[i] = op(x.head[i], y.head[i]);
  for (uint64_t i = 0; i < body_len; ++i) r.body[i] = op(x.body[i], y.body[i]);
  return r;
}

PeriodicSet ps_compl(PeriodicSet a) {
  for (auto&& b : a.head) b = !b;
  for (auto&& b : a.body) b = !b;
  return a;
}

bool ps_body_none(const PeriodicSet& a) {
  return std::none_of(a.body.begin(), a.body.end(), [](bool b) { return b; });
}

std::optional<uint64_t> ps_min(const PeriodicSet& a) {
  for (uint64_t i = 0; i < a.head.size(); ++i)
    if (a.head[i]) return i;
  for (uint64_t i = 0; i < a.body.size(); ++i)
    if (a.body[i]) return a.head.size() + i;
  return std::nullopt;
}

// elements strictly below bound, or nullopt once more than cap accumulate
std::optional<std::vector<uint64_t>> ps_elements_below(const PeriodicSet& a,
                                                       uint64_t bound,
                                                       uint64_t cap) {
  std::vector<uint64_t> out;
  for (uint64_t i = 0; i < a.head.size() && i < bound; ++i)
    if (a.head[i]) {
      out.push_back(i);
      if (out.size() > cap) return std::nullopt;
    }
  std::vector<uint64_t> offsets;
  for (uint64_t i = 0; i < a.body.size(); ++i)
    if (a.body[i]) offsets.push_back(i);
  if (!offsets.empty()) {
    for (uint64_t base = a.head.size(); base < bound; base += a.body.size()) {
      for (auto off : offsets) {
        uint64_t pos = base + off;
        if (pos >= bound) break;
        out.push_back(pos);
        if (out.size() > cap) return std::nullopt;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------- branch words

struct BranchWord {
  std::vector<uint8_t> prefix, period;
  uint8_t at(uint64_t i) const { return ep_digit(prefix, period, i); }
};

uint64_t bw_bound(const BranchWord& a, const BranchWord& b) {
  return std::max(a.prefix.size(), b.prefix.size()) +
         std::lcm(a.period.size(), b.period.size());
}

bool bw_equal(const BranchWord& a, const BranchWord& b) {
  uint64_t n = bw_bound(a, b);
  for (uint64_t i = 0; i < n; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

// first index where the words differ; only valid when !bw_equal
uint64_t bw_disagreement(const BranchWord& a, const BranchWord& b) {
  uint64_t n = bw_bound(a, b);
  for (uint64_t i = 0; i < n; ++i)
    if (a.at(i) != b.at(i)) return i;
  throw std::logic_error("equal branch words have no disagreement");
}

bool bw_has_word(const BranchWord& x, uint64_t code) {
  auto w = binseq_word(code);
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] != x.at(i)) return false;
  return true;
}

// codes of the common prefixes of two distinct branches
std::vector<uint64_t> bw_common(const BranchWord& a, const BranchWord& b) {
  uint64_t d = bw_disagreement(a, b);
  std::vector<uint64_t> out;
  std::vector<uint8_t> w;
  out.push_back(binseq_code(w));
  for (uint64_t i = 0; i < d; ++i) {
    w.push_back(a.at(i));
    out.push_back(binseq_code(w));
  }
  return out;
}

// ------------------------------------------------------- small/cosmall NFs

// Common shape for the binary tree (generators: branches) and Delta
// (generators: rows): polarity over a small part consisting of finitely many
// generator lines plus finite corrections.
struct LineNF {
  bool cosmall = false;
  std::vector<BranchWord> branches;  // BinarySeq generators
  std::vector<uint64_t> rows;        // Delta generators
  std::vector<uint64_t> plus, minus;

  bool on_line(uint64_t code, bool is_delta) const {
    if (is_delta) {
      uint64_t j = delta_point(code).second;
      return std::find(rows.begin(), rows.end(), j) != rows.end();
    }
    for (auto& x : branches)
      if (bw_has_word(x, code)) return true;
    return false;
  }
  bool in_small(uint64_t code, bool is_delta) const {
    if (std::binary_search(plus.begin(), plus.end(), code)) return true;
    if (std::binary_search(minus.begin(), minus.end(), code)) return false;
    return on_line(code, is_delta);
  }
  bool test(uint64_t code, bool is_delta) const {
    return in_small(code, is_delta) != cosmall;
  }
};

void nf_normalize(LineNF& r, const std::set<uint64_t>& candidates,
                  const std::function<bool(uint64_t)>& target, bool is_delta) {
  r.plus.clear();
  r.minus.clear();
  for (auto c : candidates) {
    bool base = r.on_line(c, is_delta);
    bool want = target(c);
    if (want && !base) r.plus.push_back(c);
    if (!want && base) r.minus.push_back(c);
  }
}

std::set<uint64_t> nf_candidates(const LineNF& a, const LineNF& b) {
  std::set<uint64_t> s(a.plus.begin(), a.plus.end());
  s.insert(a.minus.begin(), a.minus.end());
  s.insert(b.plus.begin(), b.plus.end());
  s.insert(b.minus.begin(), b.minus.end());
  return s;
}

LineNF nf_small_union(const LineNF& a, const LineNF& b, bool is_delta) {
  LineNF r;
  r.branches = a.branches;
  for (auto& x : b.branches)
    if (std::none_of(r.branches.begin(), r.branches.end(),
                     [&](const BranchWord& y) { return bw_equal(x, y); }))
      r.branches.push_back(x);
  r.rows = a.rows;
  for (auto j : b.rows)
    if (std::find(r.rows.begin(), r.rows.end(), j) == r.rows.end())
      r.rows.push_back(j);
  auto cand = nf_candidates(a, b);
  nf_normalize(
      r, cand,
      [&](uint64_t c) { return a.in_small(c, is_delta) || b.in_small(c, is_delta); },
      is_delta);
  return r;
}

// a ∩ b, or a ∖ b when minus = true; both arguments are small parts
LineNF nf_small_inter(const LineNF& a, const LineNF& b, bool minus, bool is_delta) {
  LineNF r;
  for (auto& x : a.branches) {
    bool shared = std::any_of(b.branches.begin(), b.branches.end(),
                              [&](const BranchWord& y) { return bw_equal(x, y); });
    if (shared != minus) r.branches.push_back(x);
  }
  for (auto j : a.rows) {
    bool shared = std::find(b.rows.begin(), b.rows.end(), j) != b.rows.end();
    if (shared != minus) r.rows.push_back(j);
  }
  auto cand = nf_candidates(a, b);
  if (!is_delta) {
    for (auto& x : a.branches)
      for (auto& y : b.branches)
        if (!bw_equal(x, y))
          for (auto c : bw_common(x, y)) cand.insert(c);
  }
  nf_normalize(
      r, cand,
      [&](uint64_t c) {
        return a.in_small(c, is_delta) && b.in_small(c, is_delta) != minus;
      },
      is_delta);
  return r;
}

LineNF nf_compl(LineNF a) {
  a.cosmall = !a.cosmall;
  return a;
}

LineNF nf_inter(const LineNF& a, const LineNF& b, bool is_delta);

LineNF nf_union(const LineNF& a, const LineNF& b, bool is_delta) {
  if (!a.cosmall && !b.cosmall) return nf_small_union(a, b, is_delta);
  // A ∪ B = ¬(¬A ∩ ¬B)
  return nf_compl(nf_inter(nf_compl(a), nf_compl(b), is_delta));
}

LineNF nf_inter(const LineNF& a, const LineNF& b, bool is_delta) {
  if (!a.cosmall && !b.cosmall) return nf_small_inter(a, b, false, is_delta);
  if (a.cosmall && b.cosmall)
    return nf_compl(nf_small_union(nf_compl(a), nf_compl(b), is_delta));
  const LineNF& small = a.cosmall ? b : a;
  const LineNF& co = a.cosmall ? a : b;
  LineNF co_small = co;
  co_small.cosmall = false;
  return nf_small_inter(small, co_small, true, is_delta);
}

// ------------------------------------------------------------- flat NF build

using FlatNF = std::variant<PeriodicSet, LineNF>;

std::optional<FlatNF> flat_nf(const Descr& d);

std::optional<PeriodicSet> omega_nf(const Descr& d) {
  auto nf = flat_nf(d);
  if (!nf || !std::holds_alternative<PeriodicSet>(*nf)) return std::nullopt;
  return std::get<PeriodicSet>(*nf);
}

std::optional<LineNF> line_nf(const Descr& d) {
  auto nf = flat_nf(d);
  if (!nf || !std::holds_alternative<LineNF>(*nf)) return std::nullopt;
  return std::get<LineNF>(*nf);
}

std::optional<FlatNF> flat_nf(const Descr& d) {
  const auto kind = d.space->kind;
  const bool on_omega = kind == Space::Kind::Omega;
  const bool on_bin = kind == Space::Kind::BinarySeq;
  const bool on_delta = kind == Space::Kind::Delta;
  const bool on_tree = kind == Space::Kind::TreeSeq;
  if (!on_omega && !on_bin && !on_delta && !on_tree) return std::nullopt;

  auto finite_ps = [&](std::vector<uint64_t> codes) {
    PeriodicSet p;
    if (!codes.empty()) {
      p.head.resize(codes.back() + 1, false);
      for (auto c : codes) p.head[c] = true;
    }
    return p;
  };
  auto finite_ln = [&](std::vector<uint64_t> codes) {
    LineNF n;
    n.plus = std::move(codes);
    return n;
  };

  switch (d.kind) {
    case Descr::Kind::Empty:
      if (on_omega) return FlatNF{PeriodicSet{}};
      return FlatNF{LineNF{}};
    case Descr::Kind::Full: {
      if (on_omega) {
        PeriodicSet p;
        p.body = {true};
        return FlatNF{p};
      }
      LineNF n;
      n.cosmall = true;
      return FlatNF{n};
    }
    case Descr::Kind::Finite:
      if (on_omega) return FlatNF{finite_ps(d.codes)};
      return FlatNF{finite_ln(d.codes)};
    case Descr::Kind::Threshold: {
      PeriodicSet p;
      p.head.resize(d.index, false);
      p.body = {true};
      return FlatNF{p};
    }
    case Descr::Kind::Stride: {
      PeriodicSet p;
      p.head.resize(d.index, false);
      p.body.assign(d.step, false);
      p.body[0] = true;
      return FlatNF{p};
    }
    case Descr::Kind::Branch: {
      LineNF n;
      n.branches.push_back(BranchWord{d.wprefix, d.wperiod});
      return FlatNF{n};
    }
    case Descr::Kind::Row: {
      if (!on_delta) return std::nullopt;
      LineNF n;
      n.rows.push_back(d.index);
      return FlatNF{n};
    }
    case Descr::Kind::Column: {
      if (!on_delta) return std::nullopt;
      // delta column i = {(i,j): j <= i}, a finite set
      std::vector<uint64_t> codes;
      for (uint64_t j = 0; j <= d.index; ++j) codes.push_back(delta_code(d.index, j));
      return FlatNF{finite_ln(codes)};
    }
    case Descr::Kind::Complement: {
      auto inner = flat_nf(*d.a);
      if (!inner) return std::nullopt;
      if (auto* p = std::get_if<PeriodicSet>(&*inner)) return FlatNF{ps_compl(*p)};
      return FlatNF{nf_compl(std::get<LineNF>(*inner))};
    }
    case Descr::Kind::Union:
    case Descr::Kind::Intersection: {
      auto x = flat_nf(*d.a), y = flat_nf(*d.b);
      if (!x || !y) return std::nullopt;
      bool take_union = d.kind == Descr::Kind::Union;
      if (auto* p = std::get_if<PeriodicSet>(&*x)) {
        auto& q = std::get<PeriodicSet>(*y);
        return FlatNF{take_union
                          ? ps_zip(*p, q, [](bool u, bool v) { return u || v; })
                          : ps_zip(*p, q, [](bool u, bool v) { return u && v; })};
      }
      auto& u = std::get<LineNF>(*x);
      auto& v = std::get<LineNF>(*y);
      return FlatNF{take_union ? nf_union(u, v, on_delta)
                               : nf_inter(u, v, on_delta)};
    }
    default:
      return std::nullopt;
  }
}

bool lines_empty(const LineNF& n) { return n.branches.empty() && n.rows.empty(); }

}  // namespace

// --------------------------------------------------------------- decompose

Descr section_trace(const Descr& d, uint64_t n) {
  const Space& sp = *d.space;
  if (sp.kind != Space::Kind::DisjointSum && sp.kind != Space::Kind::MazurSum)
    throw SpaceMismatch("section trace needs a sum space");
  SpacePtr part = sp.kind == Space::Kind::MazurSum ? omega() : sum_part_space(sp, n);
  switch (d.kind) {
    case Descr::Kind::Empty:
      return d_empty(part);
    case Descr::Kind::Full:
      return d_full(part);
    case Descr::Kind::Section:
      return d.index == n ? d_full(part) : d_empty(part);
    case Descr::Kind::Finite: {
      std::vector<uint64_t> locals;
      for (auto c : d.codes) {
        auto [p, r] = unpair_code(c);
        if (p == n) locals.push_back(r);
      }
      return d_finite(part, std::move(locals));
    }
    case Descr::Kind::Complement:
      return d_compl(section_trace(*d.a, n));
    case Descr::Kind::Union:
      return d_union(section_trace(*d.a, n), section_trace(*d.b, n));
    case Descr::Kind::Intersection:
      return d_inter(section_trace(*d.a, n), section_trace(*d.b, n));
    default:
      throw SpaceMismatch("constructor not meaningful on a sum space");
  }
}

SumSections sum_sections(const Descr& d) {
  const Space& sp = *d.space;
  bool mazur = sp.kind == Space::Kind::MazurSum;
  if (sp.kind != Space::Kind::DisjointSum && !mazur)
    throw SpaceMismatch("sum sections need a sum space");
  bool infinite_parts = mazur || sp.tail != nullptr;

  std::set<uint64_t> parts;
  std::function<void(const Descr&)> collect = [&](const Descr& x) {
    switch (x.kind) {
      case Descr::Kind::Section:
        parts.insert(x.index);
        break;
      case Descr::Kind::Finite:
        for (auto c : x.codes) parts.insert(unpair_code(c).first);
        break;
      case Descr::Kind::Complement:
        collect(*x.a);
        break;
      case Descr::Kind::Union:
      case Descr::Kind::Intersection:
        collect(*x.a);
        collect(*x.b);
        break;
      default:
        break;
    }
  };
  collect(d);

  SumSections out;
  if (infinite_parts) {
    // tail trace: evaluate beyond every exceptional part; traces are uniform
    // there because only Section/Finite distinguish parts
    uint64_t probe = (parts.empty() ? 0 : *parts.rbegin()) + 1;
    if (mazur) probe = std::max<uint64_t>(probe, 1);
    out.tail = section_trace(d, probe);
  } else {
    uint64_t count = sum_part_count(sp);
    for (uint64_t n = 0; n < count; ++n) parts.insert(n);
    out.finite_parts.assign(parts.begin(), parts.end());
  }
  for (auto n : parts)
    if (!mazur || n >= 1) out.exceptional.emplace_back(n, section_trace(d, n));
  return out;
}

ProductClasses product_classes(const Descr& d) {
  const Space& sp = *d.space;
  if (sp.kind != Space::Kind::Product)
    throw SpaceMismatch("product classes need a product space");
  SpacePtr L = sp.left, R = sp.right;
  ProductClasses out;
  auto push = [&](Descr guard, Descr trace) {
    if (auto e = try_empty(guard); e && *e) return;
    for (auto& cl : out.classes)
      if (descr_equal(cl.second, trace)) {
        cl.first = d_union(std::move(cl.first), std::move(guard));
        return;
      }
    out.classes.emplace_back(std::move(guard), std::move(trace));
  };

  switch (d.kind) {
    case Descr::Kind::Empty:
      push(d_full(L), d_empty(R));
      break;
    case Descr::Kind::Full:
      push(d_full(L), d_full(R));
      break;
    case Descr::Kind::Finite: {
      std::map<uint64_t, std::vector<uint64_t>> by_left;
      for (auto c : d.codes) {
        auto [i, j] = unpair_code(c);
        by_left[i].push_back(j);
      }
      std::vector<uint64_t> support;
      for (auto& [i, js] : by_left) {
        support.push_back(i);
        push(d_finite(L, {i}), d_finite(R, js));
      }
      push(d_compl(d_finite(L, support)), d_empty(R));
      break;
    }
    case Descr::Kind::Column:
      push(d_finite(L, {d.index}), d_full(R));
      push(d_compl(d_finite(L, {d.index})), d_empty(R));
      break;
    case Descr::Kind::Row:
      push(d_full(L), d_finite(R, {d.index}));
      break;
    case Descr::Kind::Rectangle:
      push(*d.a, *d.b);
      push(d_compl(*d.a), d_empty(R));
      break;
    case Descr::Kind::Complement: {
      auto inner = product_classes(*d.a);
      for (auto& [g, t] : inner.classes) push(g, d_compl(t));
      break;
    }
    case Descr::Kind::Union:
    case Descr::Kind::Intersection: {
      auto xa = product_classes(*d.a);
      auto xb = product_classes(*d.b);
      for (auto& [ga, ta] : xa.classes)
        for (auto& [gb, tb] : xb.classes) {
          Descr guard = d_inter(ga, gb);
          Descr trace = d.kind == Descr::Kind::Union ? d_union(ta, tb)
                                                     : d_inter(ta, tb);
          push(std::move(guard), std::move(trace));
        }
      break;
    }
    default:
      throw SpaceMismatch("constructor not meaningful on a product space");
  }
  return out;
}

// ------------------------------------------------------------------ queries

std::optional<bool> try_empty(const Descr& d) {
  switch (d.space->kind) {
    case Space::Kind::Omega: {
      auto p = omega_nf(d);
      if (!p) return std::nullopt;
      bool any = std::any_of(p->head.begin(), p->head.end(), [](bool b) { return b; });
      return !(any || !ps_body_none(*p));
    }
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta: {
      auto n = line_nf(d);
      if (!n) return std::nullopt;
      if (n->cosmall) return false;  // small parts never cover the space
      return lines_empty(*n) && n->plus.empty();
    }
    case Space::Kind::ClopenHalf: {
      uint64_t card = clopen_member_count(d.space->resolution);
      if (card > 100000) return std::nullopt;
      for (uint64_t c = 0; c < card; ++c)
        if (member(d, c)) return false;
      return true;
    }
    case Space::Kind::Product: {
      for (auto& [g, t] : product_classes(d).classes) {
        auto ge = try_empty(g), te = try_empty(t);
        if (!ge || !te) return std::nullopt;
        if (!*ge && !*te) return false;
      }
      return true;
    }
    case Space::Kind::DisjointSum: {
      auto ss = sum_sections(d);
      for (auto& [n, t] : ss.exceptional) {
        auto te = try_empty(t);
        if (!te) return std::nullopt;
        if (!*te) return false;
      }
      if (ss.tail) {
        auto te = try_empty(*ss.tail);
        if (!te) return std::nullopt;
        if (!*te) return false;
      }
      return true;
    }
    case Space::Kind::MazurSum: {
      // traces live over omega but part n only carries (2n)^n local codes
      auto ss = sum_sections(d);
      for (auto& [n, t] : ss.exceptional) {
        auto p = omega_nf(t);
        if (!p) return std::nullopt;
        auto m = ps_min(*p);
        if (m && *m < mazur_part_card(n)) return false;
      }
      if (ss.tail) {
        auto p = omega_nf(*ss.tail);
        if (!p) return std::nullopt;
        if (ps_min(*p)) return false;  // part sizes grow without bound
      }
      return true;
    }
  }
  return std::nullopt;
}

std::optional<bool> try_infinite(const Descr& d) {
  switch (d.space->kind) {
    case Space::Kind::Omega: {
      auto p = omega_nf(d);
      if (!p) return std::nullopt;
      return !ps_body_none(*p);
    }
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta: {
      auto n = line_nf(d);
      if (!n) return std::nullopt;
      if (n->cosmall) return true;  // complements of small parts are infinite
      return !lines_empty(*n);
    }
    case Space::Kind::ClopenHalf:
      return false;
    case Space::Kind::Product: {
      bool unknown = false;
      for (auto& [g, t] : product_classes(d).classes) {
        auto ge = try_empty(g), te = try_empty(t);
        auto gi = try_infinite(g), ti = try_infinite(t);
        if (ge && te && gi && ti) {
          if ((!*ge && *ti) || (*gi && !*te)) return true;
        } else {
          unknown = true;
        }
      }
      return unknown ? std::nullopt : std::optional<bool>(false);
    }
    case Space::Kind::DisjointSum: {
      auto ss = sum_sections(d);
      bool unknown = false;
      for (auto& [n, t] : ss.exceptional) {
        auto ti = try_infinite(t);
        if (!ti)
          unknown = true;
        else if (*ti)
          return true;
      }
      if (ss.tail) {
        auto te = try_empty(*ss.tail);
        if (!te)
          unknown = true;
        else if (!*te)
          return true;  // a nonempty trace repeated over infinitely many parts
      }
      return unknown ? std::nullopt : std::optional<bool>(false);
    }
    case Space::Kind::MazurSum: {
      // every part is finite, so only an inhabited tail makes the set infinite
      auto ss = sum_sections(d);
      if (!ss.tail) return false;
      auto p = omega_nf(*ss.tail);
      if (!p) return std::nullopt;
      return ps_min(*p).has_value();
    }
  }
  return std::nullopt;
}

std::optional<Extent> try_extent(const Descr& d) {
  auto inf = try_infinite(d);
  if (!inf) return std::nullopt;
  if (!*inf) return Extent::Finite;
  auto coinf = try_infinite(d_compl(d));
  if (!coinf) return std::nullopt;
  return *coinf ? Extent::Mixed : Extent::Cofinite;
}

std::optional<std::vector<uint64_t>> try_finite_codes(const Descr& d) {
  auto inf = try_infinite(d);
  if (!inf || *inf) return std::nullopt;
  switch (d.space->kind) {
    case Space::Kind::Omega: {
      auto p = omega_nf(d);
      std::vector<uint64_t> out;
      for (uint64_t i = 0; i < p->head.size(); ++i)
        if (p->head[i]) out.push_back(i);
      return out;
    }
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta: {
      auto n = line_nf(d);
      return n->plus;  // finite smalls have no lines
    }
    case Space::Kind::ClopenHalf: {
      uint64_t card = clopen_member_count(d.space->resolution);
      if (card > 100000) return std::nullopt;
      std::vector<uint64_t> out;
      for (uint64_t c = 0; c < card; ++c)
        if (member(d, c)) out.push_back(c);
      return out;
    }
    case Space::Kind::Product: {
      std::vector<uint64_t> out;
      for (auto& [g, t] : product_classes(d).classes) {
        auto te = try_empty(t);
        if (te && *te) continue;
        auto gc = try_finite_codes(g);
        auto tc = try_finite_codes(t);
        if (!gc || !tc) return std::nullopt;
        for (auto i : *gc)
          for (auto j : *tc) out.push_back(pair_code(i, j));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case Space::Kind::DisjointSum: {
      auto ss = sum_sections(d);
      if (ss.tail) {
        auto te = try_empty(*ss.tail);
        if (!te || !*te) return std::nullopt;
      }
      std::vector<uint64_t> out;
      for (auto& [n, t] : ss.exceptional) {
        auto tc = try_finite_codes(t);
        if (!tc) return std::nullopt;
        for (auto r : *tc) out.push_back(pair_code(n, r));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case Space::Kind::MazurSum: {
      auto ss = sum_sections(d);
      std::vector<uint64_t> out;
      for (auto& [n, t] : ss.exceptional) {
        auto p = omega_nf(t);
        if (!p) return std::nullopt;
        auto locals = ps_elements_below(*p, mazur_part_card(n), 100000);
        if (!locals) return std::nullopt;
        for (auto r : *locals) out.push_back(pair_code(n, r));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return std::nullopt;
}

std::optional<BinView> binseq_view(const Descr& d) {
  if (d.space->kind != Space::Kind::BinarySeq) return std::nullopt;
  auto n = line_nf(d);
  if (!n) return std::nullopt;
  return BinView{n->cosmall, n->branches.size(), n->plus.size()};
}

std::optional<DeltaView> delta_view(const Descr& d) {
  if (d.space->kind != Space::Kind::Delta) return std::nullopt;
  auto n = line_nf(d);
  if (!n) return std::nullopt;
  return DeltaView{n->cosmall, n->rows.size(), n->plus.size()};
}

}  // namespace iw
