#include "iw/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace iw {

namespace {

using K = IdealExpr::Kind;

bool argless_atom(K k) {
  switch (k) {
    case K::Fin:
    case K::Density:
    case K::Ib:
    case K::EDFin:
    case K::Mazur:
    case K::Solecki:
    case K::BI:
    case K::CEI:
    case K::FinSets:
      return true;
    default:
      return false;
  }
}

}  // namespace

// ------------------------------------------------------------------ builders

ExprPtr expr_atom(IdealExpr::Kind k) {
  if (!argless_atom(k))
    throw std::invalid_argument("this expression kind carries arguments; use its dedicated builder");
  auto e = std::make_shared<IdealExpr>();
  e->kind = k;
  return e;
}

ExprPtr expr_finpow(uint64_t n) {
  if (n == 0) throw IndexZero("the zeroth power of the finite ideal is not a thing here");
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::FinPow;
  e->power = n;
  return e;
}

ExprPtr expr_summable(WeightRule r) {
  summable_submeasure(r);  // vets the weights; negative or dead tails throw
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::Summable;
  e->rule = std::move(r);
  return e;
}

ExprPtr expr_jfam(Descr base) {
  if (base.space->kind != Space::Kind::Omega)
    throw SpaceMismatch("the support base lives on omega");
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::JFam;
  e->set = std::move(base);
  return e;
}

ExprPtr expr_node(IdealExpr::Kind k, std::vector<ExprPtr> kids) {
  size_t want = 0;
  switch (k) {
    case K::DirectSum:
    case K::Fubini:
      want = 2;
      break;
    case K::FullPad:
    case K::ColExt:
    case K::RowExt:
      want = 1;
      break;
    case K::Meet:
      if (kids.empty()) throw std::invalid_argument("a meet needs at least one component");
      want = kids.size();
      break;
    default:
      throw std::invalid_argument("this expression kind has its own builder");
  }
  if (kids.size() != want) throw std::invalid_argument("wrong operand count for the constructor");
  for (const auto& kid : kids)
    if (!kid) throw std::invalid_argument("null operand");
  auto e = std::make_shared<IdealExpr>();
  e->kind = k;
  e->kids = std::move(kids);
  return e;
}

ExprPtr expr_sum(std::vector<ExprPtr> heads, ExprPtr tail) {
  if (!tail) throw std::invalid_argument("an indexed sum needs a repeated tail part");
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::IndexedSum;
  e->kids = std::move(heads);
  e->kids.push_back(std::move(tail));
  return e;
}

ExprPtr expr_sum_over(ExprPtr index, std::vector<ExprPtr> heads, ExprPtr tail) {
  if (!index || !tail) throw std::invalid_argument("an indexed sum needs an index ideal and a tail");
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::IndexedSumOver;
  e->kids.push_back(std::move(index));
  for (auto& h : heads) e->kids.push_back(std::move(h));
  e->kids.push_back(std::move(tail));
  return e;
}

ExprPtr expr_restrict(ExprPtr base, Descr set) {
  if (!base) throw std::invalid_argument("null operand");
  if (!same_space(*set.space, *expr_space(*base)))
    throw SpaceMismatch("the restricting set must live on the expression's space");
  auto e = std::make_shared<IdealExpr>();
  e->kind = K::Restrict;
  e->kids.push_back(std::move(base));
  e->set = std::move(set);
  return e;
}

// ------------------------------------------------------------------ printing

namespace {

std::string print_seq(const IdealExpr& e, size_t first) {
  std::string out;
  for (size_t i = first; i + 1 < e.kids.size(); ++i) {
    if (i > first) out += ", ";
    out += print_expr(*e.kids[i]);
  }
  if (e.kids.size() > first + 1) out += "; ";
  out += print_expr(*e.kids.back());
  out += "…";
  return out;
}

}  // namespace

std::string print_expr(const IdealExpr& e) {
  switch (e.kind) {
    case K::Fin:
      return "Fin";
    case K::FinPow:
      return "FinPow " + std::to_string(e.power);
    case K::Summable:
      return "Summable " + print_weight_rule(*e.rule);
    case K::Density:
      return "Density";
    case K::Ib:
      return "Ib";
    case K::EDFin:
      return "EDFin";
    case K::Mazur:
      return "Mazur";
    case K::Solecki:
      return "Solecki";
    case K::BI:
      return "BI";
    case K::CEI:
      return "CEI";
    case K::FinSets:
      return "FinSets";
    case K::JFam:
      return "JFam " + print_descr(*e.set);
    case K::DirectSum:
      return print_expr(*e.kids[0]) + " (+) " + print_expr(*e.kids[1]);
    case K::Fubini:
      return print_expr(*e.kids[0]) + " (x) " + print_expr(*e.kids[1]);
    case K::FullPad:
      return "FullPad(" + print_expr(*e.kids[0]) + ")";
    case K::ColExt:
      return "ColExt(" + print_expr(*e.kids[0]) + ")";
    case K::RowExt:
      return "RowExt(" + print_expr(*e.kids[0]) + ")";
    case K::IndexedSum:
      return "Sum(" + print_seq(e, 0) + ")";
    case K::IndexedSumOver:
      return "SumOver(" + print_expr(*e.kids[0]) + "; " + print_seq(e, 1) + ")";
    case K::Meet: {
      std::string out = "Meet(";
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(*e.kids[i]);
      }
      return out + ")";
    }
    case K::Restrict:
      return "Restrict(" + print_expr(*e.kids[0]) + ", " + print_descr(*e.set) + ")";
  }
  throw std::logic_error("unhandled expression kind");
}

bool expr_equal(const IdealExpr& a, const IdealExpr& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == K::FinPow && a.power != b.power) return false;
  if (a.rule.has_value() != b.rule.has_value()) return false;
  if (a.rule && print_weight_rule(*a.rule) != print_weight_rule(*b.rule)) return false;
  if (a.set.has_value() != b.set.has_value()) return false;
  if (a.set && !descr_equal(*a.set, *b.set)) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

// ------------------------------------------------------------------- parsing

namespace {

struct Cur {
  const std::string& s;
  size_t i = 0;
};

void skip_ws(Cur& c) {
  while (c.i < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
}

bool lit(Cur& c, const char* t) {
  skip_ws(c);
  size_t n = std::char_traits<char>::length(t);
  if (c.s.compare(c.i, n, t) != 0) return false;
  c.i += n;
  return true;
}

bool ellipsis(Cur& c) { return lit(c, "\xE2\x80\xA6") || lit(c, "..."); }

std::string ident(Cur& c) {
  skip_ws(c);
  size_t b = c.i;
  while (c.i < c.s.size() && std::isalpha(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  return c.s.substr(b, c.i - b);
}

uint64_t integer(Cur& c, const char* what) {
  skip_ws(c);
  size_t b = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == b) throw SyntaxError(std::string("expected ") + what, b);
  return std::stoull(c.s.substr(b, c.i - b));
}

bool rule_char(char ch) {
  return std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '(' ||
         ch == ')' || ch == '+' || ch == '-' || ch == 'n';
}

// Maximal weight-rule run. "," and ";" belong to the rule only when a digit
// follows, which keeps rules unquoted inside argument lists.
std::string weight_token(Cur& c) {
  skip_ws(c);
  size_t at = c.i;
  std::string tok;
  int depth = 0;
  while (c.i < c.s.size()) {
    char ch = c.s[c.i];
    if (ch == '(') {
      ++depth;
      tok += ch;
      ++c.i;
    } else if (ch == ')') {
      if (depth == 0) break;
      --depth;
      tok += ch;
      ++c.i;
    } else if (ch == ',' || ch == ';') {
      size_t j = c.i + 1;
      while (j < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[j]))) ++j;
      if (j >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[j]))) break;
      tok += ch;
      c.i = j;
    } else if (rule_char(ch)) {
      tok += ch;
      ++c.i;
    } else {
      break;
    }
  }
  if (tok.empty()) throw SyntaxError("expected a weight rule", at);
  if (depth != 0) throw SyntaxError("unbalanced weight rule", at);
  return tok;
}

std::string descr_token(Cur& c) {
  skip_ws(c);
  if (c.i >= c.s.size() || c.s[c.i] != '(')
    throw SyntaxError("expected a parenthesized set description", c.i);
  size_t b = c.i;
  int depth = 0;
  do {
    char ch = c.s[c.i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    ++c.i;
  } while (c.i < c.s.size() && depth > 0);
  if (depth > 0) throw SyntaxError("unbalanced set description", b);
  return c.s.substr(b, c.i - b);
}

void expect(Cur& c, const char* t) {
  if (!lit(c, t)) throw SyntaxError(std::string("expected '") + t + "'", c.i);
}

ExprPtr parse_infix(Cur& c);

std::pair<std::vector<ExprPtr>, ExprPtr> parse_seq(Cur& c) {
  std::vector<ExprPtr> items;
  items.push_back(parse_infix(c));
  if (ellipsis(c)) return {{}, items.front()};
  while (lit(c, ",")) items.push_back(parse_infix(c));
  if (!lit(c, ";"))
    throw SyntaxError("expected ',', ';' or '…' after a sequence entry", c.i);
  ExprPtr tail = parse_infix(c);
  if (!ellipsis(c)) throw SyntaxError("the repeated tail must end with '…'", c.i);
  return {std::move(items), std::move(tail)};
}

ExprPtr parse_primary(Cur& c) {
  skip_ws(c);
  size_t at = c.i;
  std::string w = ident(c);
  if (w.empty()) throw SyntaxError("expected an expression", at);
  if (w == "Fin") return expr_atom(K::Fin);
  if (w == "Density") return expr_atom(K::Density);
  if (w == "Ib") return expr_atom(K::Ib);
  if (w == "EDFin") return expr_atom(K::EDFin);
  if (w == "Mazur") return expr_atom(K::Mazur);
  if (w == "Solecki") return expr_atom(K::Solecki);
  if (w == "BI") return expr_atom(K::BI);
  if (w == "CEI") return expr_atom(K::CEI);
  if (w == "FinSets") return expr_atom(K::FinSets);
  if (w == "FinPow") {
    uint64_t p = integer(c, "a power");
    if (p == 0) throw SyntaxError("the power must be positive", at);
    return expr_finpow(p);
  }
  if (w == "Summable") return expr_summable(parse_weight_rule(weight_token(c)));
  if (w == "JFam") return expr_jfam(parse_descr(descr_token(c), omega()));
  if (w == "FullPad" || w == "ColExt" || w == "RowExt") {
    expect(c, "(");
    ExprPtr kid = parse_infix(c);
    expect(c, ")");
    K k = w == "FullPad" ? K::FullPad : w == "ColExt" ? K::ColExt : K::RowExt;
    return expr_node(k, {std::move(kid)});
  }
  if (w == "Sum") {
    expect(c, "(");
    auto [heads, tail] = parse_seq(c);
    expect(c, ")");
    return expr_sum(std::move(heads), std::move(tail));
  }
  if (w == "SumOver") {
    expect(c, "(");
    ExprPtr index = parse_infix(c);
    expect(c, ";");
    auto [heads, tail] = parse_seq(c);
    expect(c, ")");
    return expr_sum_over(std::move(index), std::move(heads), std::move(tail));
  }
  if (w == "Meet") {
    expect(c, "(");
    std::vector<ExprPtr> parts;
    parts.push_back(parse_infix(c));
    while (lit(c, ",")) parts.push_back(parse_infix(c));
    expect(c, ")");
    return expr_node(K::Meet, std::move(parts));
  }
  if (w == "Restrict") {
    expect(c, "(");
    ExprPtr base = parse_infix(c);
    expect(c, ",");
    Descr set = parse_descr(descr_token(c), expr_space(*base));
    expect(c, ")");
    return expr_restrict(std::move(base), std::move(set));
  }
  throw SyntaxError("unknown name '" + w + "'", at);
}

ExprPtr parse_infix(Cur& c) {
  ExprPtr lhs = parse_primary(c);
  for (;;) {
    if (lit(c, "(+)"))
      lhs = expr_node(K::DirectSum, {std::move(lhs), parse_primary(c)});
    else if (lit(c, "(x)"))
      lhs = expr_node(K::Fubini, {std::move(lhs), parse_primary(c)});
    else
      return lhs;
  }
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Cur c{text, 0};
  ExprPtr e = parse_infix(c);
  skip_ws(c);
  if (c.i != text.size()) throw SyntaxError("trailing input", c.i);
  return e;
}

// -------------------------------------------------------------------- spaces

SpacePtr expr_space(const IdealExpr& e) {
  switch (e.kind) {
    case K::Fin:
    case K::Summable:
    case K::Density:
      return omega();
    case K::FinPow: {
      SpacePtr sp = omega();
      for (uint64_t i = 1; i < e.power; ++i) sp = product(omega(), sp);
      return sp;
    }
    case K::Ib:
      return binary_seq();
    case K::EDFin:
      return delta_space();
    case K::Mazur:
      return mazur_sum();
    case K::Solecki:
      return clopen_half(3);
    case K::FinSets:
      return product(omega(), omega());
    case K::BI:
      return product(omega(), product(omega(), omega()));
    case K::CEI:
      return product(omega(), product(omega(), product(omega(), omega())));
    case K::JFam:
    case K::IndexedSum:
    case K::IndexedSumOver:
      return indexed_host();
    case K::DirectSum:
      return disjoint_sum({expr_space(*e.kids[0]), expr_space(*e.kids[1])});
    case K::FullPad:
      return disjoint_sum({expr_space(*e.kids[0]), omega()});
    case K::Fubini:
      return product(expr_space(*e.kids[0]), expr_space(*e.kids[1]));
    case K::ColExt:
      return product(expr_space(*e.kids[0]), omega());
    case K::RowExt:
      return product(omega(), expr_space(*e.kids[0]));
    case K::Meet:
    case K::Restrict:
      return expr_space(*e.kids[0]);
  }
  throw std::logic_error("unhandled expression kind");
}

ExprPtr definitional_expansion(const IdealExpr& e) {
  if (e.kind == K::BI)
    return expr_node(
        K::Meet,
        {expr_node(K::RowExt, {expr_finpow(2)}),
         expr_node(K::Fubini, {expr_atom(K::Fin), expr_atom(K::FinSets)})});
  if (e.kind == K::CEI)
    return expr_node(K::Meet, {expr_node(K::RowExt, {expr_finpow(3)}),
                               expr_node(K::ColExt, {expr_finpow(3)})});
  return nullptr;
}

// ------------------------------------------------------------------- oracles

std::optional<IdealOracle> resolve_oracle(const IdealExpr& e) {
  switch (e.kind) {
    case K::Fin:
      return finite_ideal(omega());
    case K::FinSets:
      return finite_ideal(product(omega(), omega()));
    case K::FinPow:
      return finpow(e.power);
    case K::Summable:
      return summable_ideal(*e.rule);
    case K::Density:
      return density_ideal();
    case K::Ib:
      return ib_ideal();
    case K::EDFin:
      return edfin_ideal();
    case K::Mazur:
      return mazur_ideal();
    case K::Solecki:
      return solecki_ideal(3);
    case K::JFam:
      return jfamily(*e.set);
    case K::BI:
      return meet({row_ext(finpow(2)),
                   fubini(finite_ideal(omega()),
                          finite_ideal(product(omega(), omega())))});
    case K::CEI: {
      // the column component rebased onto the right-nested host: the free
      // last coordinate peels off one product rule at a time
      IdealOracle cols = col_ext(finite_ideal(omega()));
      cols = fubini(finite_ideal(omega()), std::move(cols));
      cols = fubini(finite_ideal(omega()), std::move(cols));
      return meet({row_ext(finpow(3)), std::move(cols)});
    }
    case K::DirectSum: {
      auto a = resolve_oracle(*e.kids[0]);
      auto b = resolve_oracle(*e.kids[1]);
      if (!a || !b) return std::nullopt;
      return direct_sum(std::move(*a), std::move(*b));
    }
    case K::FullPad: {
      auto a = resolve_oracle(*e.kids[0]);
      if (!a) return std::nullopt;
      return full_pad(std::move(*a));
    }
    case K::Fubini: {
      auto a = resolve_oracle(*e.kids[0]);
      auto b = resolve_oracle(*e.kids[1]);
      if (!a || !b) return std::nullopt;
      return fubini(std::move(*a), std::move(*b));
    }
    case K::ColExt: {
      auto a = resolve_oracle(*e.kids[0]);
      if (!a) return std::nullopt;
      return col_ext(std::move(*a));
    }
    case K::RowExt: {
      auto a = resolve_oracle(*e.kids[0]);
      if (!a) return std::nullopt;
      return row_ext(std::move(*a));
    }
    case K::IndexedSum:
    case K::IndexedSumOver: {
      size_t first = e.kind == K::IndexedSumOver ? 1 : 0;
      std::optional<IdealOracle> index;
      if (first) {
        index = resolve_oracle(*e.kids[0]);
        if (!index) return std::nullopt;
      }
      std::vector<IdealOracle> parts;
      for (size_t i = first; i < e.kids.size(); ++i) {
        auto p = resolve_oracle(*e.kids[i]);
        if (!p) return std::nullopt;
        parts.push_back(std::move(*p));
      }
      IndexedFamily fam;
      fam.label = print_seq(e, first);
      fam.part = [parts](uint64_t n) {
        return n + 1 < parts.size() ? parts[n] : parts.back();
      };
      if (first) return indexed_sum_over(std::move(*index), std::move(fam));
      return indexed_sum(std::move(fam));
    }
    case K::Meet: {
      std::vector<IdealOracle> parts;
      for (const auto& kid : e.kids) {
        auto p = resolve_oracle(*kid);
        if (!p) return std::nullopt;
        parts.push_back(std::move(*p));
      }
      return meet(std::move(parts));
    }
    case K::Restrict:
      return std::nullopt;
  }
  return std::nullopt;
}

// --------------------------------------------------------------- rule engine

namespace {

constexpr const char* A_ANALYTIC = "analytic";
constexpr const char* A_TALL = "tall";
constexpr const char* A_CG = "countably_generated";
constexpr const char* A_NPFS = "nonpath_fsigma";
constexpr const char* A_EGOROV = "egorov";

// citations are classical statements, never locators
constexpr const char* C_R1 = "a countably generated ideal is Egorov";
constexpr const char* C_R2 =
    "a non-pathological ideal of finite-submeasure-mass form is Egorov only "
    "when countably generated";
constexpr const char* C_R3 =
    "a tall non-pathological ideal of finite-submeasure-mass form is never "
    "Egorov";
constexpr const char* C_R4 =
    "a direct sum of ideals is Egorov exactly when both summands are";
constexpr const char* C_R5 =
    "padding with a free full part neither creates nor destroys the Egorov "
    "property";
constexpr const char* C_R6 =
    "extending every point by a free second coordinate preserves and "
    "reflects the Egorov property";
constexpr const char* C_R7 =
    "an indexed sum of ideals is Egorov exactly when every part is";
constexpr const char* C_R8 = "an intersection of Egorov ideals is Egorov";
constexpr const char* C_R9 =
    "an indexed sum with analytic parts is Egorov exactly when the index "
    "ideal is Egorov and contains the set of non-Egorov part indices";
constexpr const char* C_R10 =
    "a product with an analytic second factor is Egorov exactly when both "
    "factors are";
constexpr const char* C_R11 =
    "a Rudin-Keisler reduction into a restriction of an Egorov ideal makes "
    "the source Egorov, so a non-Egorov source rules the target out";
constexpr const char* C_R12 =
    "an ideal is Egorov exactly when all of its positive-set restrictions "
    "are";
constexpr const char* C_A1 = "a countably generated ideal is never tall";
constexpr const char* C_A2 =
    "analyticity passes through sums, products, extensions, meets and "
    "restrictions";
constexpr const char* C_A3 =
    "generating families for the summands assemble into one for the sum, "
    "the pad and the column extension";
constexpr const char* C_MEMBER =
    "decided by the index ideal's own membership oracle";
constexpr const char* C_DEF = "the named ideal equals the printed decomposition";

struct Attr {
  Trool v = Trool::Maybe;
  DerivationNode d;
};

struct NodeClass {
  Attr analytic, tall, cg, npfs, egorov;
};

std::string concl(const char* attr, const std::string& expr, Trool v) {
  return std::string(attr) + "(" + expr + ") = " + (v == Trool::Yes ? "Yes" : "No");
}

Attr fact(const char* attr, const std::string& expr, Trool v, std::string cite) {
  return Attr{v, {concl(attr, expr, v), "fact", std::move(cite), {}}};
}

void push_unique(std::vector<DerivationNode>& out, const DerivationNode& n) {
  for (const auto& p : out)
    if (p.conclusion == n.conclusion) return;
  out.push_back(n);
}

DerivationNode member_node(const std::string& index_expr, const Descr& d, bool in) {
  return {"member(" + index_expr + ", " + print_descr(d) + ") = " + (in ? "In" : "Out"),
          "member", C_MEMBER, {}};
}

Descr bad_descr(const std::vector<uint64_t>& heads, bool with_tail, uint64_t split) {
  if (heads.empty() && !with_tail) return d_empty(omega());
  if (heads.empty()) return d_threshold(omega(), split);
  if (!with_tail) return d_finite(omega(), heads);
  return d_union(d_finite(omega(), heads), d_threshold(omega(), split));
}

NodeClass classify_node(const IdealExpr& e, const RuleSet& rules, bool allow_rk);

// attribute facts for the leaf catalogue
void atom_attrs(const IdealExpr& e, const std::string& name, const RuleSet& rules,
                NodeClass& nc) {
  if (!rules.has("fact")) return;
  auto set = [&](Attr& slot, const char* attr, Trool v, const char* cite) {
    slot = fact(attr, name, v, cite);
  };
  switch (e.kind) {
    case K::Fin:
    case K::FinSets:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the finite sets form a Borel ideal");
      set(nc.tall, A_TALL, Trool::No, "an infinite set has no infinite finite subset");
      set(nc.cg, A_CG, Trool::Yes,
          "every finite set is a finite modification of the empty generator");
      set(nc.npfs, A_NPFS, Trool::Yes,
          "the counting submeasure is a measure whose finite-mass sets are "
          "exactly the finite sets");
      break;
    case K::FinPow:
      if (e.power == 1) {
        set(nc.analytic, A_ANALYTIC, Trool::Yes, "the finite sets form a Borel ideal");
        set(nc.tall, A_TALL, Trool::No, "an infinite set has no infinite finite subset");
        set(nc.cg, A_CG, Trool::Yes,
            "every finite set is a finite modification of the empty generator");
        set(nc.npfs, A_NPFS, Trool::Yes,
            "the counting submeasure is a measure whose finite-mass sets are "
            "exactly the finite sets");
      } else {
        set(nc.analytic, A_ANALYTIC, Trool::Yes,
            "finite products of Borel ideals are Borel");
        set(nc.tall, A_TALL, Trool::Yes,
            "from the square on, every infinite grid set contains an infinite "
            "member of the product ideal");
        set(nc.npfs, A_NPFS, Trool::No,
            "the higher powers sit strictly above the second Borel level, so "
            "no finite-submeasure-mass form exists");
      }
      break;
    case K::Summable:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "summable ideals are Borel");
      set(nc.npfs, A_NPFS, Trool::Yes,
          "a summable submeasure is a measure, hence its own non-pathological "
          "hull");
      if (e.rule->harmonic_tail) {
        set(nc.tall, A_TALL, Trool::Yes,
            "the weights vanish, so every infinite set contains an infinite "
            "subset of finite total weight");
      } else {
        set(nc.tall, A_TALL, Trool::No,
            "weights bounded away from zero leave no infinite set of finite "
            "total weight");
        set(nc.cg, A_CG, Trool::Yes,
            "with the tail weight constant and positive the ideal is exactly "
            "the finite sets");
      }
      break;
    case K::Density:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the density ideal is Borel");
      set(nc.tall, A_TALL, Trool::Yes,
          "every infinite set contains an infinite subset of vanishing "
          "density");
      set(nc.npfs, A_NPFS, Trool::No,
          "vanishing density is a tail condition, not a finite-mass "
          "condition, so the ideal is not of finite-submeasure-mass form");
      break;
    case K::Ib:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the branch-cover ideal is Borel");
      set(nc.tall, A_TALL, Trool::No,
          "an infinite antichain has no infinite subset covered by finitely "
          "many branches");
      set(nc.cg, A_CG, Trool::No,
          "no countable family of branch-covered sets generates: a fresh "
          "branch diagonalizes out of any candidate list");
      set(nc.npfs, A_NPFS, Trool::Yes,
          "the largest-antichain submeasure is non-pathological and its "
          "finite-mass sets are the finitely-branch-covered sets");
      break;
    case K::EDFin:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the bounded-columns ideal is Borel");
      set(nc.tall, A_TALL, Trool::Yes,
          "an infinite subset of the triangle meets infinitely many columns, "
          "and any transversal of those columns has bounded columns");
      set(nc.npfs, A_NPFS, Trool::Yes,
          "the largest-column-count submeasure is a supremum of one-column "
          "counting measures");
      break;
    case K::Mazur:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the cover-number ideal is Borel");
      set(nc.tall, A_TALL, Trool::Yes,
          "an infinite set meets infinitely many function parts, and a "
          "one-function-per-part selection has all cover numbers equal to one");
      set(nc.npfs, A_NPFS, Trool::No,
          "the cover-number submeasures are the classical pathological "
          "example: they strictly exceed every measure they dominate");
      break;
    case K::Solecki:
      set(nc.analytic, A_ANALYTIC, Trool::Yes, "the clopen-half ideal is Borel");
      set(nc.tall, A_TALL, Trool::Yes,
          "the limsup of an infinite family of measure-half sets is non-null, "
          "so some point lies in infinitely many members, and the family "
          "through that point sits inside one generator");
      // whether a non-pathological finite-mass form exists is open, so no
      // fact is recorded either way
      break;
    case K::JFam:
      set(nc.analytic, A_ANALYTIC, Trool::Yes,
          "a countable conjunction of Borel part conditions meeting a padded "
          "support ideal is Borel");
      set(nc.npfs, A_NPFS, Trool::No,
          "the growing-power conjunction climbs past the finite Borel levels, "
          "so no finite-submeasure-mass form exists");
      break;
    default:
      break;
  }
}

struct Candidate {
  const char* rule;
  Attr attr;
};

// egorov conclusions available at this node, in emission priority order
std::vector<Candidate> egorov_candidates(const IdealExpr& e, const std::string& name,
                                         const NodeClass& nc,
                                         const std::vector<NodeClass>& kids,
                                         const RuleSet& rules, bool allow_rk) {
  std::vector<Candidate> out;
  auto add = [&](const char* rule, Trool v, std::vector<DerivationNode> prem,
                 const char* cite) {
    Attr a{v, {concl(A_EGOROV, name, v), rule, cite, std::move(prem)}};
    out.push_back({rule, std::move(a)});
  };

  if (rules.has("R1") && nc.cg.v == Trool::Yes) add("R1", Trool::Yes, {nc.cg.d}, C_R1);
  if (rules.has("R2") && nc.npfs.v == Trool::Yes && nc.cg.v == Trool::No)
    add("R2", Trool::No, {nc.npfs.d, nc.cg.d}, C_R2);
  if (rules.has("R3") && nc.tall.v == Trool::Yes && nc.npfs.v == Trool::Yes)
    add("R3", Trool::No, {nc.tall.d, nc.npfs.d}, C_R3);

  switch (e.kind) {
    case K::DirectSum:
      if (rules.has("R4")) {
        if (kids[0].egorov.v == Trool::No)
          add("R4", Trool::No, {kids[0].egorov.d}, C_R4);
        else if (kids[1].egorov.v == Trool::No)
          add("R4", Trool::No, {kids[1].egorov.d}, C_R4);
        else if (kids[0].egorov.v == Trool::Yes && kids[1].egorov.v == Trool::Yes)
          add("R4", Trool::Yes, {kids[0].egorov.d, kids[1].egorov.d}, C_R4);
      }
      break;
    case K::FullPad:
      if (rules.has("R5") && kids[0].egorov.v != Trool::Maybe)
        add("R5", kids[0].egorov.v, {kids[0].egorov.d}, C_R5);
      break;
    case K::ColExt:
      if (rules.has("R6") && kids[0].egorov.v != Trool::Maybe)
        add("R6", kids[0].egorov.v, {kids[0].egorov.d}, C_R6);
      break;
    case K::RowExt:
    case K::IndexedSum:
      if (rules.has("R7")) {
        bool all_yes = true;
        const DerivationNode* bad = nullptr;
        std::vector<DerivationNode> prem;
        for (const auto& kc : kids) {
          if (kc.egorov.v != Trool::Yes) all_yes = false;
          if (kc.egorov.v == Trool::No && !bad) bad = &kc.egorov.d;
          if (kc.egorov.v == Trool::Yes) push_unique(prem, kc.egorov.d);
        }
        if (bad)
          add("R7", Trool::No, {*bad}, C_R7);
        else if (all_yes)
          add("R7", Trool::Yes, std::move(prem), C_R7);
      }
      break;
    case K::Meet:
      if (rules.has("R8")) {
        bool all_yes = true;
        std::vector<DerivationNode> prem;
        for (const auto& kc : kids) {
          if (kc.egorov.v != Trool::Yes) all_yes = false;
          else push_unique(prem, kc.egorov.d);
        }
        if (all_yes) add("R8", Trool::Yes, std::move(prem), C_R8);
      }
      break;
    case K::IndexedSumOver:
      if (rules.has("R9")) {
        const NodeClass& jc = kids[0];
        uint64_t split = e.kids.size() - 2;  // head count
        const NodeClass& tail = kids.back();
        if (jc.egorov.v == Trool::No) {
          add("R9", Trool::No, {jc.egorov.d}, C_R9);
          break;
        }
        auto index_oracle = resolve_oracle(*e.kids[0]);
        if (!index_oracle || index_oracle->space->kind != Space::Kind::Omega) break;
        std::vector<uint64_t> lo;
        std::vector<DerivationNode> lo_prem;
        for (uint64_t i = 0; i < split; ++i)
          if (kids[i + 1].egorov.v == Trool::No) {
            lo.push_back(i);
            push_unique(lo_prem, kids[i + 1].egorov.d);
          }
        bool tail_bad = tail.egorov.v == Trool::No;
        if (tail_bad) push_unique(lo_prem, tail.egorov.d);
        if (!lo.empty() || tail_bad) {
          Descr d = bad_descr(lo, tail_bad, split);
          if (index_oracle->decide(d, Budget{}).kind == VerdictKind::ProvedOut) {
            lo_prem.push_back(member_node(print_expr(*e.kids[0]), d, false));
            add("R9", Trool::No, std::move(lo_prem), C_R9);
            break;
          }
        }
        if (jc.egorov.v != Trool::Yes) break;
        bool parts_analytic = true;
        for (size_t i = 1; i < kids.size(); ++i)
          if (kids[i].analytic.v != Trool::Yes) parts_analytic = false;
        if (!parts_analytic) break;
        std::vector<uint64_t> hi;
        std::vector<DerivationNode> prem{jc.egorov.d};
        for (uint64_t i = 0; i < split; ++i)
          if (kids[i + 1].egorov.v != Trool::Yes) hi.push_back(i);
        bool tail_hi = tail.egorov.v != Trool::Yes;
        Descr d = bad_descr(hi, tail_hi, split);
        if (index_oracle->decide(d, Budget{}).kind != VerdictKind::ProvedIn) break;
        prem.push_back(member_node(print_expr(*e.kids[0]), d, true));
        for (size_t i = 1; i < kids.size(); ++i) {
          if (kids[i].egorov.v == Trool::Yes) push_unique(prem, kids[i].egorov.d);
          push_unique(prem, kids[i].analytic.d);
        }
        add("R9", Trool::Yes, std::move(prem), C_R9);
      }
      break;
    case K::Fubini:
    case K::FinPow:
      if (rules.has("R10") && (e.kind == K::Fubini || e.power >= 2)) {
        const NodeClass& a = kids[0];
        const NodeClass& b = kids[1];
        if (a.egorov.v == Trool::No)
          add("R10", Trool::No, {a.egorov.d}, C_R10);
        else if (b.egorov.v == Trool::No)
          add("R10", Trool::No, {b.egorov.d}, C_R10);
        else if (a.egorov.v == Trool::Yes && b.egorov.v == Trool::Yes &&
                 b.analytic.v == Trool::Yes) {
          std::vector<DerivationNode> prem;
          push_unique(prem, a.egorov.d);
          push_unique(prem, b.egorov.d);
          push_unique(prem, b.analytic.d);
          add("R10", Trool::Yes, std::move(prem), C_R10);
        }
      }
      break;
    case K::Restrict:
      if (rules.has("R12") && kids[0].egorov.v == Trool::Yes)
        add("R12", Trool::Yes, {kids[0].egorov.d}, C_R12);
      break;
    default:
      break;
  }

  // catalogue reduction edges, targets inherit No and sources inherit Yes
  if (rules.has("R11") && allow_rk) {
    struct Edge {
      K source, target;
      const char* cite;
    };
    static const Edge edges[] = {
        {K::Ib, K::Solecki,
         "the least-cylinder selection map pulls branch-generated sets back "
         "to generator-covered clopen families"},
        {K::EDFin, K::Mazur,
         "the first-uncovered-value classes map the function parts onto the "
         "triangle finite-to-one, pulling bounded-column sets back to "
         "bounded cover numbers"},
        {K::Ib, K::EDFin,
         "an almost disjoint family of column supports realizes every word "
         "as a triangle column, pulling branch sets back to bounded columns"},
    };
    auto atom_name = [](K k) {
      return k == K::Ib ? "Ib" : k == K::EDFin ? "EDFin" : k == K::Mazur ? "Mazur" : "Solecki";
    };
    for (const auto& edge : edges) {
      DerivationNode edge_fact{
          std::string(atom_name(edge.source)) + " <=RK " + atom_name(edge.target),
          "fact", edge.cite, {}};
      if (e.kind == edge.target) {
        NodeClass src = classify_node(*expr_atom(edge.source), rules, false);
        if (src.egorov.v == Trool::No)
          add("R11", Trool::No, {src.egorov.d, edge_fact}, C_R11);
      }
      if (e.kind == edge.source) {
        NodeClass tgt = classify_node(*expr_atom(edge.target), rules, false);
        if (tgt.egorov.v == Trool::Yes)
          add("R11", Trool::Yes, {tgt.egorov.d, edge_fact}, C_R11);
      }
    }
  }

  // definitional expansions and the two catalogue verdicts with no rule route
  if (rules.has("def") && (e.kind == K::BI || e.kind == K::CEI)) {
    ExprPtr expansion = definitional_expansion(e);
    NodeClass xc = classify_node(*expansion, rules, allow_rk);
    if (xc.egorov.v != Trool::Maybe)
      add("def", xc.egorov.v, {xc.egorov.d}, C_DEF);
  }
  if (rules.has("fact")) {
    if (e.kind == K::Density)
      add("fact", Trool::No, {},
          "among non-pathological analytic P-ideals only the three countably "
          "generated shapes are Egorov, and the density ideal is tall, hence "
          "none of them");
    if (e.kind == K::JFam)
      add("fact", Trool::Yes, {},
          "each growing-power part is Egorov, an indexed sum of Egorov parts "
          "is Egorov, the support ideal is countably generated, and a meet "
          "of Egorov ideals is Egorov");
  }
  return out;
}

NodeClass classify_node(const IdealExpr& e, const RuleSet& rules, bool allow_rk) {
  std::string name = print_expr(e);
  NodeClass nc;
  atom_attrs(e, name, rules, nc);

  // operand classes; FinPow unfolds one product step, BI and CEI expand
  std::vector<NodeClass> kids;
  if (e.kind == K::FinPow && e.power >= 2) {
    kids.push_back(classify_node(*expr_atom(K::Fin), rules, allow_rk));
    kids.push_back(classify_node(*expr_finpow(e.power - 1), rules, allow_rk));
  } else {
    for (const auto& kid : e.kids) kids.push_back(classify_node(*kid, rules, allow_rk));
  }

  if (e.kind == K::BI || e.kind == K::CEI) {
    if (rules.has("def")) {
      NodeClass xc = classify_node(*definitional_expansion(e), rules, allow_rk);
      if (xc.analytic.v != Trool::Maybe) {
        nc.analytic.v = xc.analytic.v;
        nc.analytic.d = {concl(A_ANALYTIC, name, xc.analytic.v), "def", C_DEF,
                         {xc.analytic.d}};
      }
    }
  } else if (!e.kids.empty() || (e.kind == K::FinPow && e.power >= 2)) {
    if (rules.has("A2")) {
      bool all = true;
      std::vector<DerivationNode> prem;
      for (const auto& kc : kids) {
        if (kc.analytic.v != Trool::Yes) all = false;
        else push_unique(prem, kc.analytic.d);
      }
      if (all && nc.analytic.v == Trool::Maybe) {
        nc.analytic.v = Trool::Yes;
        nc.analytic.d = {concl(A_ANALYTIC, name, Trool::Yes), "A2", C_A2, std::move(prem)};
      }
    }
    if (rules.has("A3") &&
        (e.kind == K::DirectSum || e.kind == K::FullPad || e.kind == K::ColExt)) {
      bool all = true;
      std::vector<DerivationNode> prem;
      for (const auto& kc : kids) {
        if (kc.cg.v != Trool::Yes) all = false;
        else push_unique(prem, kc.cg.d);
      }
      if (all && nc.cg.v == Trool::Maybe) {
        nc.cg.v = Trool::Yes;
        nc.cg.d = {concl(A_CG, name, Trool::Yes), "A3", C_A3, std::move(prem)};
      }
    }
  }

  if (rules.has("A1") && nc.cg.v == Trool::Maybe && nc.tall.v == Trool::Yes) {
    nc.cg.v = Trool::No;
    nc.cg.d = {concl(A_CG, name, Trool::No), "A1", C_A1, {nc.tall.d}};
  }

  auto cands = egorov_candidates(e, name, nc, kids, rules, allow_rk);
  bool saw_yes = false, saw_no = false;
  for (const auto& c : cands) (c.attr.v == Trool::Yes ? saw_yes : saw_no) = true;
  if (saw_yes && saw_no)
    throw std::logic_error("rule base contradiction at " + name);
  if (!cands.empty()) nc.egorov = cands.front().attr;
  return nc;
}

}  // namespace

RuleSet RuleSet::all() {
  RuleSet r;
  r.ids = {"R1", "R2", "R3", "R4",  "R5",  "R6",  "R7", "R8", "R9",
           "R10", "R11", "R12", "A1", "A2", "A3", "fact", "def"};
  return r;
}

Classification classify(const IdealExpr& e) { return classify(e, RuleSet::all()); }

Classification classify(const IdealExpr& e, const RuleSet& rules) {
  NodeClass nc = classify_node(e, rules, true);
  Classification c;
  auto record = [](const Attr& a) {
    return Judgement{a.v, a.v == Trool::Maybe ? std::string() : a.d.rule};
  };
  c.attrs.analytic = record(nc.analytic);
  c.attrs.tall = record(nc.tall);
  c.attrs.countably_generated = record(nc.cg);
  c.attrs.nonpath_fsigma = record(nc.npfs);
  c.attrs.egorov = record(nc.egorov);
  if (nc.egorov.v == Trool::Maybe)
    c.derivation = {"egorov(" + print_expr(e) + ") = Unknown", "none",
                    "no enabled rule derives a verdict for this expression", {}};
  else
    c.derivation = nc.egorov.d;
  return c;
}

// -------------------------------------------------------------------- replay

namespace {

struct ParsedConcl {
  std::string attr, expr, value;
};

std::optional<ParsedConcl> parse_concl(const std::string& s) {
  size_t lp = s.find('(');
  size_t eq = s.rfind(") = ");
  if (lp == std::string::npos || eq == std::string::npos || eq < lp) return std::nullopt;
  return ParsedConcl{s.substr(0, lp), s.substr(lp + 1, eq - lp - 1), s.substr(eq + 4)};
}

bool fail(std::string* complaint, const std::string& what) {
  if (complaint) *complaint = what;
  return false;
}

// premise lookup: attribute conclusion about a printed expression
bool has_premise(const DerivationNode& n, const char* attr, const std::string& expr,
                 const char* value) {
  std::string want = std::string(attr) + "(" + expr + ") = " + value;
  for (const auto& p : n.premises)
    if (p.conclusion == want) return true;
  return false;
}

const DerivationNode* find_member(const DerivationNode& n) {
  for (const auto& p : n.premises)
    if (p.rule == "member") return &p;
  return nullptr;
}

// split "J, (descr...)" at the top-level comma that opens the description
bool split_member(const std::string& inner, std::string& expr, std::string& descr) {
  int depth = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    char ch = inner[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      size_t j = i + 1;
      while (j < inner.size() && std::isspace(static_cast<unsigned char>(inner[j]))) ++j;
      if (j < inner.size() && inner[j] == '(') {
        expr = inner.substr(0, i);
        descr = inner.substr(j);
        return true;
      }
    }
  }
  return false;
}

bool replay_member(const DerivationNode& n, std::string* complaint) {
  auto pc = parse_concl(n.conclusion);
  if (!pc || pc->attr != "member") return fail(complaint, "malformed member node");
  std::string expr_text, descr_text;
  if (!split_member(pc->expr, expr_text, descr_text))
    return fail(complaint, "member node lacks a description: " + n.conclusion);
  auto oracle = resolve_oracle(*parse_expr(expr_text));
  if (!oracle) return fail(complaint, "member index ideal has no oracle");
  Verdict v = oracle->decide(parse_descr(descr_text, oracle->space), Budget{});
  bool in = v.kind == VerdictKind::ProvedIn;
  bool out = v.kind == VerdictKind::ProvedOut;
  if (pc->value == "In" ? !in : pc->value == "Out" ? !out : true)
    return fail(complaint, "membership re-decision disagrees: " + n.conclusion);
  return true;
}

bool is_rk_edge(const std::string& s) { return s.find(" <=RK ") != std::string::npos; }

bool replay_node(const DerivationNode& n, std::string* complaint) {
  for (const auto& p : n.premises)
    if (!replay_node(p, complaint)) return false;

  if (n.rule == "member") {
    if (!n.premises.empty()) return fail(complaint, "member nodes take no premises");
    return replay_member(n, complaint);
  }
  if (n.rule == "fact") {
    if (!n.premises.empty()) return fail(complaint, "facts take no premises");
    if (is_rk_edge(n.conclusion)) return true;
    auto pc = parse_concl(n.conclusion);
    if (!pc || (pc->value != "Yes" && pc->value != "No"))
      return fail(complaint, "malformed fact: " + n.conclusion);
    return true;
  }
  if (n.rule == "none") return n.premises.empty();

  auto pc = parse_concl(n.conclusion);
  if (!pc) return fail(complaint, "unparseable conclusion: " + n.conclusion);
  ExprPtr e;
  try {
    e = parse_expr(pc->expr);
  } catch (const SyntaxError&) {
    return fail(complaint, "conclusion expression does not parse: " + pc->expr);
  }
  const std::string& name = pc->expr;
  bool yes = pc->value == "Yes";
  if (!yes && pc->value != "No") return fail(complaint, "bad value in " + n.conclusion);

  auto kid_name = [&](size_t i) { return print_expr(*e->kids[i]); };

  if (n.rule == "A1")
    return (pc->attr == A_CG && !yes && has_premise(n, A_TALL, name, "Yes")) ||
           fail(complaint, "A1 premise missing for " + name);
  if (n.rule == "A2") {
    if (pc->attr != A_ANALYTIC || !yes) return fail(complaint, "A2 shape: " + n.conclusion);
    if (e->kind == K::FinPow && e->power >= 2) {
      return (has_premise(n, A_ANALYTIC, "Fin", "Yes") &&
              has_premise(n, A_ANALYTIC, "FinPow " + std::to_string(e->power - 1), "Yes")) ||
             fail(complaint, "A2 premises missing for " + name);
    }
    for (size_t i = 0; i < e->kids.size(); ++i)
      if (!has_premise(n, A_ANALYTIC, kid_name(i), "Yes"))
        return fail(complaint, "A2 premise missing: " + kid_name(i));
    return !e->kids.empty() || fail(complaint, "A2 on a leaf: " + name);
  }
  if (n.rule == "A3") {
    if (pc->attr != A_CG || !yes) return fail(complaint, "A3 shape: " + n.conclusion);
    if (e->kind != K::DirectSum && e->kind != K::FullPad && e->kind != K::ColExt)
      return fail(complaint, "A3 applies to sums, pads and column extensions");
    for (size_t i = 0; i < e->kids.size(); ++i)
      if (!has_premise(n, A_CG, kid_name(i), "Yes"))
        return fail(complaint, "A3 premise missing: " + kid_name(i));
    return true;
  }

  if (pc->attr == A_ANALYTIC && n.rule == "def") {
    ExprPtr x = definitional_expansion(*e);
    if (!x) return fail(complaint, "def on a non-defined atom: " + name);
    return has_premise(n, A_ANALYTIC, print_expr(*x), pc->value.c_str()) ||
           fail(complaint, "def premise missing for " + name);
  }
  if (pc->attr != A_EGOROV) return fail(complaint, "unexpected attribute: " + n.conclusion);

  if (n.rule == "R1")
    return has_premise(n, A_CG, name, "Yes") && yes
               ? true
               : fail(complaint, "R1 premise missing for " + name);
  if (n.rule == "R2")
    return (!yes && has_premise(n, A_NPFS, name, "Yes") && has_premise(n, A_CG, name, "No")) ||
           fail(complaint, "R2 premises missing for " + name);
  if (n.rule == "R3")
    return (!yes && has_premise(n, A_TALL, name, "Yes") && has_premise(n, A_NPFS, name, "Yes")) ||
           fail(complaint, "R3 premises missing for " + name);
  if (n.rule == "R4") {
    if (e->kind != K::DirectSum) return fail(complaint, "R4 needs a direct sum");
    if (yes)
      return (has_premise(n, A_EGOROV, kid_name(0), "Yes") &&
              has_premise(n, A_EGOROV, kid_name(1), "Yes")) ||
             fail(complaint, "R4 premises missing for " + name);
    return has_premise(n, A_EGOROV, kid_name(0), "No") ||
           has_premise(n, A_EGOROV, kid_name(1), "No") ||
           fail(complaint, "R4 premise missing for " + name);
  }
  if (n.rule == "R5" || n.rule == "R6" || n.rule == "R12") {
    K want = n.rule == "R5" ? K::FullPad : n.rule == "R6" ? K::ColExt : K::Restrict;
    if (e->kind != want) return fail(complaint, n.rule + (" on the wrong constructor: " + name));
    if (n.rule == "R12" && !yes) return fail(complaint, "R12 only passes Yes down");
    return has_premise(n, A_EGOROV, kid_name(0), pc->value.c_str()) ||
           fail(complaint, n.rule + (" premise missing for " + name));
  }
  if (n.rule == "R7") {
    if (e->kind != K::RowExt && e->kind != K::IndexedSum)
      return fail(complaint, "R7 needs a row extension or an indexed sum");
    if (yes) {
      for (size_t i = 0; i < e->kids.size(); ++i)
        if (!has_premise(n, A_EGOROV, kid_name(i), "Yes"))
          return fail(complaint, "R7 premise missing: " + kid_name(i));
      return true;
    }
    for (size_t i = 0; i < e->kids.size(); ++i)
      if (has_premise(n, A_EGOROV, kid_name(i), "No")) return true;
    return fail(complaint, "R7 premise missing for " + name);
  }
  if (n.rule == "R8") {
    if (e->kind != K::Meet || !yes) return fail(complaint, "R8 shape: " + n.conclusion);
    for (size_t i = 0; i < e->kids.size(); ++i)
      if (!has_premise(n, A_EGOROV, kid_name(i), "Yes"))
        return fail(complaint, "R8 premise missing: " + kid_name(i));
    return true;
  }
  if (n.rule == "R9") {
    if (e->kind != K::IndexedSumOver) return fail(complaint, "R9 needs an indexed sum");
    std::string index = kid_name(0);
    uint64_t split = e->kids.size() - 2;
    if (!yes && has_premise(n, A_EGOROV, index, "No")) return true;
    const DerivationNode* m = find_member(n);
    if (!m) return fail(complaint, "R9 lacks both a bad index ideal and a member premise");
    auto mc = parse_concl(m->conclusion);
    std::string m_expr, m_descr;
    if (!mc || !split_member(mc->expr, m_expr, m_descr) || m_expr != index)
      return fail(complaint, "R9 member premise misshapen for " + name);
    std::vector<uint64_t> marked;
    bool tail_marked;
    if (yes) {
      // bad-set upper bound: parts without a Yes premise
      for (uint64_t i = 0; i < split; ++i)
        if (!has_premise(n, A_EGOROV, kid_name(i + 1), "Yes")) marked.push_back(i);
      tail_marked = !has_premise(n, A_EGOROV, kid_name(e->kids.size() - 1), "Yes");
    } else {
      for (uint64_t i = 0; i < split; ++i)
        if (has_premise(n, A_EGOROV, kid_name(i + 1), "No")) marked.push_back(i);
      tail_marked = has_premise(n, A_EGOROV, kid_name(e->kids.size() - 1), "No");
    }
    if (print_descr(bad_descr(marked, tail_marked, split)) != m_descr)
      return fail(complaint, "R9 bad-index set does not match its member premise");
    if (mc->value != (yes ? "In" : "Out"))
      return fail(complaint, "R9 member direction is wrong for " + name);
    if (yes) {
      if (!has_premise(n, A_EGOROV, index, "Yes"))
        return fail(complaint, "R9 premise missing: the index ideal verdict");
      for (size_t i = 1; i < e->kids.size(); ++i)
        if (!has_premise(n, A_ANALYTIC, kid_name(i), "Yes"))
          return fail(complaint, "R9 analytic premise missing: " + kid_name(i));
    }
    return true;
  }
  if (n.rule == "R10") {
    std::string a, b;
    if (e->kind == K::Fubini) {
      a = kid_name(0);
      b = kid_name(1);
    } else if (e->kind == K::FinPow && e->power >= 2) {
      a = "Fin";
      b = "FinPow " + std::to_string(e->power - 1);
    } else {
      return fail(complaint, "R10 needs a product");
    }
    if (yes)
      return (has_premise(n, A_EGOROV, a, "Yes") && has_premise(n, A_EGOROV, b, "Yes") &&
              has_premise(n, A_ANALYTIC, b, "Yes")) ||
             fail(complaint, "R10 premises missing for " + name);
    return has_premise(n, A_EGOROV, a, "No") || has_premise(n, A_EGOROV, b, "No") ||
           fail(complaint, "R10 premise missing for " + name);
  }
  if (n.rule == "R11") {
    for (const auto& p : n.premises) {
      if (!is_rk_edge(p.conclusion)) continue;
      size_t cut = p.conclusion.find(" <=RK ");
      std::string source = p.conclusion.substr(0, cut);
      std::string target = p.conclusion.substr(cut + 6);
      if (!yes && target == name && has_premise(n, A_EGOROV, source, "No")) return true;
      if (yes && source == name && has_premise(n, A_EGOROV, target, "Yes")) return true;
    }
    return fail(complaint, "R11 premises missing for " + name);
  }
  if (n.rule == "def") {
    ExprPtr x = definitional_expansion(*e);
    if (!x) return fail(complaint, "def on a non-defined atom: " + name);
    return has_premise(n, A_EGOROV, print_expr(*x), pc->value.c_str()) ||
           fail(complaint, "def premise missing for " + name);
  }
  return fail(complaint, "unknown rule '" + n.rule + "'");
}

}  // namespace

bool replay(const DerivationNode& n, std::string* complaint) {
  return replay_node(n, complaint);
}

// -------------------------------------------------- countably generated forms

const char* canon_name(CanonKind k) {
  switch (k) {
    case CanonKind::IsoFin:
      return "IsoFin";
    case CanonKind::IsoFinPadded:
      return "IsoFinPadded";
    case CanonKind::IsoFinTimesEmpty:
      return "IsoFinTimesEmpty";
  }
  return "?";
}

Canonicalization canonicalize_countably_generated(const std::vector<Descr>& generators,
                                                  bool every_index_tail) {
  Canonicalization out;
  out.schematic_tail = every_index_tail;
  if (!generators.empty()) {
    SpacePtr sp = generators.front().space;
    for (const auto& g : generators)
      if (!same_space(*g.space, *sp))
        throw SpaceMismatch("generators live on different spaces");
  }
  std::optional<Descr> seen;
  for (size_t n = 0; n < generators.size(); ++n) {
    Descr block = seen ? d_inter(generators[n], d_compl(*seen)) : generators[n];
    auto infinite = try_infinite(block);
    if (!infinite)
      throw UndecidableFiniteness(
          "the finiteness of disjointified generator " + std::to_string(n) +
              " is outside the decidable fragment",
          n);
    out.blocks.push_back(block);
    if (*infinite) out.infinite_blocks.push_back(n);
    seen = seen ? d_union(*seen, generators[n]) : generators[n];
  }
  auto list_indices = [&] {
    std::string s;
    for (size_t i : out.infinite_blocks) s += (s.empty() ? "" : ", ") + std::to_string(i);
    return s;
  };
  if (every_index_tail) {
    out.kind = CanonKind::IsoFinTimesEmpty;
    out.witness =
        "the family continues with one generator per index, so infinitely "
        "many disjointified blocks are infinite; sending the n-th block onto "
        "the n-th column (finite leftovers into the first column) realizes "
        "the free-second-coordinate form";
  } else if (out.infinite_blocks.empty()) {
    out.kind = CanonKind::IsoFin;
    out.witness =
        "every disjointified block is finite, so any enumeration of the "
        "ground set carries the generated ideal onto the finite sets";
  } else {
    out.kind = CanonKind::IsoFinPadded;
    out.witness = "blocks {" + list_indices() +
                  "} are infinite; mapping their union onto the free part and "
                  "everything else onto the constrained part realizes the "
                  "padded form";
  }
  return out;
}

// ---------------------------------------------------------------- the table

std::vector<GoldenEntry> example_verdicts() {
  ExprPtr fin = expr_atom(K::Fin);
  std::vector<std::pair<ExprPtr, Trool>> rows = {
      {fin, Trool::Yes},
      {expr_node(K::FullPad, {fin}), Trool::Yes},
      {expr_node(K::ColExt, {fin}), Trool::Yes},
      {expr_node(K::RowExt, {fin}), Trool::Yes},
      {expr_finpow(2), Trool::Yes},
      {expr_finpow(3), Trool::Yes},
      {expr_finpow(4), Trool::Yes},
      {expr_atom(K::BI), Trool::Yes},
      {expr_atom(K::CEI), Trool::Yes},
      {expr_summable(parse_weight_rule("1/(n+1)")), Trool::No},
      {expr_atom(K::Density), Trool::No},
      {expr_atom(K::Ib), Trool::No},
      {expr_atom(K::EDFin), Trool::No},
      {expr_atom(K::Mazur), Trool::No},
      {expr_atom(K::Solecki), Trool::No},
  };
  std::vector<GoldenEntry> table;
  for (const auto& [expr, expected] : rows)
    table.push_back({print_expr(*expr), expected, classify(*expr)});
  return table;
}

}  // namespace iw
