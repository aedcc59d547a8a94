#include "iw/description.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace iw {

namespace {

std::shared_ptr<const Descr> box(Descr d) {
  return std::make_shared<Descr>(std::move(d));
}

void need(bool cond, const char* what) {
  if (!cond) throw SpaceMismatch(what);
}

bool sum_like(const Space& s) {
  return s.kind == Space::Kind::DisjointSum || s.kind == Space::Kind::MazurSum;
}
bool axis_like(const Space& s) {
  return s.kind == Space::Kind::Product || s.kind == Space::Kind::Delta;
}

}  // namespace

Descr d_empty(SpacePtr sp) {
  Descr d;
  d.kind = Descr::Kind::Empty;
  d.space = std::move(sp);
  return d;
}

Descr d_full(SpacePtr sp) {
  Descr d;
  d.kind = Descr::Kind::Full;
  d.space = std::move(sp);
  return d;
}

Descr d_finite(SpacePtr sp, std::vector<uint64_t> codes) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  for (auto c : codes) need(valid_code(*sp, c), "finite set with invalid code");
  Descr d;
  d.kind = Descr::Kind::Finite;
  d.space = std::move(sp);
  d.codes = std::move(codes);
  return d;
}

Descr d_compl(Descr x) {
  Descr d;
  d.kind = Descr::Kind::Complement;
  d.space = x.space;
  d.a = box(std::move(x));
  return d;
}

Descr d_union(Descr x, Descr y) {
  need(same_space(*x.space, *y.space), "union across spaces");
  Descr d;
  d.kind = Descr::Kind::Union;
  d.space = x.space;
  d.a = box(std::move(x));
  d.b = box(std::move(y));
  return d;
}

Descr d_inter(Descr x, Descr y) {
  need(same_space(*x.space, *y.space), "intersection across spaces");
  Descr d;
  d.kind = Descr::Kind::Intersection;
  d.space = x.space;
  d.a = box(std::move(x));
  d.b = box(std::move(y));
  return d;
}

Descr d_column(SpacePtr sp, uint64_t i) {
  need(axis_like(*sp), "column needs a product or delta space");
  Descr d;
  d.kind = Descr::Kind::Column;
  d.space = std::move(sp);
  d.index = i;
  return d;
}

Descr d_row(SpacePtr sp, uint64_t j) {
  need(axis_like(*sp), "row needs a product or delta space");
  Descr d;
  d.kind = Descr::Kind::Row;
  d.space = std::move(sp);
  d.index = j;
  return d;
}

Descr d_section(SpacePtr sp, uint64_t n) {
  need(sum_like(*sp), "section needs a sum space");
  if (sp->kind == Space::Kind::MazurSum && n == 0)
    throw IndexZero("mazur parts start at 1");
  Descr d;
  d.kind = Descr::Kind::Section;
  d.space = std::move(sp);
  d.index = n;
  return d;
}

Descr d_branch(SpacePtr sp, std::vector<uint8_t> prefix, std::vector<uint8_t> period) {
  need(sp->kind == Space::Kind::BinarySeq, "branch needs the binary tree");
  need(!period.empty(), "branch needs a nonempty period");
  for (auto b : prefix) need(b <= 1, "branch digits are 0/1");
  for (auto b : period) need(b <= 1, "branch digits are 0/1");
  Descr d;
  d.kind = Descr::Kind::Branch;
  d.space = std::move(sp);
  d.wprefix = std::move(prefix);
  d.wperiod = std::move(period);
  return d;
}

Descr d_threshold(SpacePtr sp, uint64_t k) {
  need(sp->kind == Space::Kind::Omega, "threshold lives on omega");
  Descr d;
  d.kind = Descr::Kind::Threshold;
  d.space = std::move(sp);
  d.index = k;
  return d;
}

Descr d_stride(SpacePtr sp, uint64_t start, uint64_t step) {
  need(sp->kind == Space::Kind::Omega, "stride lives on omega");
  need(step >= 1, "stride step must be positive");
  Descr d;
  d.kind = Descr::Kind::Stride;
  d.space = std::move(sp);
  d.index = start;
  d.step = step;
  return d;
}

Descr d_rectangle(Descr left, Descr right) {
  Descr d;
  d.kind = Descr::Kind::Rectangle;
  d.space = product(left.space, right.space);
  d.a = box(std::move(left));
  d.b = box(std::move(right));
  return d;
}

bool member(const Descr& d, uint64_t code) {
  if (!valid_code(*d.space, code)) return false;
  switch (d.kind) {
    case Descr::Kind::Empty:
      return false;
    case Descr::Kind::Full:
      return true;
    case Descr::Kind::Finite:
      return std::binary_search(d.codes.begin(), d.codes.end(), code);
    case Descr::Kind::Complement:
      return !member(*d.a, code);
    case Descr::Kind::Union:
      return member(*d.a, code) || member(*d.b, code);
    case Descr::Kind::Intersection:
      return member(*d.a, code) && member(*d.b, code);
    case Descr::Kind::Column: {
      if (d.space->kind == Space::Kind::Delta)
        return delta_point(code).first == d.index;
      return unpair_code(code).first == d.index;
    }
    case Descr::Kind::Row: {
      if (d.space->kind == Space::Kind::Delta)
        return delta_point(code).second == d.index;
      return unpair_code(code).second == d.index;
    }
    case Descr::Kind::Section:
      return unpair_code(code).first == d.index;
    case Descr::Kind::Branch: {
      auto w = binseq_word(code);
      for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != ep_digit(d.wprefix, d.wperiod, i)) return false;
      return true;
    }
    case Descr::Kind::Threshold:
      return code >= d.index;
    case Descr::Kind::Stride:
      return code >= d.index && (code - d.index) % d.step == 0;
    case Descr::Kind::Rectangle: {
      auto [i, j] = unpair_code(code);
      return member(*d.a, i) && member(*d.b, j);
    }
  }
  return false;
}

std::vector<uint64_t> materialize(const Descr& d, uint64_t prefix) {
  std::vector<uint64_t> out;
  for (auto c : enumerate_space(*d.space, prefix))
    if (member(d, c)) out.push_back(c);
  return out;
}

bool descr_equal(const Descr& x, const Descr& y) {
  if (x.kind != y.kind || !same_space(*x.space, *y.space)) return false;
  if (x.codes != y.codes || x.index != y.index || x.step != y.step) return false;
  if (x.wprefix != y.wprefix || x.wperiod != y.wperiod) return false;
  if (!x.a != !y.a || !x.b != !y.b) return false;
  if (x.a && !descr_equal(*x.a, *y.a)) return false;
  if (x.b && !descr_equal(*x.b, *y.b)) return false;
  return true;
}

// ------------------------------------------------------------ s-expressions

namespace {

struct Reader {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    if (i >= s.size()) throw SyntaxError("unexpected end", i);
    return s[i];
  }
  void expect(char c) {
    if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", i);
    ++i;
  }
  std::string token() {
    skip();
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
           s[i] != '(' && s[i] != ')')
      ++i;
    if (i == start) throw SyntaxError("expected a token", i);
    return s.substr(start, i - start);
  }
  uint64_t number() {
    size_t at = i;
    auto t = token();
    try {
      size_t used = 0;
      unsigned long long v = std::stoull(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw SyntaxError("expected a number, got '" + t + "'", at);
    }
  }
  std::vector<uint8_t> word() {
    size_t at = i;
    auto t = token();
    std::vector<uint8_t> w;
    for (char c : t) {
      if (c != '0' && c != '1') throw SyntaxError("expected a 0-1 word", at);
      w.push_back(c == '1');
    }
    return w;
  }
};

Descr parse_node(Reader& r, const SpacePtr& sp) {
  if (r.peek() != '(') {
    size_t at = r.i;
    auto t = r.token();
    if (t == "all") return d_full(sp);
    throw SyntaxError("expected '(' or 'all', got '" + t + "'", at);
  }
  r.expect('(');
  size_t at = r.i;
  auto head = r.token();
  Descr out;
  if (head == "empty") {
    out = d_empty(sp);
  } else if (head == "full") {
    out = d_full(sp);
  } else if (head == "finite") {
    std::vector<uint64_t> codes;
    while (r.peek() != ')') codes.push_back(r.number());
    out = d_finite(sp, std::move(codes));
  } else if (head == "complement") {
    out = d_compl(parse_node(r, sp));
  } else if (head == "union" || head == "intersection") {
    std::vector<Descr> kids;
    while (r.peek() != ')') kids.push_back(parse_node(r, sp));
    if (kids.size() < 2) throw SyntaxError(head + " needs two operands", at);
    out = std::move(kids[0]);
    for (size_t k = 1; k < kids.size(); ++k)
      out = head == "union" ? d_union(std::move(out), std::move(kids[k]))
                            : d_inter(std::move(out), std::move(kids[k]));
  } else if (head == "column") {
    out = d_column(sp, r.number());
  } else if (head == "row") {
    out = d_row(sp, r.number());
  } else if (head == "section") {
    out = d_section(sp, r.number());
  } else if (head == "branch") {
    auto first = r.word();
    if (r.peek() == ')') {
      out = d_branch(sp, {}, std::move(first));
    } else {
      auto second = r.word();
      out = d_branch(sp, std::move(first), std::move(second));
    }
  } else if (head == "threshold") {
    out = d_threshold(sp, r.number());
  } else if (head == "stride") {
    uint64_t a = r.number(), s = r.number();
    out = d_stride(sp, a, s);
  } else if (head == "rectangle") {
    if (sp->kind != Space::Kind::Product)
      throw SyntaxError("rectangle needs a product space", at);
    auto l = parse_node(r, sp->left);
    auto rr = parse_node(r, sp->right);
    out = d_rectangle(std::move(l), std::move(rr));
  } else {
    throw SyntaxError("unknown constructor '" + head + "'", at);
  }
  r.expect(')');
  return out;
}

}  // namespace

Descr parse_descr(const std::string& text, SpacePtr sp) {
  Reader r{text};
  auto d = parse_node(r, sp);
  if (!r.eof()) throw SyntaxError("trailing input", r.i);
  return d;
}

std::string print_descr(const Descr& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Descr::Kind::Empty:
      os << "(empty)";
      break;
    case Descr::Kind::Full:
      os << "(full)";
      break;
    case Descr::Kind::Finite: {
      os << "(finite";
      for (auto c : d.codes) os << " " << c;
      os << ")";
      break;
    }
    case Descr::Kind::Complement:
      os << "(complement " << print_descr(*d.a) << ")";
      break;
    case Descr::Kind::Union:
      os << "(union " << print_descr(*d.a) << " " << print_descr(*d.b) << ")";
      break;
    case Descr::Kind::Intersection:
      os << "(intersection " << print_descr(*d.a) << " " << print_descr(*d.b)
         << ")";
      break;
    case Descr::Kind::Column:
      os << "(column " << d.index << ")";
      break;
    case Descr::Kind::Row:
      os << "(row " << d.index << ")";
      break;
    case Descr::Kind::Section:
      os << "(section " << d.index << ")";
      break;
    case Descr::Kind::Branch: {
      os << "(branch ";
      if (!d.wprefix.empty()) {
        for (auto b : d.wprefix) os << int(b);
        os << " ";
      }
      for (auto b : d.wperiod) os << int(b);
      os << ")";
      break;
    }
    case Descr::Kind::Threshold:
      os << "(threshold " << d.index << ")";
      break;
    case Descr::Kind::Stride:
      os << "(stride " << d.index << " " << d.step << ")";
      break;
    case Descr::Kind::Rectangle:
      os << "(rectangle " << print_descr(*d.a) << " " << print_descr(*d.b)
         << ")";
      break;
  }
  return os.str();
}

}  // namespace iw
