#include "iw/space.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace iw {

namespace {

SpacePtr make(Space s) { return std::make_shared<Space>(std::move(s)); }

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

uint64_t isqrt(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// largest w with w(w+1)/2 <= c
uint64_t tri_root(uint64_t c) {
  uint64_t w = isqrt(2 * c + 1);
  while (w > 0 && w * (w + 1) / 2 > c) --w;
  while ((w + 1) * (w + 2) / 2 <= c) ++w;
  return w;
}

uint64_t binom(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(r);
}

}  // namespace

SpacePtr omega() {
  static SpacePtr s = make(Space{});
  return s;
}

SpacePtr product(SpacePtr l, SpacePtr r) {
  if (!l || !r) throw SpaceMismatch("product of null space");
  if (!space_infinite(*l) || !space_infinite(*r))
    throw SpaceMismatch("product components must be infinite");
  Space s;
  s.kind = Space::Kind::Product;
  s.left = std::move(l);
  s.right = std::move(r);
  return make(std::move(s));
}

SpacePtr disjoint_sum(std::vector<SpacePtr> head, SpacePtr tail) {
  if (head.empty() && !tail) throw SpaceMismatch("disjoint sum with no parts");
  for (auto& p : head)
    if (!p) throw SpaceMismatch("disjoint sum with null part");
  Space s;
  s.kind = Space::Kind::DisjointSum;
  s.head = std::move(head);
  s.tail = std::move(tail);
  return make(std::move(s));
}

SpacePtr binary_seq() {
  static SpacePtr s = [] {
    Space x;
    x.kind = Space::Kind::BinarySeq;
    x.growth = constant_growth(2);
    return make(std::move(x));
  }();
  return s;
}

SpacePtr tree_seq(GrowthVector g) {
  for (auto v : g.prefix)
    if (v == 0) throw SpaceMismatch("tree growth must be positive");
  if (g.affine_a == 0 && g.affine_b == 0)
    throw SpaceMismatch("tree growth must be positive");
  Space s;
  s.kind = Space::Kind::TreeSeq;
  s.growth = std::move(g);
  return make(std::move(s));
}

SpacePtr delta_space() {
  static SpacePtr s = [] {
    Space x;
    x.kind = Space::Kind::Delta;
    return make(std::move(x));
  }();
  return s;
}

SpacePtr mazur_sum() {
  static SpacePtr s = [] {
    Space x;
    x.kind = Space::Kind::MazurSum;
    return make(std::move(x));
  }();
  return s;
}

SpacePtr clopen_half(int l) {
  if (l < 1 || l > 6) throw SpaceMismatch("clopen resolution out of range");
  Space s;
  s.kind = Space::Kind::ClopenHalf;
  s.resolution = l;
  return make(std::move(s));
}

bool same_space(const Space& a, const Space& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Space::Kind::Omega:
    case Space::Kind::Delta:
    case Space::Kind::MazurSum:
    case Space::Kind::BinarySeq:
      return true;
    case Space::Kind::Product:
      return same_space(*a.left, *b.left) && same_space(*a.right, *b.right);
    case Space::Kind::TreeSeq:
      return a.growth == b.growth;
    case Space::Kind::ClopenHalf:
      return a.resolution == b.resolution;
    case Space::Kind::DisjointSum: {
      if (a.head.size() != b.head.size()) return false;
      for (size_t i = 0; i < a.head.size(); ++i)
        if (!same_space(*a.head[i], *b.head[i])) return false;
      if (!a.tail != !b.tail) return false;
      return !a.tail || same_space(*a.tail, *b.tail);
    }
  }
  return false;
}

bool space_infinite(const Space& s) {
  switch (s.kind) {
    case Space::Kind::Omega:
    case Space::Kind::Product:
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta:
    case Space::Kind::MazurSum:
      return true;
    case Space::Kind::ClopenHalf:
      return false;
    case Space::Kind::DisjointSum: {
      if (s.tail) return true;
      for (auto& p : s.head)
        if (space_infinite(*p)) return true;
      return false;
    }
  }
  return true;
}

uint64_t space_card(const Space& s) {
  if (space_infinite(s)) throw CountExceedsSpace("space is infinite");
  if (s.kind == Space::Kind::ClopenHalf) return clopen_member_count(s.resolution);
  uint64_t total = 0;
  for (auto& p : s.head) total = sat_add(total, space_card(*p));
  return total;
}

uint64_t pair_code(uint64_t i, uint64_t j) {
  uint64_t w = i + j;
  return w * (w + 1) / 2 + j;
}

std::pair<uint64_t, uint64_t> unpair_code(uint64_t c) {
  uint64_t w = tri_root(c);
  uint64_t j = c - w * (w + 1) / 2;
  return {w - j, j};
}

uint64_t sum_part_count(const Space& s) {
  if (s.kind == Space::Kind::MazurSum) return UINT64_MAX;
  if (s.kind != Space::Kind::DisjointSum) throw SpaceMismatch("not a sum space");
  return s.tail ? UINT64_MAX : s.head.size();
}

SpacePtr sum_part_space(const Space& s, uint64_t n) {
  if (s.kind == Space::Kind::MazurSum) {
    if (n == 0) throw IndexZero("mazur parts start at 1");
    return nullptr;  // parts are bare finite function sets, no Space of their own
  }
  if (s.kind != Space::Kind::DisjointSum) throw SpaceMismatch("not a sum space");
  if (n < s.head.size()) return s.head[n];
  if (s.tail) return s.tail;
  throw SpaceMismatch("part index beyond sum");
}

uint64_t word_code(const GrowthVector& g, const std::vector<uint64_t>& w) {
  uint64_t offset = 0, level_size = 1;
  for (size_t n = 0; n < w.size(); ++n) {
    offset = sat_add(offset, level_size);
    level_size = sat_mul(level_size, g.at(n));
  }
  uint64_t rank = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= g.at(i)) throw SpaceMismatch("word digit beyond growth");
    rank = sat_add(sat_mul(rank, g.at(i)), w[i]);
  }
  return sat_add(offset, rank);
}

std::vector<uint64_t> word_of_code(const GrowthVector& g, uint64_t code) {
  uint64_t offset = 0, level_size = 1, level = 0;
  while (sat_add(offset, level_size) <= code) {
    offset = sat_add(offset, level_size);
    level_size = sat_mul(level_size, g.at(level));
    ++level;
  }
  uint64_t rank = code - offset;
  std::vector<uint64_t> w(level);
  for (uint64_t i = level; i-- > 0;) {
    uint64_t r = g.at(i);
    w[i] = rank % r;
    rank /= r;
  }
  return w;
}

uint64_t binseq_code(const std::vector<uint8_t>& w) {
  uint64_t c = 0;
  for (auto b : w) c = 2 * c + b + 1;
  return c;
}

std::vector<uint8_t> binseq_word(uint64_t code) {
  std::vector<uint8_t> w;
  while (code) {
    --code;
    w.push_back(code % 2);
    code /= 2;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

uint64_t delta_code(uint64_t i, uint64_t j) {
  if (j > i) throw SpaceMismatch("delta point needs i >= j");
  return i * (i + 1) / 2 + j;
}

std::pair<uint64_t, uint64_t> delta_point(uint64_t code) {
  uint64_t i = tri_root(code);
  return {i, code - i * (i + 1) / 2};
}

uint64_t mazur_part_card(uint64_t n) {
  uint64_t card = 1;
  for (uint64_t i = 0; i < n; ++i) card = sat_mul(card, 2 * n);
  return card;
}

std::vector<uint32_t> mazur_fn(uint64_t n, uint64_t local) {
  if (n == 0) throw IndexZero("mazur parts start at 1");
  std::vector<uint32_t> g(n);
  for (uint64_t i = n; i-- > 0;) {
    g[i] = static_cast<uint32_t>(local % (2 * n));
    local /= 2 * n;
  }
  if (local) throw SpaceMismatch("mazur local rank out of range");
  return g;
}

uint64_t mazur_local(uint64_t n, const std::vector<uint32_t>& g) {
  if (n == 0) throw IndexZero("mazur parts start at 1");
  if (g.size() != n) throw SpaceMismatch("mazur function arity mismatch");
  uint64_t r = 0;
  for (auto v : g) {
    if (v >= 2 * n) throw SpaceMismatch("mazur value out of range");
    r = r * (2 * n) + v;
  }
  return r;
}

uint64_t clopen_member_count(int l) {
  return binom(uint64_t{1} << l, uint64_t{1} << (l - 1));
}

uint64_t clopen_mask(int l, uint64_t code) {
  // colex unranking: subsets of the 2^l cells with 2^(l-1) elements, ordered
  // by increasing bitmask value
  uint64_t k = uint64_t{1} << (l - 1);
  if (code >= clopen_member_count(l)) throw SpaceMismatch("clopen code out of range");
  uint64_t mask = 0, r = code;
  for (uint64_t i = k; i >= 1; --i) {
    uint64_t h = i - 1;
    while (binom(h + 1, i) <= r) ++h;
    mask |= uint64_t{1} << h;
    r -= binom(h, i);
  }
  return mask;
}

uint64_t clopen_code(int l, uint64_t mask) {
  uint64_t cells = uint64_t{1} << l;
  uint64_t code = 0, seen = 0;
  for (uint64_t b = 0; b < cells; ++b)
    if (mask >> b & 1) code += binom(b, ++seen);
  if (seen != uint64_t{1} << (l - 1)) throw SpaceMismatch("clopen mask wrong size");
  return code;
}

uint64_t cell_value(const std::vector<uint8_t>& w) {
  uint64_t v = 0;
  for (auto b : w) v = 2 * v + b;
  return v;
}

bool valid_code(const Space& s, uint64_t code) {
  switch (s.kind) {
    case Space::Kind::Omega:
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta:
      return true;
    case Space::Kind::Product: {
      auto [i, j] = unpair_code(code);
      return valid_code(*s.left, i) && valid_code(*s.right, j);
    }
    case Space::Kind::ClopenHalf:
      return code < clopen_member_count(s.resolution);
    case Space::Kind::MazurSum: {
      auto [n, r] = unpair_code(code);
      return n >= 1 && r < mazur_part_card(n);
    }
    case Space::Kind::DisjointSum: {
      auto [n, r] = unpair_code(code);
      if (n >= s.head.size() && !s.tail) return false;
      return valid_code(*sum_part_space(s, n), r);
    }
  }
  return false;
}

namespace {

// Ascending stream of valid codes of a space.
struct CodeStream {
  virtual ~CodeStream() = default;
  virtual uint64_t next() = 0;  // UINT64_MAX when exhausted
};

std::unique_ptr<CodeStream> stream_of(const Space& s);

struct CounterStream : CodeStream {
  uint64_t at = 0, limit;
  explicit CounterStream(uint64_t lim) : limit(lim) {}
  uint64_t next() override { return at < limit ? at++ : UINT64_MAX; }
};

struct SumStream : CodeStream {
  const Space& s;
  uint64_t first_part, part_count;
  uint64_t next_part;
  std::vector<std::unique_ptr<CodeStream>> streams;  // by part offset
  using Entry = std::pair<uint64_t, uint64_t>;       // (code, part)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  explicit SumStream(const Space& sp) : s(sp) {
    first_part = s.kind == Space::Kind::MazurSum ? 1 : 0;
    part_count = sum_part_count(s);
    next_part = first_part;
  }

  void open(uint64_t part) {
    std::unique_ptr<CodeStream> st;
    if (s.kind == Space::Kind::MazurSum)
      st = std::make_unique<CounterStream>(mazur_part_card(part));
    else
      st = stream_of(*sum_part_space(s, part));
    uint64_t local = st->next();
    if (local != UINT64_MAX) heap.emplace(pair_code(part, local), part);
    streams.resize(std::max<size_t>(streams.size(), part - first_part + 1));
    streams[part - first_part] = std::move(st);
  }

  uint64_t next() override {
    while (true) {
      bool more_parts = next_part < part_count || (part_count == UINT64_MAX);
      if (s.kind == Space::Kind::DisjointSum && !s.tail)
        more_parts = next_part < s.head.size();
      if (more_parts &&
          (heap.empty() || pair_code(next_part, 0) <= heap.top().first)) {
        open(next_part++);
        continue;
      }
      if (heap.empty()) return UINT64_MAX;
      auto [code, part] = heap.top();
      heap.pop();
      uint64_t local = streams[part - first_part]->next();
      if (local != UINT64_MAX) heap.emplace(pair_code(part, local), part);
      return code;
    }
  }
};

struct ProductStream : CodeStream {
  const Space& s;
  uint64_t at = 0;
  explicit ProductStream(const Space& sp) : s(sp) {}
  uint64_t next() override {
    while (!valid_code(s, at)) ++at;  // components may skip codes
    return at++;
  }
};

std::unique_ptr<CodeStream> stream_of(const Space& s) {
  switch (s.kind) {
    case Space::Kind::Omega:
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq:
    case Space::Kind::Delta:
      return std::make_unique<CounterStream>(UINT64_MAX);
    case Space::Kind::ClopenHalf:
      return std::make_unique<CounterStream>(clopen_member_count(s.resolution));
    case Space::Kind::Product:
      return std::make_unique<ProductStream>(s);
    case Space::Kind::DisjointSum:
    case Space::Kind::MazurSum:
      return std::make_unique<SumStream>(s);
  }
  throw SpaceMismatch("unknown space");
}

}  // namespace

std::vector<uint64_t> enumerate_space(const Space& s, uint64_t count) {
  std::vector<uint64_t> out;
  out.reserve(count);
  auto st = stream_of(s);
  for (uint64_t i = 0; i < count; ++i) {
    uint64_t c = st->next();
    if (c == UINT64_MAX)
      throw CountExceedsSpace("space has fewer than " + std::to_string(count) +
                              " points");
    out.push_back(c);
  }
  return out;
}

std::string point_str(const Space& s, uint64_t code) {
  std::ostringstream os;
  switch (s.kind) {
    case Space::Kind::Omega:
      os << code;
      break;
    case Space::Kind::Product: {
      auto [i, j] = unpair_code(code);
      os << "(" << point_str(*s.left, i) << ", " << point_str(*s.right, j) << ")";
      break;
    }
    case Space::Kind::BinarySeq:
    case Space::Kind::TreeSeq: {
      auto g = s.kind == Space::Kind::BinarySeq ? constant_growth(2) : s.growth;
      auto w = word_of_code(g, code);
      if (w.empty()) {
        os << "()";
      } else {
        os << "(";
        for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
        os << ")";
      }
      break;
    }
    case Space::Kind::Delta: {
      auto [i, j] = delta_point(code);
      os << "(" << i << "," << j << ")";
      break;
    }
    case Space::Kind::MazurSum: {
      auto [n, r] = unpair_code(code);
      auto g = mazur_fn(n, r);
      os << "(n=" << n << "; ";
      for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
      os << ")";
      break;
    }
    case Space::Kind::ClopenHalf: {
      uint64_t mask = clopen_mask(s.resolution, code);
      os << "{";
      bool first = true;
      for (uint64_t c = 0; c < (uint64_t{1} << s.resolution); ++c)
        if (mask >> c & 1) {
          if (!first) os << ",";
          first = false;
          for (int b = s.resolution - 1; b >= 0; --b) os << (c >> b & 1);
        }
      os << "}";
      break;
    }
    case Space::Kind::DisjointSum: {
      auto [n, r] = unpair_code(code);
      os << "(part " << n << "; " << point_str(*sum_part_space(s, n), r) << ")";
      break;
    }
  }
  return os.str();
}

}  // namespace iw
