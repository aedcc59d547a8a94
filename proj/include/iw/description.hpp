#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iw/space.hpp"

namespace iw {

struct SyntaxError : std::runtime_error {
  size_t position;
  SyntaxError(const std::string& what, size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)),
        position(pos) {}
  explicit SyntaxError(const std::string& what) : std::runtime_error(what), position(0) {}
};

// Syntax trees denoting subsets of a space. Membership of any coded point is
// decidable by structural recursion; the finiteness analyses live in
// analysis.hpp.
struct SetDescription {
  enum class Kind {
    Empty,
    Full,
    Finite,        // explicit sorted codes
    Complement,
    Union,
    Intersection,
    Column,        // Product: {index} x right; Delta: first coordinate = index
    Row,           // Product: left x {index}; Delta: second coordinate = index
    Section,       // DisjointSum/MazurSum: part `index`
    Branch,        // BinarySeq: prefixes of the eventually periodic word
    Threshold,     // Omega: {index, index+1, ...}
    Stride,        // Omega: {index + k*step}
    Rectangle,     // Product: a x b
  };

  Kind kind = Kind::Empty;
  SpacePtr space;
  std::vector<uint64_t> codes;                   // Finite
  std::shared_ptr<const SetDescription> a, b;    // children
  uint64_t index = 0;                            // Column/Row/Section/Threshold/Stride start
  uint64_t step = 1;                             // Stride
  std::vector<uint8_t> wprefix, wperiod;         // Branch
};

using Descr = SetDescription;

Descr d_empty(SpacePtr sp);
Descr d_full(SpacePtr sp);
Descr d_finite(SpacePtr sp, std::vector<uint64_t> codes);
Descr d_compl(Descr d);
Descr d_union(Descr x, Descr y);
Descr d_inter(Descr x, Descr y);
Descr d_column(SpacePtr sp, uint64_t i);
Descr d_row(SpacePtr sp, uint64_t j);
Descr d_section(SpacePtr sp, uint64_t n);
Descr d_branch(SpacePtr sp, std::vector<uint8_t> prefix, std::vector<uint8_t> period);
Descr d_threshold(SpacePtr sp, uint64_t k);
Descr d_stride(SpacePtr sp, uint64_t start, uint64_t step);
Descr d_rectangle(Descr left, Descr right);  // left over P.left, right over P.right

bool member(const Descr& d, uint64_t code);
std::vector<uint64_t> materialize(const Descr& d, uint64_t prefix);  // within first `prefix` codes

// s-expression syntax, e.g. (union (column 3) (finite 1 4 9));
// branch takes one (pure period) or two (prefix, period) 0-1 words.
Descr parse_descr(const std::string& text, SpacePtr sp);
std::string print_descr(const Descr& d);

bool descr_equal(const Descr& x, const Descr& y);  // structural

// digit of the eventually periodic word prefix.period^inf
inline uint8_t ep_digit(const std::vector<uint8_t>& prefix,
                        const std::vector<uint8_t>& period, uint64_t i) {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

}  // namespace iw
