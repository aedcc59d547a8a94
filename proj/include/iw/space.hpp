#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace iw {

struct SpaceMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CountExceedsSpace : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IndexZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Branching vector for finitely branching trees: explicit prefix, then either
// a constant or an affine rule a*n+b for the remaining levels.
struct GrowthVector {
  std::vector<uint64_t> prefix;
  uint64_t affine_a = 0;  // tail rule: affine_a * n + affine_b
  uint64_t affine_b = 2;

  uint64_t at(uint64_t n) const {
    if (n < prefix.size()) return prefix[n];
    return affine_a * n + affine_b;
  }
  bool operator==(const GrowthVector& o) const {
    return prefix == o.prefix && affine_a == o.affine_a && affine_b == o.affine_b;
  }
};

inline GrowthVector constant_growth(uint64_t k) { return GrowthVector{{}, 0, k}; }
inline GrowthVector affine_growth(uint64_t a, uint64_t b) { return GrowthVector{{}, a, b}; }

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

// A point universe with a fixed coding of points as naturals. Codes of
// Omega, Product, BinarySeq, TreeSeq and Delta are all of omega; codes of
// DisjointSum/MazurSum are the pairs pair(part, local), a decidable subset
// of omega enumerated in increasing order; ClopenHalf is finite.
struct Space {
  enum class Kind {
    Omega,        // natural numbers
    Product,      // left x right, both infinite, Cantor pairing
    DisjointSum,  // head parts then an optional repeated tail part
    BinarySeq,    // finite 0-1 words, level order
    TreeSeq,      // finite words below a growth vector, level order
    Delta,        // {(i,j): i >= j}, triangular coding
    MazurSum,     // disjoint sum over n>=1 of the functions n -> 2n
    ClopenHalf,   // size-2^(l-1) subsets of the length-l binary words
  };

  Kind kind = Kind::Omega;
  SpacePtr left, right;          // Product
  std::vector<SpacePtr> head;    // DisjointSum leading parts
  SpacePtr tail;                 // DisjointSum repeated part (null: only head)
  GrowthVector growth;           // TreeSeq
  int resolution = 0;            // ClopenHalf
};

SpacePtr omega();
SpacePtr product(SpacePtr l, SpacePtr r);
SpacePtr disjoint_sum(std::vector<SpacePtr> head, SpacePtr tail = nullptr);
SpacePtr binary_seq();
SpacePtr tree_seq(GrowthVector g);
SpacePtr delta_space();
SpacePtr mazur_sum();
SpacePtr clopen_half(int l);

bool same_space(const Space& a, const Space& b);
bool space_infinite(const Space& s);
uint64_t space_card(const Space& s);  // finite spaces only

// Cantor pairing: (0,0)->0, (1,0)->1, (0,1)->2.
uint64_t pair_code(uint64_t i, uint64_t j);
std::pair<uint64_t, uint64_t> unpair_code(uint64_t c);

bool valid_code(const Space& s, uint64_t code);
// First `count` valid codes in increasing order.
std::vector<uint64_t> enumerate_space(const Space& s, uint64_t count);
std::string point_str(const Space& s, uint64_t code);

// DisjointSum/MazurSum part access.
uint64_t sum_part_count(const Space& s);  // UINT64_MAX when infinite
SpacePtr sum_part_space(const Space& s, uint64_t n);

// Word coding shared by BinarySeq (growth == 2) and TreeSeq: level order,
// within a level lexicographic. Empty word is code 0.
uint64_t word_code(const GrowthVector& g, const std::vector<uint64_t>& w);
std::vector<uint64_t> word_of_code(const GrowthVector& g, uint64_t code);

uint64_t binseq_code(const std::vector<uint8_t>& w);
std::vector<uint8_t> binseq_word(uint64_t code);

// Delta: code of (i,j) with i >= j is i(i+1)/2 + j.
uint64_t delta_code(uint64_t i, uint64_t j);
std::pair<uint64_t, uint64_t> delta_point(uint64_t code);

// MazurSum locals: g : n -> 2n ranked lexicographically (g(0) most
// significant digit base 2n).
uint64_t mazur_part_card(uint64_t n);  // (2n)^n, saturating
std::vector<uint32_t> mazur_fn(uint64_t n, uint64_t local);
uint64_t mazur_local(uint64_t n, const std::vector<uint32_t>& g);

// ClopenHalf: members are bitmasks over the 2^l cells (bit c set means the
// cylinder of the length-l word with value c lies inside the member), ranked
// by increasing mask value.
uint64_t clopen_member_count(int l);
uint64_t clopen_mask(int l, uint64_t code);
uint64_t clopen_code(int l, uint64_t mask);
uint64_t cell_value(const std::vector<uint8_t>& w);  // big-endian word value

}  // namespace iw
