#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iw/description.hpp"

namespace iw {

// Exact structural analysis of described sets. Every query returns nullopt
// rather than guessing when the description falls outside the decidable
// fragment for its space; oracles degrade to empirical evidence then.

enum class Extent { Finite, Cofinite, Mixed };  // Mixed: infinite and coinfinite

std::optional<bool> try_empty(const Descr& d);
std::optional<bool> try_infinite(const Descr& d);
std::optional<Extent> try_extent(const Descr& d);
// exact code list; requires a decidably finite, fully materializable set
std::optional<std::vector<uint64_t>> try_finite_codes(const Descr& d);

// Product spaces: a finite partition of the left factor into guard classes on
// which the section trace is constant.
struct ProductClasses {
  std::vector<std::pair<Descr, Descr>> classes;  // (guard over left, trace over right)
};
ProductClasses product_classes(const Descr& d);

// Sum spaces: finitely many exceptional sections plus a uniform tail trace.
// MazurSum sections are carried as descriptions over omega (local codes).
struct SumSections {
  std::vector<std::pair<uint64_t, Descr>> exceptional;  // sorted by part
  std::optional<Descr> tail;  // absent for sums with finitely many parts
  std::vector<uint64_t> finite_parts;  // all part indices when no tail
};
SumSections sum_sections(const Descr& d);
Descr section_trace(const Descr& d, uint64_t n);

// Views backing structural ideal verdicts.
struct BinView {
  bool cosmall;        // set is the complement of (branches + corrections)
  size_t branches;     // distinct branch words in the small part
  size_t loose;        // finite corrections added on top
};
std::optional<BinView> binseq_view(const Descr& d);

struct DeltaView {
  bool corow;       // complement of (rows + corrections)
  size_t rows;      // distinct row indices in the small part
  size_t loose;     // added codes
};
std::optional<DeltaView> delta_view(const Descr& d);

}  // namespace iw
