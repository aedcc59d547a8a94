#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iw/rational.hpp"

namespace iw {

// Finite union of half-open rational intervals inside [0,1), kept sorted,
// disjoint and gap-separated (touching parts are merged on normalization).
struct IntervalSet {
  std::vector<std::pair<Rat, Rat>> parts;

  bool operator==(const IntervalSet& o) const { return parts == o.parts; }
};

// Normalizes arbitrary input parts. Empty parts are dropped; everything must
// stay inside [0,1).
IntervalSet make_intervals(std::vector<std::pair<Rat, Rat>> raw);

// Textual form "[p/q, r/s) u [a/b, c/d)"; the separator may be "u", "," or
// the union sign. Whitespace-only input is the empty set.
IntervalSet parse_intervals(const std::string& text);
std::string print_intervals(const IntervalSet& s);

Rat measure_of(const IntervalSet& s);

// Intersection with one half-open interval.
IntervalSet clip(const IntervalSet& s, const Rat& lo, const Rat& hi);

}  // namespace iw
