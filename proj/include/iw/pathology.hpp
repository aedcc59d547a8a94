#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iw/lp.hpp"
#include "iw/submeasure.hpp"

namespace iw {

// hull(A) = best total mass on A among measures dominated by phi, as cut out
// by the chosen constraint family over the ground
struct HullReport {
  std::vector<uint64_t> set;  // A
  ExtRat phi_value;
  Rat hull_value;
  Rat gap;  // phi_value - hull_value, never negative
  std::vector<std::pair<uint64_t, Rat>> witness;  // optimal masses per ground point
  std::string family;     // "exhaustive" or the reduced family tag
  uint64_t constraints = 0;
  bool witness_verified = false;             // rechecked against the solved family
  bool witness_verified_exhaustive = false;  // rechecked against every subset (small grounds)
  uint64_t lp_pivots = 0;
};

enum class FamilyKind { Exhaustive, Reduced };

std::vector<LpConstraint> exhaustive_family(const Submeasure& phi, const std::vector<uint64_t>& ground);

HullReport hull(const Submeasure& phi, const std::vector<uint64_t>& ground,
                const std::vector<uint64_t>& a, FamilyKind kind);

struct ScanReport {
  std::vector<HullReport> reports;
  bool all_zero_gaps = true;
  Rat max_gap;
  std::vector<uint64_t> max_gap_set;
};

// random subsets of the ground; reduced family when the submeasure carries
// one that fits, otherwise exhaustive
ScanReport pathology_scan(const Submeasure& phi, const std::vector<uint64_t>& ground,
                          uint64_t samples, uint64_t seed);

}  // namespace iw
