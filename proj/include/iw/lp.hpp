#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "iw/rational.hpp"

namespace iw {

struct LpUnbounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// max objective . x  subject to  rows[i] . x <= bounds[i], x >= 0.
// All bounds must be >= 0 so that the slack basis is feasible.
struct DenseLp {
  size_t vars = 0;
  std::vector<Rat> objective;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> bounds;
};

struct LpSolution {
  Rat value;
  std::vector<Rat> x;
  uint64_t pivots = 0;
};

// exact rational simplex; Dantzig pricing with a switch to Bland's rule
LpSolution lp_maximize(const DenseLp& lp);

}  // namespace iw
