#include "iw/lp.hpp"

#include <limits>

namespace iw {

LpSolution lp_maximize(const DenseLp& lp) {
  const size_t n = lp.vars, m = lp.rows.size();
  if (lp.objective.size() != n) throw std::invalid_argument("objective length differs from vars");
  if (lp.bounds.size() != m) throw std::invalid_argument("one bound per row required");
  for (const auto& r : lp.rows)
    if (r.size() != n) throw std::invalid_argument("row length differs from vars");
  for (const auto& b : lp.bounds)
    if (b < 0) throw std::invalid_argument("bounds must be nonnegative");

  // condensed tableau over the nonbasic columns; column n holds the rhs
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = lp.rows[i][j];
    t[i][n] = lp.bounds[i];
  }
  std::vector<Rat> z = lp.objective;  // reduced costs of nonbasic columns
  Rat value = 0;
  std::vector<size_t> col_label(n), row_label(m);
  for (size_t j = 0; j < n; ++j) col_label[j] = j;
  for (size_t i = 0; i < m; ++i) row_label[i] = n + i;

  uint64_t pivots = 0;
  const uint64_t dantzig_limit = 4 * (m + n);  // then fall back to Bland
  while (true) {
    size_t enter = SIZE_MAX;
    if (pivots < dantzig_limit) {
      for (size_t j = 0; j < n; ++j)
        if (z[j] > 0 && (enter == SIZE_MAX || z[enter] < z[j] ||
                         (z[enter] == z[j] && col_label[j] < col_label[enter])))
          enter = j;
    } else {
      size_t best_label = SIZE_MAX;
      for (size_t j = 0; j < n; ++j)
        if (z[j] > 0 && col_label[j] < best_label) {
          best_label = col_label[j];
          enter = j;
        }
    }
    if (enter == SIZE_MAX) break;  // optimal

    size_t leave = SIZE_MAX;
    Rat best_ratio;
    for (size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > 0)) continue;
      Rat ratio = t[i][n] / t[i][enter];
      if (leave == SIZE_MAX || ratio < best_ratio ||
          (ratio == best_ratio && row_label[i] < row_label[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == SIZE_MAX) throw LpUnbounded("objective unbounded above");

    // pivot on (leave, enter)
    const Rat p = t[leave][enter];
    for (size_t k = 0; k <= n; ++k)
      if (k != enter && t[leave][k] != 0) t[leave][k] /= p;
    t[leave][enter] = Rat(1) / p;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Rat f = t[i][enter];
      if (f == 0) continue;
      for (size_t k = 0; k <= n; ++k)
        if (k != enter && t[leave][k] != 0) t[i][k] -= f * t[leave][k];
      t[i][enter] = -f * t[leave][enter];
    }
    {
      const Rat f = z[enter];
      if (f != 0) {
        value += f * t[leave][n];
        for (size_t k = 0; k < n; ++k)
          if (k != enter && t[leave][k] != 0) z[k] -= f * t[leave][k];
        z[enter] = -f * t[leave][enter];
      }
    }
    std::swap(row_label[leave], col_label[enter]);
    ++pivots;
  }

  LpSolution out;
  out.value = value;
  out.x.assign(n, Rat(0));
  for (size_t i = 0; i < m; ++i)
    if (row_label[i] < n) out.x[row_label[i]] = t[i][n];
  out.pivots = pivots;
  return out;
}

}  // namespace iw
