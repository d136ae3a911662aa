#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "docgrade/metrics.hpp"

namespace docgrade {
namespace {

constexpr double kTieTolerance = 1e-9;

// Hungarian algorithm (potentials form) maximizing total weight. Requires
// rows <= cols; every row gets a column. Returns row -> col.
std::vector<size_t> hungarian(const WeightMatrix& w) {
  const size_t n = w.size();
  const size_t m = n == 0 ? 0 : w[0].size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(m + 1, 0.0);
  std::vector<size_t> owner(m + 1, 0);  // owner[j]: row (1-based) holding column j
  std::vector<size_t> way(m + 1, 0);

  for (size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    size_t j0 = 0;
    std::vector<double> min_slack(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = owner[j0];
      double delta = inf;
      size_t j1 = 0;
      for (size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<size_t> row_to_col(n, 0);
  for (size_t j = 1; j <= m; ++j) {
    if (owner[j] != 0) row_to_col[owner[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Best total over the given rows and columns of `w`.
double best_total(const WeightMatrix& w, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  if (rows.empty() || cols.empty()) return 0.0;
  const bool transpose = rows.size() > cols.size();
  const auto& outer = transpose ? cols : rows;
  const auto& inner = transpose ? rows : cols;
  WeightMatrix sub(outer.size(), std::vector<double>(inner.size()));
  for (size_t a = 0; a < outer.size(); ++a) {
    for (size_t b = 0; b < inner.size(); ++b) {
      sub[a][b] = transpose ? w[inner[b]][outer[a]] : w[outer[a]][inner[b]];
    }
  }
  const std::vector<size_t> match = hungarian(sub);
  double total = 0.0;
  for (size_t a = 0; a < match.size(); ++a) total += sub[a][match[a]];
  return total;
}

// Sum of the `k` largest row maxima: an upper bound on any k-matching.
double upper_bound(const WeightMatrix& w, const std::vector<size_t>& rows, const std::vector<size_t>& cols, size_t k) {
  std::vector<double> maxima;
  maxima.reserve(rows.size());
  for (size_t r : rows) {
    double best = 0.0;
    for (size_t c : cols) best = std::max(best, w[r][c]);
    maxima.push_back(best);
  }
  k = std::min(k, maxima.size());
  std::partial_sort(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(k), maxima.end(),
                    std::greater<>());
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) total += maxima[i];
  return total;
}

void validate(const WeightMatrix& weights) {
  for (const auto& row : weights) {
    if (row.size() != weights[0].size()) throw std::invalid_argument("weight matrix is not rectangular");
  }
}

}  // namespace

double max_assignment_total(const WeightMatrix& weights) {
  if (weights.empty() || weights[0].empty()) return 0.0;
  validate(weights);
  std::vector<size_t> rows(weights.size());
  std::vector<size_t> cols(weights[0].size());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return best_total(weights, rows, cols);
}

Assignment max_weight_assignment(const WeightMatrix& weights) {
  Assignment result;
  result.row_to_col.assign(weights.size(), std::nullopt);
  if (weights.empty() || weights[0].empty()) return result;
  validate(weights);

  const size_t n_rows = weights.size();
  const size_t n_cols = weights[0].size();
  const double optimum = max_assignment_total(weights);
  const size_t target = std::min(n_rows, n_cols);

  // Fix rows in order, taking the smallest column (or "unassigned" last) that
  // still admits an optimal completion.
  std::vector<bool> col_used(n_cols, false);
  double fixed = 0.0;
  size_t assigned = 0;
  for (size_t r = 0; r < n_rows; ++r) {
    std::vector<size_t> rest_rows;
    for (size_t rr = r + 1; rr < n_rows; ++rr) rest_rows.push_back(rr);

    for (size_t c = 0; c < n_cols && assigned < target; ++c) {
      if (col_used[c]) continue;
      std::vector<size_t> rest_cols;
      for (size_t cc = 0; cc < n_cols; ++cc) {
        if (!col_used[cc] && cc != c) rest_cols.push_back(cc);
      }
      const size_t remaining = target - assigned - 1;
      if (std::min(rest_rows.size(), rest_cols.size()) < remaining) continue;
      const double head = fixed + weights[r][c];
      if (head + upper_bound(weights, rest_rows, rest_cols, remaining) < optimum - kTieTolerance) continue;
      if (head + best_total(weights, rest_rows, rest_cols) >= optimum - kTieTolerance) {
        result.row_to_col[r] = c;
        col_used[c] = true;
        fixed = head;
        ++assigned;
        break;
      }
    }
  }

  for (size_t r = 0; r < n_rows; ++r) {
    if (result.row_to_col[r]) result.total += weights[r][*result.row_to_col[r]];
  }
  return result;
}

}  // namespace docgrade
