// Reference implementations used only by the tests. Each one is the textbook
// definition, written for clarity and small inputs, sharing no code with the
// library kernels it checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "docgrade/metrics.hpp"
#include "docgrade/structure.hpp"

namespace oracle {

/// Wagner-Fischer with the full (|a|+1) x (|b|+1) table.
inline size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline double eds(const std::u32string& a, const std::u32string& b) {
  const size_t m = std::max(a.size(), b.size());
  if (m == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

struct Tree {
  std::string label;
  std::vector<Tree> children;
};

inline Tree from_struct(const docgrade::StructTree& t, size_t id = docgrade::StructTree::kRoot) {
  Tree out{t.node(id).label, {}};
  for (size_t c : t.node(id).children) out.children.push_back(from_struct(t, c));
  return out;
}

inline size_t tree_size(const Tree& t) {
  size_t n = 1;
  for (const Tree& c : t.children) n += tree_size(c);
  return n;
}

/// Ordered forest edit distance by the defining recurrence on rightmost roots:
///   d(F, G) = min( d(F - v, G) + 1,
///                  d(F, G - w) + 1,
///                  d(F(v) - v, G(w) - w) + d(F - F(v), G - G(w)) + relabel(v, w) )
/// memoized on the serialized forests.
class ForestDistance {
 public:
  explicit ForestDistance(bool graded) : graded_(graded) {}

  double operator()(const std::vector<Tree>& f, const std::vector<Tree>& g) {
    const std::string key = serialize(f) + "|" + serialize(g);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    double result;
    if (f.empty() && g.empty()) {
      result = 0.0;
    } else if (g.empty()) {
      result = (*this)(remove_root(f), g) + 1.0;
    } else if (f.empty()) {
      result = (*this)(f, remove_root(g)) + 1.0;
    } else {
      const Tree& v = f.back();
      const Tree& w = g.back();
      std::vector<Tree> f_rest(f.begin(), f.end() - 1);
      std::vector<Tree> g_rest(g.begin(), g.end() - 1);
      result = std::min({(*this)(remove_root(f), g) + 1.0, (*this)(f, remove_root(g)) + 1.0,
                         (*this)(v.children, w.children) + (*this)(f_rest, g_rest) + relabel(v.label, w.label)});
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  static std::vector<Tree> remove_root(const std::vector<Tree>& f) {
    std::vector<Tree> out(f.begin(), f.end() - 1);
    out.insert(out.end(), f.back().children.begin(), f.back().children.end());
    return out;
  }

  static std::string serialize(const std::vector<Tree>& f) {
    std::string s = "[";
    for (const Tree& t : f) s += t.label + serialize(t.children) + ";";
    return s + "]";
  }

  double relabel(const std::string& a, const std::string& b) const {
    if (a == b) return 0.0;
    if (!graded_) return 1.0;
    return 1.0 - eds(docgrade::to_code_points(a), docgrade::to_code_points(b));
  }

  bool graded_;
  std::map<std::string, double> memo_;
};

inline double ted(const docgrade::StructTree& a, const docgrade::StructTree& b, bool graded) {
  ForestDistance d(graded);
  return d({from_struct(a)}, {from_struct(b)});
}

/// Discordant pairs by checking every pair.
inline uint64_t discordant(const std::vector<size_t>& predicted_in_reference_order) {
  uint64_t k = 0;
  const auto& p = predicted_in_reference_order;
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) ++k;
    }
  }
  return k;
}

struct BruteAssignment {
  double total = 0.0;
  std::vector<std::optional<size_t>> row_to_col;
};

/// Enumerates every permutation of the zero-padded square matrix. Among the
/// mappings within `tol` of the best total, keeps the lexicographically
/// smallest row -> col vector (unassigned sorts after every column).
inline BruteAssignment assignment(const docgrade::WeightMatrix& w, double tol = 1e-9) {
  BruteAssignment best;
  const size_t rows = w.size();
  const size_t cols = rows == 0 ? 0 : w[0].size();
  best.row_to_col.assign(rows, std::nullopt);
  if (rows == 0 || cols == 0) return best;
  const size_t n = std::max(rows, cols);
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<std::pair<double, std::vector<size_t>>> all;
  do {
    double total = 0.0;
    std::vector<size_t> key(rows);
    for (size_t r = 0; r < rows; ++r) {
      key[r] = std::min(perm[r], cols);  // padding columns collapse to "unassigned"
      if (perm[r] < cols) total += w[r][perm[r]];
    }
    all.emplace_back(total, key);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double top = -1.0;
  for (const auto& [t, k] : all) top = std::max(top, t);
  std::optional<std::vector<size_t>> chosen;
  for (const auto& [t, k] : all) {
    if (t >= top - tol && (!chosen || k < *chosen)) chosen = k;
  }
  best.total = top;
  for (size_t r = 0; r < rows; ++r) {
    if ((*chosen)[r] < cols) best.row_to_col[r] = (*chosen)[r];
  }
  return best;
}

}  // namespace oracle
