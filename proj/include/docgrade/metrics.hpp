#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "docgrade/structure.hpp"
#include "docgrade/unicode.hpp"

namespace docgrade {

// ---------------------------------------------------------------------------
// Edit distance

/// Levenshtein distance over Unicode scalar values (bit-parallel, exact).
size_t edit_distance(std::u32string_view a, std::u32string_view b);
size_t edit_distance(const NormalizedText& a, const NormalizedText& b);

/// 1 - ED / max(|a|, |b|); 1.0 when both are empty.
double eds(std::u32string_view a, std::u32string_view b);
double eds(const NormalizedText& a, const NormalizedText& b);

// ---------------------------------------------------------------------------
// Tree edit distance

enum class RelabelCost {
  Graded,  // 1 - eds(label_a, label_b)
  Exact,   // 0 if labels are equal, 1 otherwise
};

/// Ordered tree edit distance (Zhang-Shasha) with unit insert/delete cost.
double tree_edit_distance(const StructTree& a, const StructTree& b, RelabelCost relabel = RelabelCost::Graded);

/// 1 - TED / max(|a|, |b|).
double teds(const StructTree& a, const StructTree& b, RelabelCost relabel = RelabelCost::Graded);

// ---------------------------------------------------------------------------
// Rankings

/// Matched items as (reference position, predicted position) pairs, ordered by
/// reference position. Predicted positions are pairwise distinct.
class AlignedRanking {
 public:
  AlignedRanking() = default;

  /// Sorts by reference position. Throws std::invalid_argument if either
  /// side repeats a position.
  static AlignedRanking from_pairs(std::vector<std::pair<size_t, size_t>> pairs);

  /// Ranking whose i-th reference item sits at predicted position order[i].
  static AlignedRanking from_predicted_order(const std::vector<size_t>& order);

  const std::vector<std::pair<size_t, size_t>>& pairs() const { return pairs_; }
  size_t size() const { return pairs_.size(); }

 private:
  std::vector<std::pair<size_t, size_t>> pairs_;
};

/// Number of discordant pairs, by merge-sort inversion counting.
uint64_t kendall_discordant(const AlignedRanking& ranking);

/// 1 - 2 K_d / (n (n - 1)); 1.0 for n <= 1.
double ktds(const AlignedRanking& ranking);

// ---------------------------------------------------------------------------
// Vocabulary

class TokenBag {
 public:
  TokenBag() = default;
  explicit TokenBag(const std::vector<std::string>& tokens);

  void add(const std::string& token, size_t count = 1);

  size_t count(const std::string& token) const;
  size_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::unordered_map<std::string, size_t>& counts() const { return counts_; }

 private:
  std::unordered_map<std::string, size_t> counts_;
  size_t total_ = 0;
};

/// F1 of multiset overlap; 1.0 if both bags are empty, 0.0 if exactly one is.
double vocab_f1(const TokenBag& pred, const TokenBag& gt);

// ---------------------------------------------------------------------------
// Assignment

using WeightMatrix = std::vector<std::vector<double>>;

struct Assignment {
  std::vector<std::optional<size_t>> row_to_col;  // one entry per row
  double total = 0.0;
};

/// Maximum-weight matching of size min(rows, cols). Among optimal mappings
/// (within 1e-9 of the best total) returns the lexicographically smallest
/// row -> col vector, with an unassigned row ordered after every column.
Assignment max_weight_assignment(const WeightMatrix& weights);

/// Optimal total weight only (Hungarian algorithm, no tie-breaking).
double max_assignment_total(const WeightMatrix& weights);

}  // namespace docgrade
