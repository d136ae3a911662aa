#include <algorithm>
#include <stdexcept>

#include "docgrade/metrics.hpp"

namespace docgrade {

AlignedRanking AlignedRanking::from_pairs(std::vector<std::pair<size_t, size_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  for (size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw std::invalid_argument("aligned ranking repeats reference position " + std::to_string(pairs[i].first));
    }
  }
  std::vector<size_t> predicted;
  predicted.reserve(pairs.size());
  for (const auto& p : pairs) predicted.push_back(p.second);
  std::sort(predicted.begin(), predicted.end());
  if (std::adjacent_find(predicted.begin(), predicted.end()) != predicted.end()) {
    throw std::invalid_argument("aligned ranking repeats a predicted position");
  }
  AlignedRanking ranking;
  ranking.pairs_ = std::move(pairs);
  return ranking;
}

AlignedRanking AlignedRanking::from_predicted_order(const std::vector<size_t>& order) {
  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(order.size());
  for (size_t i = 0; i < order.size(); ++i) pairs.emplace_back(i, order[i]);
  return from_pairs(std::move(pairs));
}

namespace {

uint64_t count_inversions(std::vector<size_t>& values, std::vector<size_t>& scratch, size_t lo, size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  uint64_t inversions = count_inversions(values, scratch, lo, mid) + count_inversions(values, scratch, mid, hi);
  size_t i = lo;
  size_t j = mid;
  size_t k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      inversions += mid - i;
      scratch[k++] = values[j++];
    } else {
      scratch[k++] = values[i++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return inversions;
}

}  // namespace

uint64_t kendall_discordant(const AlignedRanking& ranking) {
  std::vector<size_t> predicted;
  predicted.reserve(ranking.size());
  for (const auto& p : ranking.pairs()) predicted.push_back(p.second);
  std::vector<size_t> scratch(predicted.size());
  return count_inversions(predicted, scratch, 0, predicted.size());
}

double ktds(const AlignedRanking& ranking) {
  const size_t n = ranking.size();
  if (n <= 1) return 1.0;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return 1.0 - 2.0 * static_cast<double>(kendall_discordant(ranking)) / pairs;
}

TokenBag::TokenBag(const std::vector<std::string>& tokens) {
  for (const std::string& t : tokens) add(t);
}

void TokenBag::add(const std::string& token, size_t count) {
  if (count == 0) return;
  counts_[token] += count;
  total_ += count;
}

size_t TokenBag::count(const std::string& token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

double vocab_f1(const TokenBag& pred, const TokenBag& gt) {
  if (pred.empty() && gt.empty()) return 1.0;
  if (pred.empty() || gt.empty()) return 0.0;
  const TokenBag& small = pred.counts().size() <= gt.counts().size() ? pred : gt;
  const TokenBag& large = &small == &pred ? gt : pred;
  size_t overlap = 0;
  for (const auto& [token, n] : small.counts()) overlap += std::min(n, large.count(token));
  // 2PR / (P + R) with P = o/|pred|, R = o/|gt| simplifies to 2o / (|pred| + |gt|)
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(pred.total() + gt.total());
}

}  // namespace docgrade
