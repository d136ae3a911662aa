#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "docgrade/metrics.hpp"

namespace docgrade {
namespace {

using Word = uint64_t;
constexpr int kWordBits = 64;
constexpr Word kHighBit = Word{1} << (kWordBits - 1);

// Myers' bit-vector algorithm in Hyyro's blocked form for global distance.
// The pattern (shorter string) runs down the rows; each text symbol advances
// every block by one column, passing the horizontal delta at the block's
// bottom row to the next block as its carry-in.
class BitParallelLevenshtein {
 public:
  explicit BitParallelLevenshtein(std::u32string_view pattern)
      : length_(pattern.size()), blocks_((pattern.size() + kWordBits - 1) / kWordBits) {
    alphabet_.assign(pattern.begin(), pattern.end());
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    ascii_.fill(-1);
    for (size_t s = 0; s < alphabet_.size(); ++s) {
      if (alphabet_[s] < 128) ascii_[alphabet_[s]] = static_cast<int32_t>(s);
    }
    // one extra all-zero row for symbols outside the pattern
    peq_.assign((alphabet_.size() + 1) * blocks_, 0);
    for (size_t i = 0; i < pattern.size(); ++i) {
      const size_t s = symbol(pattern[i]);
      peq_[s * blocks_ + i / kWordBits] |= Word{1} << (i % kWordBits);
    }
  }

  size_t distance(std::u32string_view text) const {
    std::vector<Word> pv(blocks_, ~Word{0});
    std::vector<Word> mv(blocks_, 0);
    const Word last_mask = Word{1} << ((length_ - 1) % kWordBits);
    size_t score = length_;
    for (char32_t c : text) {
      const Word* eq_row = &peq_[symbol(c) * blocks_];
      int carry = 1;  // the top row grows by one per column
      for (size_t b = 0; b < blocks_; ++b) {
        const Word hin_neg = carry < 0 ? 1 : 0;
        const Word hin_pos = carry > 0 ? 1 : 0;
        Word eq = eq_row[b];
        const Word p = pv[b];
        const Word m = mv[b];
        const Word xv = eq | m;
        eq |= hin_neg;
        const Word xh = (((eq & p) + p) ^ p) | eq;
        Word ph = m | ~(xh | p);
        Word mh = p & xh;
        const Word probe = b + 1 == blocks_ ? last_mask : kHighBit;
        carry = (ph & probe) ? 1 : ((mh & probe) ? -1 : 0);
        ph = (ph << 1) | hin_pos;
        mh = (mh << 1) | hin_neg;
        pv[b] = mh | ~(xv | ph);
        mv[b] = ph & xv;
      }
      score = static_cast<size_t>(static_cast<int64_t>(score) + carry);
    }
    return score;
  }

 private:
  size_t symbol(char32_t c) const {
    if (c < 128) {
      const int32_t s = ascii_[c];
      return s < 0 ? alphabet_.size() : static_cast<size_t>(s);
    }
    const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
    return (it != alphabet_.end() && *it == c) ? static_cast<size_t>(it - alphabet_.begin()) : alphabet_.size();
  }

  size_t length_;
  size_t blocks_;
  std::vector<char32_t> alphabet_;
  std::array<int32_t, 128> ascii_{};
  std::vector<Word> peq_;
};

}  // namespace

size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  // shared prefix and suffix never contribute
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return b.size();
  return BitParallelLevenshtein(a).distance(b);
}

size_t edit_distance(const NormalizedText& a, const NormalizedText& b) {
  return edit_distance(to_code_points(a.str()), to_code_points(b.str()));
}

double eds(std::u32string_view a, std::u32string_view b) {
  const size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

double eds(const NormalizedText& a, const NormalizedText& b) {
  return eds(to_code_points(a.str()), to_code_points(b.str()));
}

}  // namespace docgrade
