#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "docgrade/metrics.hpp"
#include "support/oracles.hpp"

using namespace docgrade;

namespace {

std::u32string random_string(std::mt19937_64& rng, size_t max_len, size_t alphabet) {
  static const std::u32string kSymbols = U"abcdeé東́ xyz0123";
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<size_t> sym(0, std::min(alphabet, kSymbols.size()) - 1);
  std::u32string s(len(rng), U'a');
  for (char32_t& c : s) c = kSymbols[sym(rng)];
  return s;
}

StructTree random_tree(std::mt19937_64& rng, size_t max_nodes) {
  static const std::vector<std::string> kLabels = {"a", "b", "ab", "abc", "Intro", "Intra", "⟨row⟩", "x(y)"};
  StructTree t;
  const size_t n = std::uniform_int_distribution<size_t>(1, max_nodes)(rng);
  for (size_t i = 1; i < n; ++i) {
    const size_t parent = std::uniform_int_distribution<size_t>(0, t.size() - 1)(rng);
    t.add_child(parent, kLabels[std::uniform_int_distribution<size_t>(0, kLabels.size() - 1)(rng)]);
  }
  return t;
}

}  // namespace

TEST_CASE("edit distance matches the full DP table on short strings") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_string(rng, 12, 4 + i % 10);
    const auto b = random_string(rng, 12, 4 + i % 10);
    REQUIRE(edit_distance(a, b) == oracle::levenshtein(a, b));
  }
}

TEST_CASE("edit distance matches the full DP table across word boundaries") {
  std::mt19937_64 rng(12);
  for (size_t len : {63u, 64u, 65u, 127u, 128u, 129u, 200u, 300u}) {
    for (int i = 0; i < 25; ++i) {
      auto a = random_string(rng, len, 3 + i % 8);
      auto b = random_string(rng, len, 3 + i % 8);
      if (i % 3 == 0) {  // near-identical pairs exercise the prefix/suffix trimming
        b = a;
        if (!b.empty()) b[b.size() / 2] = U'q';
      }
      REQUIRE(edit_distance(a, b) == oracle::levenshtein(a, b));
    }
  }
}

TEST_CASE("eds examples") {
  CHECK(eds(U"", U"") == 1.0);
  CHECK(eds(U"abc", U"") == 0.0);
  CHECK(eds(U"kitten", U"sitting") == doctest::Approx(1.0 - 3.0 / 7.0));
  // \frac{a}{b} vs a/b: '/' never occurs on the left, so at best 'a' and 'b'
  // survive: 9 edits over 11 code points
  CHECK(oracle::levenshtein(U"\\frac{a}{b}", U"a/b") == 9);
  CHECK(eds(U"\\frac{a}{b}", U"a/b") == oracle::eds(U"\\frac{a}{b}", U"a/b"));
  CHECK(eds(U"\\frac{a}{b}", U"a/b") == doctest::Approx(2.0 / 11.0));
  // combining sequences are compared after NFC
  CHECK(eds(NormalizedText::from("e\xCC\x81"), NormalizedText::from("\xC3\xA9")) == 1.0);
}

TEST_CASE("tree edit distance matches the forest recurrence") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const StructTree a = random_tree(rng, 6);
    const StructTree b = random_tree(rng, 6);
    for (const bool graded : {true, false}) {
      const RelabelCost cost = graded ? RelabelCost::Graded : RelabelCost::Exact;
      REQUIRE(tree_edit_distance(a, b, cost) == doctest::Approx(oracle::ted(a, b, graded)).epsilon(1e-12));
      REQUIRE(std::abs(tree_edit_distance(a, b, cost) - oracle::ted(a, b, graded)) <= 1e-9);
    }
  }
}

TEST_CASE("teds examples") {
  StructTree a;
  StructTree b;
  CHECK(teds(a, b) == 1.0);
  a.add_child(0, "Intro");
  CHECK(teds(a, b) == doctest::Approx(0.5));
  b.add_child(0, "Intro");
  CHECK(teds(a, b) == 1.0);
  b.add_child(0, "Method");
  CHECK(teds(a, b) == doctest::Approx(1.0 - 1.0 / 3.0));
}

TEST_CASE("kendall discordant pairs match pairwise counting") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const size_t n = std::uniform_int_distribution<size_t>(0, 200)(rng);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    // predicted positions need not be contiguous
    for (size_t& p : order) p = p * 3 + 7;
    REQUIRE(kendall_discordant(AlignedRanking::from_predicted_order(order)) == oracle::discordant(order));
  }
}

TEST_CASE("aligned ranking validation") {
  CHECK_THROWS_AS(AlignedRanking::from_pairs({{0, 1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(AlignedRanking::from_pairs({{0, 1}, {1, 1}}), std::invalid_argument);
  const auto r = AlignedRanking::from_pairs({{2, 0}, {0, 2}, {1, 1}});
  CHECK(r.pairs().front() == std::pair<size_t, size_t>{0, 2});
  CHECK(ktds(r) == 0.0);
}

TEST_CASE("ktds laws") {
  CHECK(ktds(AlignedRanking{}) == 1.0);
  CHECK(ktds(AlignedRanking::from_predicted_order({5})) == 1.0);
  for (size_t n = 2; n < 300; ++n) {
    std::vector<size_t> reversed(n);
    for (size_t i = 0; i < n; ++i) reversed[i] = n - 1 - i;
    REQUIRE(ktds(AlignedRanking::from_predicted_order(reversed)) == 0.0);
  }
  // gt (A,B,C) vs pred (C,B,A)
  CHECK(kendall_discordant(AlignedRanking::from_predicted_order({2, 1, 0})) == 3);
}

TEST_CASE("max weight assignment matches permutation enumeration") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::uniform_int_distribution<size_t> dim(1, 6);
  for (int i = 0; i < 500; ++i) {
    WeightMatrix w(dim(rng), std::vector<double>(dim(rng)));
    for (auto& row : w) {
      for (double& x : row) x = weight(rng);
    }
    const Assignment got = max_weight_assignment(w);
    const auto want = oracle::assignment(w);
    REQUIRE(std::abs(got.total - want.total) <= 1e-9);
    REQUIRE(std::abs(max_assignment_total(w) - want.total) <= 1e-9);
    // a valid matching of size min(rows, cols)
    std::vector<bool> used(w[0].size(), false);
    size_t assigned = 0;
    for (const auto& c : got.row_to_col) {
      if (!c) continue;
      REQUIRE_FALSE(used[*c]);
      used[*c] = true;
      ++assigned;
    }
    REQUIRE(assigned == std::min(w.size(), w[0].size()));
  }
}

TEST_CASE("assignment ties resolve to the lexicographically smallest mapping") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> weight(0, 2);
  std::uniform_int_distribution<size_t> dim(1, 5);
  for (int i = 0; i < 300; ++i) {
    WeightMatrix w(dim(rng), std::vector<double>(dim(rng)));
    for (auto& row : w) {
      for (double& x : row) x = weight(rng) / 2.0;
    }
    REQUIRE(max_weight_assignment(w).row_to_col == oracle::assignment(w).row_to_col);
  }
  const Assignment flat = max_weight_assignment({{1, 1}, {1, 1}});
  CHECK(flat.row_to_col == std::vector<std::optional<size_t>>{0, 1});
  const Assignment tall = max_weight_assignment({{0.5}, {0.9}, {0.1}});
  CHECK(tall.row_to_col == std::vector<std::optional<size_t>>{std::nullopt, 0, std::nullopt});
  CHECK(max_weight_assignment({}).row_to_col.empty());
  CHECK_THROWS_AS(max_weight_assignment({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("vocab f1") {
  CHECK(vocab_f1(TokenBag{}, TokenBag{}) == 1.0);
  CHECK(vocab_f1(TokenBag({"a"}), TokenBag{}) == 0.0);
  CHECK(vocab_f1(TokenBag({"a", "b", "b"}), TokenBag({"b", "a", "b"})) == 1.0);
  // overlap {a, b} = 2; 2*2 / (3 + 2)
  CHECK(vocab_f1(TokenBag({"a", "b", "c"}), TokenBag({"a", "b"})) == doctest::Approx(0.8));
  CHECK(vocab_f1(TokenBag({"a", "a", "a"}), TokenBag({"a"})) == doctest::Approx(0.5));
}

TEST_CASE("metric scores stay in [0, 1] and eds / teds are exactly symmetric") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_string(rng, 40, 16);
    const auto b = random_string(rng, 40, 16);
    const double s = eds(a, b);
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 1.0);
    REQUIRE(s == eds(b, a));
  }
  for (int i = 0; i < 10000; ++i) {
    const StructTree a = random_tree(rng, 12);
    const StructTree b = random_tree(rng, 12);
    const double s = teds(a, b);
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 1.0);
    REQUIRE(s == teds(b, a));
  }
  for (int i = 0; i < 10000; ++i) {
    std::vector<size_t> order(std::uniform_int_distribution<size_t>(0, 30)(rng));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const double s = ktds(AlignedRanking::from_predicted_order(order));
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 1.0);
  }
}
