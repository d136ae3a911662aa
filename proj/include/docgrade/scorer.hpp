#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "docgrade/metrics.hpp"
#include "docgrade/segmenter.hpp"
#include "docgrade/standardizer.hpp"

namespace docgrade {

/// The ten report columns, in report order.
enum class Metric {
  TextConcat,
  TextVocab,
  HeadingConcat,
  HeadingTree,
  FormulaEmbed,
  FormulaIsolate,
  TableConcat,
  TableTree,
  OrderBlock,
  OrderToken,
};

inline constexpr size_t kMetricCount = 10;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics{
    Metric::TextConcat,   Metric::TextVocab,      Metric::HeadingConcat, Metric::HeadingTree, Metric::FormulaEmbed,
    Metric::FormulaIsolate, Metric::TableConcat, Metric::TableTree,     Metric::OrderBlock,  Metric::OrderToken};

std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

/// Column sets of the three corpus subsets; Custom takes an explicit list.
enum class Preset { Arxiv, Github, Zenodo, Custom };

std::string_view preset_name(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);
/// Throws std::invalid_argument for Preset::Custom.
std::vector<Metric> preset_metrics(Preset preset);

enum class Tokenizer { UnicodeWord };
enum class BlockMatch { ExactNormalized };

struct ScoringConfig {
  std::array<bool, kMetricCount> enabled{};
  Tokenizer tokenizer = Tokenizer::UnicodeWord;
  RelabelCost relabel = RelabelCost::Graded;
  BlockMatch block_match = BlockMatch::ExactNormalized;

  static ScoringConfig for_preset(Preset preset);
  static ScoringConfig for_metrics(const std::vector<Metric>& metrics);

  bool is_enabled(Metric m) const { return enabled[static_cast<size_t>(m)]; }
  std::vector<Metric> enabled_metrics() const;
  /// Throws std::invalid_argument when no metric is enabled.
  void validate() const;
};

/// Scores in [0, 1]; an empty optional means the metric does not apply.
struct DocumentScore {
  std::array<std::optional<double>, kMetricCount> values;
  Warnings warnings;

  std::optional<double>& operator[](Metric m) { return values[static_cast<size_t>(m)]; }
  const std::optional<double>& operator[](Metric m) const { return values[static_cast<size_t>(m)]; }

  friend bool operator==(const DocumentScore&, const DocumentScore&) = default;
};

struct ScorePair {
  double concat = 0.0;
  double second = 0.0;  // vocab, tree or isolate depending on the category
};

ScorePair score_text(const SegmentedDoc& pred, const SegmentedDoc& gt);
ScorePair score_headings(const SegmentedDoc& pred, const SegmentedDoc& gt,
                         RelabelCost relabel = RelabelCost::Graded);
/// {embedded, isolated}.
ScorePair score_formulas(const SegmentedDoc& pred, const SegmentedDoc& gt);
/// {concat, tree}. Tree: tables matched by maximum total TEDS, summed TEDS of
/// matched pairs divided by max(#pred, #gt).
ScorePair score_tables(const SegmentedDoc& pred, const SegmentedDoc& gt, RelabelCost relabel = RelabelCost::Graded,
                       Warnings* warnings = nullptr);

/// Reading-order granules: headings, tables and isolated formulas are one
/// block each; runs of plain text and inline formulas split on blank lines.
std::vector<NormalizedText> build_blocks(const SegmentedDoc& doc);

struct ReadingOrderScore {
  std::optional<double> block;  // absent when no block matched
  std::optional<double> token;  // absent when no token is shared
  size_t matched_blocks = 0;
  size_t gt_blocks = 0;
  size_t shared_tokens = 0;
};

ReadingOrderScore score_reading_order(const SegmentedDoc& pred, const SegmentedDoc& gt);

/// Standardize, segment and score both sides. Never throws on malformed input.
DocumentScore score_document(const RawMarkdown& pred, const RawMarkdown& gt, const ScoringConfig& config);

/// Same pipeline on already segmented documents.
DocumentScore score_segmented(const SegmentedDoc& pred, const SegmentedDoc& gt, const ScoringConfig& config);

/// Score of a document whose prediction is missing: 0 for every enabled metric
/// that applies to the ground truth.
DocumentScore score_missing_prediction(const RawMarkdown& gt, const ScoringConfig& config);

}  // namespace docgrade
