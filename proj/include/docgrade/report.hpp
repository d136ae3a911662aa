#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "docgrade/scorer.hpp"
#include "docgrade/segmenter.hpp"

namespace docgrade {

/// How the "average" column is formed.
enum class AverageMode {
  Columns,      // mean of the enabled column means (default)
  PerDocument,  // mean over documents of each document's own mean
};

std::string_view average_mode_name(AverageMode mode);
std::optional<AverageMode> parse_average_mode(std::string_view name);

enum class ReportFormat { Json, Csv, MdTable };

std::optional<ReportFormat> parse_report_format(std::string_view name);

struct SkipRecord {
  std::string doc_id;
  std::string path;
  std::string reason;

  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

struct CorpusCounts {
  size_t scored = 0;               // documents in per_document, missing predictions included
  size_t skipped = 0;              // entries of CorpusReport::skipped
  size_t missing_predictions = 0;  // gt files without a prediction
  std::array<size_t, kMetricCount> applicable{};

  friend bool operator==(const CorpusCounts&, const CorpusCounts&) = default;
};

struct CorpusReport {
  Preset preset = Preset::Arxiv;
  std::vector<Metric> metrics;  // enabled columns, report order
  AverageMode average_mode = AverageMode::Columns;
  std::map<std::string, DocumentScore> per_document;
  std::vector<std::string> missing_predictions;
  std::array<std::optional<double>, kMetricCount> columns;
  std::optional<double> average;
  CorpusCounts counts;
  std::vector<SkipRecord> skipped;

  friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};

/// Mean of the enabled metrics present in one document; empty if none is.
std::optional<double> document_average(const DocumentScore& score, const std::vector<Metric>& metrics);

/// Fills columns, average and counts from per_document / skipped.
void aggregate(CorpusReport& report);

nlohmann::json to_json(const DocumentScore& score);
DocumentScore document_score_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SegmentedDoc& doc);

nlohmann::json to_json(const CorpusReport& report);
/// Inverse of to_json; throws nlohmann::json::exception or std::invalid_argument.
CorpusReport corpus_report_from_json(const nlohmann::json& j);

/// JSON keeps 0..1 floats; CSV and md-table show percentages with two decimals,
/// one row per document and a final "overall" row. Absent scores are empty.
std::string emit_report(const CorpusReport& report, ReportFormat format);

}  // namespace docgrade
