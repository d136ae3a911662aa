#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "docgrade/report.hpp"
#include "docgrade/scorer.hpp"

namespace docgrade {

/// Environment variable consulted when no worker count is given.
inline constexpr const char* kWorkersEnv = "DOCGRADE_WORKERS";

/// Fatal harness error carrying the CLI exit code (1 config, 2 nothing to score).
class HarnessError : public std::runtime_error {
 public:
  HarnessError(const std::string& what, int exit_code) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

struct HarnessConfig {
  std::filesystem::path pred_dir;
  std::filesystem::path gt_dir;
  Preset preset = Preset::Arxiv;
  ScoringConfig scoring = ScoringConfig::for_preset(Preset::Arxiv);
  size_t workers = 1;
  AverageMode average = AverageMode::Columns;
  std::optional<std::filesystem::path> output;
  ReportFormat format = ReportFormat::Json;

  /// Throws HarnessError(exit 1) on an unusable configuration.
  void validate() const;
};

struct DocPair {
  std::string doc_id;
  std::optional<std::filesystem::path> pred;  // empty: prediction missing
  std::filesystem::path gt;
};

struct Pairing {
  std::vector<DocPair> pairs;        // sorted by doc_id
  std::vector<SkipRecord> skipped;   // predictions without ground truth
};

/// Matches non-hidden regular files by stem. Duplicate stems within a
/// directory or a missing directory raise HarnessError(exit 1).
Pairing pair_files(const std::filesystem::path& pred_dir, const std::filesystem::path& gt_dir);

/// Worker count from $DOCGRADE_WORKERS, or 1 when unset or invalid.
size_t default_workers();

/// Scores every pair on `cfg.workers` threads; the reduce runs in doc_id order,
/// so the report does not depend on the worker count. Throws HarnessError(exit
/// 2) when no pair has both a prediction and a ground truth.
CorpusReport run(const HarnessConfig& cfg);

}  // namespace docgrade
