// docgrade: standardize, segment and score Markdown extracted from documents.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "docgrade/harness.hpp"
#include "docgrade/report.hpp"
#include "docgrade/scorer.hpp"
#include "docgrade/segmenter.hpp"
#include "docgrade/standardizer.hpp"

namespace {

using namespace docgrade;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RawMarkdown read_markdown(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {buf.str(), path};
}

void print_warnings(const Warnings& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

ScoringConfig scoring_config(const std::string& preset_text, const std::vector<std::string>& metric_names,
                             Preset* preset_out) {
  const auto preset = parse_preset(preset_text);
  if (!preset) throw ConfigError("unknown preset '" + preset_text + "' (arxiv, github, zenodo, custom)");
  *preset_out = *preset;
  if (*preset != Preset::Custom) {
    if (!metric_names.empty()) throw ConfigError("--metrics is only valid with --preset custom");
    return ScoringConfig::for_preset(*preset);
  }
  std::vector<Metric> metrics;
  for (const std::string& name : metric_names) {
    const auto m = parse_metric(name);
    if (!m) throw ConfigError("unknown metric '" + name + "'");
    metrics.push_back(*m);
  }
  if (metrics.empty()) throw ConfigError("--preset custom needs --metrics");
  return ScoringConfig::for_metrics(metrics);
}

void print_score_table(const DocumentScore& score, const ScoringConfig& config) {
  for (Metric m : config.enabled_metrics()) {
    char value[32] = "-";
    if (score[m]) std::snprintf(value, sizeof value, "%.2f", *score[m] * 100.0);
    std::printf("%-16s %8s\n", std::string(metric_name(m)).c_str(), value);
  }
  const auto avg = document_average(score, config.enabled_metrics());
  char value[32] = "-";
  if (avg) std::snprintf(value, sizeof value, "%.2f", *avg * 100.0);
  std::printf("%-16s %8s\n", "average", value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Standardize, segment and score extracted Markdown against ground truth"};
  app.set_version_flag("--version", DOCGRADE_VERSION);
  app.require_subcommand(1);

  std::string std_file;
  auto* std_cmd = app.add_subcommand("standardize", "Rewrite a Markdown file into the canonical dialect");
  std_cmd->add_option("file", std_file)->required();

  std::string seg_file;
  std::string seg_format = "json";
  auto* seg_cmd = app.add_subcommand("segment", "List the semantic units of a Markdown file");
  seg_cmd->add_option("file", seg_file)->required();
  seg_cmd->add_option("--format", seg_format)->check(CLI::IsMember({"json"}));

  std::string pred_file, gt_file, file_preset = "arxiv";
  std::vector<std::string> file_metrics;
  bool file_json = false;
  auto* file_cmd = app.add_subcommand("score-file", "Score one prediction against one ground truth");
  file_cmd->add_option("pred", pred_file)->required();
  file_cmd->add_option("gt", gt_file)->required();
  file_cmd->add_option("--preset", file_preset);
  file_cmd->add_option("--metrics", file_metrics)->delimiter(',');
  file_cmd->add_flag("--json", file_json);

  HarnessConfig hcfg;
  std::string pred_dir, gt_dir, corpus_preset = "arxiv", format = "json", average = "columns", out;
  std::vector<std::string> corpus_metrics;
  std::optional<size_t> workers;
  auto* corpus_cmd = app.add_subcommand("score", "Score a directory of predictions against ground truth");
  corpus_cmd->add_option("--pred", pred_dir)->required();
  corpus_cmd->add_option("--gt", gt_dir)->required();
  corpus_cmd->add_option("--preset", corpus_preset);
  corpus_cmd->add_option("--metrics", corpus_metrics)->delimiter(',');
  corpus_cmd->add_option("--workers", workers, std::string("Worker threads (default $") + kWorkersEnv + " or 1)");
  corpus_cmd->add_option("--out", out);
  corpus_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "md-table"}));
  corpus_cmd->add_option("--average", average)->check(CLI::IsMember({"columns", "per-document"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*std_cmd) {
      const Standardized result = standardize(read_markdown(std_file));
      print_warnings(result.warnings);
      std::cout << result.text.str();
      return 0;
    }
    if (*seg_cmd) {
      const Standardized result = standardize(read_markdown(seg_file));
      const SegmentedDoc doc = segment(result.text);
      print_warnings(result.warnings);
      print_warnings(doc.warnings);
      std::cout << to_json(doc).dump(2) << "\n";
      return 0;
    }
    if (*file_cmd) {
      Preset preset;
      const ScoringConfig config = scoring_config(file_preset, file_metrics, &preset);
      const DocumentScore score = score_document(read_markdown(pred_file), read_markdown(gt_file), config);
      if (file_json) {
        std::cout << to_json(score).dump(2) << "\n";
      } else {
        print_warnings(score.warnings);
        print_score_table(score, config);
      }
      return 0;
    }

    hcfg.pred_dir = pred_dir;
    hcfg.gt_dir = gt_dir;
    hcfg.scoring = scoring_config(corpus_preset, corpus_metrics, &hcfg.preset);
    hcfg.workers = workers ? *workers : default_workers();
    hcfg.average = *parse_average_mode(average);
    hcfg.format = *parse_report_format(format);
    if (!out.empty()) hcfg.output = out;

    const CorpusReport report = run(hcfg);
    const std::string bytes = emit_report(report, hcfg.format);
    if (hcfg.output) {
      std::ofstream file(*hcfg.output, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + hcfg.output->string());
      file << bytes;
    } else {
      std::cout << bytes;
    }
    for (const SkipRecord& s : report.skipped) std::cerr << "skipped " << s.doc_id << ": " << s.reason << "\n";
    return 0;
  } catch (const HarnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
