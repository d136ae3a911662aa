#include "docgrade/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace docgrade {

namespace fs = std::filesystem;

void HarnessConfig::validate() const {
  if (workers == 0) throw HarnessError("workers must be positive", 1);
  try {
    scoring.validate();
  } catch (const std::invalid_argument& e) {
    throw HarnessError(e.what(), 1);
  }
  for (const fs::path& dir : {pred_dir, gt_dir}) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw HarnessError("not a directory: " + dir.string(), 1);
  }
}

namespace {

std::map<std::string, fs::path> list_by_stem(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw HarnessError("not a directory: " + dir.string(), 1);
  std::map<std::string, fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.empty() || name[0] == '.') continue;
    if (!entry.is_regular_file(ec)) continue;
    const std::string stem = entry.path().stem().string();
    const auto [it, inserted] = files.emplace(stem, entry.path());
    if (!inserted) {
      throw HarnessError("duplicate document stem '" + stem + "' in " + dir.string() + ": " +
                             it->second.filename().string() + ", " + name,
                         1);
    }
  }
  if (ec) throw HarnessError("cannot list " + dir.string() + ": " + ec.message(), 1);
  return files;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

struct Outcome {
  std::optional<DocumentScore> score;
  std::optional<SkipRecord> skip;
};

Outcome score_pair(const DocPair& pair, const ScoringConfig& config) {
  const auto gt = read_file(pair.gt);
  if (!gt) return {std::nullopt, SkipRecord{pair.doc_id, pair.gt.string(), "unreadable ground-truth file"}};
  RawMarkdown gt_raw{*gt, pair.gt.string()};
  if (!pair.pred) return {score_missing_prediction(gt_raw, config), std::nullopt};
  const auto pred = read_file(*pair.pred);
  if (!pred) return {std::nullopt, SkipRecord{pair.doc_id, pair.pred->string(), "unreadable prediction file"}};
  return {score_document(RawMarkdown{*pred, pair.pred->string()}, gt_raw, config), std::nullopt};
}

}  // namespace

Pairing pair_files(const fs::path& pred_dir, const fs::path& gt_dir) {
  const auto preds = list_by_stem(pred_dir);
  const auto gts = list_by_stem(gt_dir);
  Pairing pairing;
  for (const auto& [stem, gt] : gts) {
    const auto it = preds.find(stem);
    pairing.pairs.push_back({stem, it == preds.end() ? std::nullopt : std::optional<fs::path>(it->second), gt});
  }
  for (const auto& [stem, pred] : preds) {
    if (!gts.count(stem)) pairing.skipped.push_back({stem, pred.string(), "no ground truth"});
  }
  return pairing;
}

size_t default_workers() {
  const char* env = std::getenv(kWorkersEnv);
  if (!env) return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value <= 0) return 1;
  return static_cast<size_t>(value);
}

CorpusReport run(const HarnessConfig& cfg) {
  cfg.validate();
  const Pairing pairing = pair_files(cfg.pred_dir, cfg.gt_dir);
  const bool any_matched =
      std::any_of(pairing.pairs.begin(), pairing.pairs.end(), [](const DocPair& p) { return p.pred.has_value(); });
  if (!any_matched) {
    throw HarnessError("no prediction/ground-truth pair matched between " + cfg.pred_dir.string() + " and " +
                           cfg.gt_dir.string(),
                       2);
  }

  std::vector<Outcome> outcomes(pairing.pairs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < pairing.pairs.size(); i = next++) {
      try {
        outcomes[i] = score_pair(pairing.pairs[i], cfg.scoring);
      } catch (const std::exception& e) {
        outcomes[i].skip = SkipRecord{pairing.pairs[i].doc_id, pairing.pairs[i].gt.string(), e.what()};
      }
    }
  };
  const size_t threads = std::min(cfg.workers, std::max<size_t>(pairing.pairs.size(), 1));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  CorpusReport report;
  report.preset = cfg.preset;
  report.metrics = cfg.scoring.enabled_metrics();
  report.average_mode = cfg.average;
  report.skipped = pairing.skipped;
  for (size_t i = 0; i < pairing.pairs.size(); ++i) {
    const DocPair& pair = pairing.pairs[i];
    if (outcomes[i].skip) {
      report.skipped.push_back(*outcomes[i].skip);
      continue;
    }
    report.per_document.emplace(pair.doc_id, std::move(*outcomes[i].score));
    if (!pair.pred) report.missing_predictions.push_back(pair.doc_id);
  }
  std::sort(report.skipped.begin(), report.skipped.end(),
            [](const SkipRecord& a, const SkipRecord& b) { return std::tie(a.doc_id, a.path) < std::tie(b.doc_id, b.path); });
  aggregate(report);
  return report;
}

}  // namespace docgrade
