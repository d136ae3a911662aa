#include "docgrade/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace docgrade {

using nlohmann::json;

std::string_view average_mode_name(AverageMode mode) {
  return mode == AverageMode::Columns ? "columns" : "per-document";
}

std::optional<AverageMode> parse_average_mode(std::string_view name) {
  if (name == "columns") return AverageMode::Columns;
  if (name == "per-document") return AverageMode::PerDocument;
  return std::nullopt;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md-table") return ReportFormat::MdTable;
  return std::nullopt;
}

std::optional<double> document_average(const DocumentScore& score, const std::vector<Metric>& metrics) {
  double sum = 0.0;
  size_t n = 0;
  for (Metric m : metrics) {
    if (!score[m]) continue;
    sum += *score[m];
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

void aggregate(CorpusReport& report) {
  report.columns.fill(std::nullopt);
  report.counts = {};
  report.counts.scored = report.per_document.size();
  report.counts.skipped = report.skipped.size();
  report.counts.missing_predictions = report.missing_predictions.size();

  std::array<double, kMetricCount> sums{};
  for (const auto& [id, score] : report.per_document) {
    for (Metric m : report.metrics) {
      if (!score[m]) continue;
      sums[static_cast<size_t>(m)] += *score[m];
      ++report.counts.applicable[static_cast<size_t>(m)];
    }
  }
  for (Metric m : report.metrics) {
    const size_t i = static_cast<size_t>(m);
    if (report.counts.applicable[i] > 0) report.columns[i] = sums[i] / static_cast<double>(report.counts.applicable[i]);
  }

  double sum = 0.0;
  size_t n = 0;
  if (report.average_mode == AverageMode::Columns) {
    for (Metric m : report.metrics) {
      if (!report.columns[static_cast<size_t>(m)]) continue;
      sum += *report.columns[static_cast<size_t>(m)];
      ++n;
    }
  } else {
    for (const auto& [id, score] : report.per_document) {
      if (const auto avg = document_average(score, report.metrics)) {
        sum += *avg;
        ++n;
      }
    }
  }
  report.average = n == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json optional_number(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Metric metric_or_throw(const std::string& name) {
  const auto m = parse_metric(name);
  if (!m) throw std::invalid_argument("unknown metric '" + name + "'");
  return *m;
}

}  // namespace

json to_json(const DocumentScore& score) {
  json j = json::object();
  for (Metric m : kAllMetrics) j[std::string(metric_name(m))] = optional_number(score[m]);
  j["warnings"] = score.warnings;
  return j;
}

DocumentScore document_score_from_json(const json& j) {
  DocumentScore score;
  for (Metric m : kAllMetrics) {
    const auto it = j.find(std::string(metric_name(m)));
    if (it != j.end()) score[m] = number_or_null(*it);
  }
  if (j.contains("warnings")) score.warnings = j.at("warnings").get<Warnings>();
  return score;
}

json to_json(const SegmentedDoc& doc) {
  json units = json::array();
  for (const SemanticUnit& unit : doc.units) {
    json u = {{"kind", to_string(unit.kind)},
              {"text", unit.text},
              {"start", unit.span.begin},
              {"end", unit.span.end},
              {"index", unit.index}};
    if (unit.kind == UnitKind::Heading) u["level"] = unit.level;
    units.push_back(std::move(u));
  }
  return units;
}

json to_json(const CorpusReport& report) {
  json metrics = json::array();
  json columns = json::object();
  json applicable = json::object();
  for (Metric m : report.metrics) {
    const std::string name(metric_name(m));
    metrics.push_back(name);
    columns[name] = optional_number(report.columns[static_cast<size_t>(m)]);
    applicable[name] = report.counts.applicable[static_cast<size_t>(m)];
  }
  json documents = json::object();
  for (const auto& [id, score] : report.per_document) documents[id] = to_json(score);
  json skipped = json::array();
  for (const SkipRecord& s : report.skipped) skipped.push_back({{"doc_id", s.doc_id}, {"path", s.path}, {"reason", s.reason}});

  return {{"preset", preset_name(report.preset)},
          {"metrics", metrics},
          {"average_mode", average_mode_name(report.average_mode)},
          {"columns", columns},
          {"average", optional_number(report.average)},
          {"counts",
           {{"scored", report.counts.scored},
            {"skipped", report.counts.skipped},
            {"missing_predictions", report.counts.missing_predictions},
            {"applicable", applicable}}},
          {"documents", documents},
          {"missing_predictions", report.missing_predictions},
          {"skipped", skipped}};
}

CorpusReport corpus_report_from_json(const json& j) {
  CorpusReport report;
  const auto preset = parse_preset(j.at("preset").get<std::string>());
  if (!preset) throw std::invalid_argument("unknown preset in report");
  report.preset = *preset;
  for (const auto& name : j.at("metrics")) report.metrics.push_back(metric_or_throw(name.get<std::string>()));
  const auto mode = parse_average_mode(j.at("average_mode").get<std::string>());
  if (!mode) throw std::invalid_argument("unknown average mode in report");
  report.average_mode = *mode;

  for (const auto& [name, value] : j.at("columns").items()) {
    report.columns[static_cast<size_t>(metric_or_throw(name))] = number_or_null(value);
  }
  report.average = number_or_null(j.at("average"));

  const json& counts = j.at("counts");
  report.counts.scored = counts.at("scored").get<size_t>();
  report.counts.skipped = counts.at("skipped").get<size_t>();
  report.counts.missing_predictions = counts.at("missing_predictions").get<size_t>();
  for (const auto& [name, value] : counts.at("applicable").items()) {
    report.counts.applicable[static_cast<size_t>(metric_or_throw(name))] = value.get<size_t>();
  }

  for (const auto& [id, score] : j.at("documents").items()) report.per_document[id] = document_score_from_json(score);
  report.missing_predictions = j.at("missing_predictions").get<std::vector<std::string>>();
  for (const auto& s : j.at("skipped")) {
    report.skipped.push_back({s.at("doc_id").get<std::string>(), s.at("path").get<std::string>(),
                              s.at("reason").get<std::string>()});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string percent(const std::optional<double>& value) {
  if (!value) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *value * 100.0);
  return buf;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_field(const std::string& field) {
  std::string out;
  for (char c : field) {
    if (c == '|') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

std::vector<std::vector<std::string>> table_rows(const CorpusReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"doc_id"};
  for (Metric m : report.metrics) header.emplace_back(metric_name(m));
  header.emplace_back("average");
  rows.push_back(std::move(header));

  for (const auto& [id, score] : report.per_document) {
    std::vector<std::string> row{id};
    for (Metric m : report.metrics) row.push_back(percent(score[m]));
    row.push_back(percent(document_average(score, report.metrics)));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> overall{"overall"};
  for (Metric m : report.metrics) overall.push_back(percent(report.columns[static_cast<size_t>(m)]));
  overall.push_back(percent(report.average));
  rows.push_back(std::move(overall));
  return rows;
}

}  // namespace

std::string emit_report(const CorpusReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(report).dump(2) + "\n";

  const auto rows = table_rows(report);
  std::string out;
  if (format == ReportFormat::Csv) {
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_field(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  for (size_t r = 0; r < rows.size(); ++r) {
    out += '|';
    for (const auto& cell : rows[r]) out += " " + md_field(cell) + " |";
    out += '\n';
    if (r == 0) {
      out += "|---|";
      for (size_t i = 1; i < rows[r].size(); ++i) out += "---:|";
      out += '\n';
    }
  }
  return out;
}

}  // namespace docgrade
