#include "docgrade/scorer.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "docgrade/markup.hpp"
#include "docgrade/structure.hpp"

namespace docgrade {

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::TextConcat:
      return "text_concat";
    case Metric::TextVocab:
      return "text_vocab";
    case Metric::HeadingConcat:
      return "heading_concat";
    case Metric::HeadingTree:
      return "heading_tree";
    case Metric::FormulaEmbed:
      return "formula_embed";
    case Metric::FormulaIsolate:
      return "formula_isolate";
    case Metric::TableConcat:
      return "table_concat";
    case Metric::TableTree:
      return "table_tree";
    case Metric::OrderBlock:
      return "order_block";
    case Metric::OrderToken:
      return "order_token";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::Arxiv:
      return "arxiv";
    case Preset::Github:
      return "github";
    case Preset::Zenodo:
      return "zenodo";
    case Preset::Custom:
      return "custom";
  }
  return "unknown";
}

std::optional<Preset> parse_preset(std::string_view name) {
  for (Preset p : {Preset::Arxiv, Preset::Github, Preset::Zenodo, Preset::Custom}) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<Metric> preset_metrics(Preset preset) {
  switch (preset) {
    case Preset::Arxiv:
      return {kAllMetrics.begin(), kAllMetrics.end()};
    case Preset::Github:
      return {Metric::TextConcat,  Metric::TextVocab,  Metric::HeadingConcat,
              Metric::HeadingTree, Metric::OrderBlock, Metric::OrderToken};
    case Preset::Zenodo:
      return {Metric::TextConcat,  Metric::TextVocab,   Metric::HeadingConcat, Metric::HeadingTree,
              Metric::TableConcat, Metric::TableTree,   Metric::OrderBlock,    Metric::OrderToken};
    case Preset::Custom:
      break;
  }
  throw std::invalid_argument("the custom preset has no fixed metric set");
}

ScoringConfig ScoringConfig::for_preset(Preset preset) { return for_metrics(preset_metrics(preset)); }

ScoringConfig ScoringConfig::for_metrics(const std::vector<Metric>& metrics) {
  ScoringConfig config;
  for (Metric m : metrics) config.enabled[static_cast<size_t>(m)] = true;
  return config;
}

std::vector<Metric> ScoringConfig::enabled_metrics() const {
  std::vector<Metric> out;
  for (Metric m : kAllMetrics) {
    if (is_enabled(m)) out.push_back(m);
  }
  return out;
}

void ScoringConfig::validate() const {
  if (enabled_metrics().empty()) throw std::invalid_argument("scoring config enables no metric");
}

// ---------------------------------------------------------------------------

namespace {

NormalizedText joined(const SegmentedDoc& doc, UnitKind kind) {
  std::string text;
  bool first = true;
  for (const SemanticUnit& unit : doc.units) {
    if (unit.kind != kind) continue;
    if (!first) text += '\n';
    text += unit.text;
    first = false;
  }
  return NormalizedText::from(text);
}

size_t count_kind(const SegmentedDoc& doc, UnitKind kind) {
  return static_cast<size_t>(
      std::count_if(doc.units.begin(), doc.units.end(), [&](const SemanticUnit& u) { return u.kind == kind; }));
}

std::vector<SemanticUnit> headings_of(const SegmentedDoc& doc) { return units_of_kind(doc, UnitKind::Heading); }

}  // namespace

ScorePair score_text(const SegmentedDoc& pred, const SegmentedDoc& gt) {
  const NormalizedText p = joined(pred, UnitKind::PlainText);
  const NormalizedText g = joined(gt, UnitKind::PlainText);
  return {eds(p, g), vocab_f1(TokenBag(tokenize_words(p.str())), TokenBag(tokenize_words(g.str())))};
}

ScorePair score_headings(const SegmentedDoc& pred, const SegmentedDoc& gt, RelabelCost relabel) {
  const double concat = eds(joined(pred, UnitKind::Heading), joined(gt, UnitKind::Heading));
  const double tree = teds(build_toc(headings_of(pred)), build_toc(headings_of(gt)), relabel);
  return {concat, tree};
}

ScorePair score_formulas(const SegmentedDoc& pred, const SegmentedDoc& gt) {
  return {eds(joined(pred, UnitKind::FormulaEmbedded), joined(gt, UnitKind::FormulaEmbedded)),
          eds(joined(pred, UnitKind::FormulaIsolated), joined(gt, UnitKind::FormulaIsolated))};
}

ScorePair score_tables(const SegmentedDoc& pred, const SegmentedDoc& gt, RelabelCost relabel, Warnings* warnings) {
  const double concat = eds(joined(pred, UnitKind::Table), joined(gt, UnitKind::Table));

  auto parse_all = [&](const SegmentedDoc& doc, std::string_view side) {
    std::vector<TableParse> parsed;
    for (const SemanticUnit& unit : doc.units) {
      if (unit.kind != UnitKind::Table) continue;
      parsed.push_back(parse_latex_table(unit.text));
      if (warnings) {
        for (const std::string& w : parsed.back().warnings) {
          warnings->push_back(std::string(side) + " table " + std::to_string(parsed.size() - 1) + ": " + w);
        }
      }
    }
    return parsed;
  };
  const std::vector<TableParse> p = parse_all(pred, "pred");
  const std::vector<TableParse> g = parse_all(gt, "gt");
  const size_t denominator = std::max(p.size(), g.size());
  if (denominator == 0) return {concat, 1.0};
  if (p.empty() || g.empty()) return {concat, 0.0};

  WeightMatrix weights(p.size(), std::vector<double>(g.size(), 0.0));
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < g.size(); ++j) {
      if (p[i].failed || g[j].failed) continue;
      weights[i][j] = teds(p[i].tree, g[j].tree, relabel);
    }
  }
  const Assignment matching = max_weight_assignment(weights);
  return {concat, matching.total / static_cast<double>(denominator)};
}

std::vector<NormalizedText> build_blocks(const SegmentedDoc& doc) {
  const std::string_view source = doc.source.str();
  std::vector<NormalizedText> blocks;
  auto push = [&](std::string_view text) {
    NormalizedText block = NormalizedText::from(text);
    if (!block.empty()) blocks.push_back(std::move(block));
  };
  auto push_paragraphs = [&](std::string_view run) {
    size_t start = 0;
    for (const LineRef& line : split_lines(run)) {
      if (is_blank(run.substr(line.begin, line.end - line.begin))) {
        push(run.substr(start, line.begin - start));
        start = line.end;
      }
    }
    push(run.substr(std::min(start, run.size())));
  };

  size_t i = 0;
  const auto& units = doc.units;
  while (i < units.size()) {
    const SemanticUnit& unit = units[i];
    if (unit.kind == UnitKind::PlainText || unit.kind == UnitKind::FormulaEmbedded) {
      size_t j = i;
      while (j + 1 < units.size() &&
             (units[j + 1].kind == UnitKind::PlainText || units[j + 1].kind == UnitKind::FormulaEmbedded)) {
        ++j;
      }
      push_paragraphs(source.substr(unit.span.begin, units[j].span.end - unit.span.begin));
      i = j + 1;
      continue;
    }
    push(source.substr(unit.span.begin, unit.span.size()));
    ++i;
  }
  return blocks;
}

ReadingOrderScore score_reading_order(const SegmentedDoc& pred, const SegmentedDoc& gt) {
  ReadingOrderScore result;

  const std::vector<NormalizedText> pred_blocks = build_blocks(pred);
  const std::vector<NormalizedText> gt_blocks = build_blocks(gt);
  result.gt_blocks = gt_blocks.size();
  std::unordered_map<std::string, std::deque<size_t>> gt_positions;
  for (size_t g = 0; g < gt_blocks.size(); ++g) gt_positions[gt_blocks[g].str()].push_back(g);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t p = 0; p < pred_blocks.size(); ++p) {
    const auto it = gt_positions.find(pred_blocks[p].str());
    if (it == gt_positions.end() || it->second.empty()) continue;
    pairs.emplace_back(it->second.front(), p);
    it->second.pop_front();
  }
  result.matched_blocks = pairs.size();
  if (!pairs.empty()) result.block = ktds(AlignedRanking::from_pairs(std::move(pairs)));

  auto first_positions = [](const std::vector<std::string>& tokens) {
    std::unordered_map<std::string, size_t> first;
    for (size_t i = 0; i < tokens.size(); ++i) first.emplace(tokens[i], i);
    return first;
  };
  const std::vector<std::string> gt_tokens = tokenize_words(gt.source.str());
  const auto pred_first = first_positions(tokenize_words(pred.source.str()));
  std::unordered_map<std::string, bool> seen;
  std::vector<size_t> order;
  for (const std::string& token : gt_tokens) {
    if (!seen.emplace(token, true).second) continue;
    const auto it = pred_first.find(token);
    if (it != pred_first.end()) order.push_back(it->second);
  }
  result.shared_tokens = order.size();
  if (!order.empty()) result.token = ktds(AlignedRanking::from_predicted_order(order));
  return result;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<UnitKind, 5> kKinds{UnitKind::Heading, UnitKind::FormulaEmbedded, UnitKind::FormulaIsolated,
                                         UnitKind::Table, UnitKind::PlainText};

bool any_enabled(const ScoringConfig& config, std::initializer_list<Metric> metrics) {
  return std::any_of(metrics.begin(), metrics.end(), [&](Metric m) { return config.is_enabled(m); });
}

void set_if_enabled(DocumentScore& score, const ScoringConfig& config, Metric m, double value) {
  if (config.is_enabled(m)) score[m] = value;
}

void append_prefixed(Warnings& out, const Warnings& in, std::string_view prefix) {
  for (const std::string& w : in) out.push_back(std::string(prefix) + w);
}

}  // namespace

DocumentScore score_segmented(const SegmentedDoc& pred, const SegmentedDoc& gt, const ScoringConfig& config) {
  config.validate();
  DocumentScore score;

  if (count_kind(gt, UnitKind::PlainText) > 0 && any_enabled(config, {Metric::TextConcat, Metric::TextVocab})) {
    const ScorePair text = score_text(pred, gt);
    set_if_enabled(score, config, Metric::TextConcat, text.concat);
    set_if_enabled(score, config, Metric::TextVocab, text.second);
  }
  if (count_kind(gt, UnitKind::Heading) > 0 && any_enabled(config, {Metric::HeadingConcat, Metric::HeadingTree})) {
    const ScorePair headings = score_headings(pred, gt, config.relabel);
    set_if_enabled(score, config, Metric::HeadingConcat, headings.concat);
    set_if_enabled(score, config, Metric::HeadingTree, headings.second);
  }
  const bool has_embedded = count_kind(gt, UnitKind::FormulaEmbedded) > 0;
  const bool has_isolated = count_kind(gt, UnitKind::FormulaIsolated) > 0;
  if ((has_embedded && config.is_enabled(Metric::FormulaEmbed)) ||
      (has_isolated && config.is_enabled(Metric::FormulaIsolate))) {
    const ScorePair formulas = score_formulas(pred, gt);
    if (has_embedded) set_if_enabled(score, config, Metric::FormulaEmbed, formulas.concat);
    if (has_isolated) set_if_enabled(score, config, Metric::FormulaIsolate, formulas.second);
  }
  if (count_kind(gt, UnitKind::Table) > 0 && any_enabled(config, {Metric::TableConcat, Metric::TableTree})) {
    Warnings table_warnings;
    const ScorePair tables = score_tables(pred, gt, config.relabel, &table_warnings);
    set_if_enabled(score, config, Metric::TableConcat, tables.concat);
    set_if_enabled(score, config, Metric::TableTree, tables.second);
    score.warnings.insert(score.warnings.end(), table_warnings.begin(), table_warnings.end());
  }
  if (any_enabled(config, {Metric::OrderBlock, Metric::OrderToken})) {
    const ReadingOrderScore order = score_reading_order(pred, gt);
    if (order.block) set_if_enabled(score, config, Metric::OrderBlock, *order.block);
    if (order.token) set_if_enabled(score, config, Metric::OrderToken, *order.token);
    if (config.is_enabled(Metric::OrderBlock) && order.matched_blocks < order.gt_blocks) {
      score.warnings.push_back("order_block: matched " + std::to_string(order.matched_blocks) + " of " +
                               std::to_string(order.gt_blocks) + " ground-truth blocks");
    }
  }

  for (UnitKind kind : kKinds) {
    const size_t in_pred = count_kind(pred, kind);
    if (in_pred > 0 && count_kind(gt, kind) == 0) {
      score.warnings.push_back("pred has " + std::to_string(in_pred) + " " + std::string(to_string(kind)) +
                               " units; ground truth has none");
    }
  }
  return score;
}

DocumentScore score_document(const RawMarkdown& pred, const RawMarkdown& gt, const ScoringConfig& config) {
  const Standardized sp = standardize(pred);
  const Standardized sg = standardize(gt);
  const SegmentedDoc dp = segment(sp.text);
  const SegmentedDoc dg = segment(sg.text);

  DocumentScore score = score_segmented(dp, dg, config);
  Warnings warnings;
  append_prefixed(warnings, sp.warnings, "pred: ");
  append_prefixed(warnings, dp.warnings, "pred: ");
  append_prefixed(warnings, sg.warnings, "gt: ");
  append_prefixed(warnings, dg.warnings, "gt: ");
  warnings.insert(warnings.end(), score.warnings.begin(), score.warnings.end());
  score.warnings = std::move(warnings);
  return score;
}

DocumentScore score_missing_prediction(const RawMarkdown& gt, const ScoringConfig& config) {
  config.validate();
  const Standardized sg = standardize(gt);
  const SegmentedDoc dg = segment(sg.text);
  DocumentScore score;
  auto applies = [&](Metric m) {
    switch (m) {
      case Metric::TextConcat:
      case Metric::TextVocab:
        return count_kind(dg, UnitKind::PlainText) > 0;
      case Metric::HeadingConcat:
      case Metric::HeadingTree:
        return count_kind(dg, UnitKind::Heading) > 0;
      case Metric::FormulaEmbed:
        return count_kind(dg, UnitKind::FormulaEmbedded) > 0;
      case Metric::FormulaIsolate:
        return count_kind(dg, UnitKind::FormulaIsolated) > 0;
      case Metric::TableConcat:
      case Metric::TableTree:
        return count_kind(dg, UnitKind::Table) > 0;
      case Metric::OrderBlock:
        return !build_blocks(dg).empty();
      case Metric::OrderToken:
        return !tokenize_words(dg.source.str()).empty();
    }
    return false;
  };
  for (Metric m : config.enabled_metrics()) {
    if (applies(m)) score[m] = 0.0;
  }
  score.warnings.push_back("prediction missing; every applicable metric scored 0");
  return score;
}

}  // namespace docgrade
