#include "docgrade/segmenter.hpp"

#include <algorithm>

#include "docgrade/markup.hpp"

namespace docgrade {

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::Heading:
      return "heading";
    case UnitKind::FormulaEmbedded:
      return "formula_embedded";
    case UnitKind::FormulaIsolated:
      return "formula_isolated";
    case UnitKind::Table:
      return "table";
    case UnitKind::PlainText:
      return "plain_text";
  }
  return "unknown";
}

namespace {

constexpr size_t npos = std::string_view::npos;
constexpr std::string_view kBeginTabular = "\\begin{tabular}";
constexpr std::string_view kEndTabular = "\\end{tabular}";

class Segmenter {
 public:
  explicit Segmenter(std::string_view text) : text_(text), code_(analyze_code(text)), claimed_(text.size(), false) {}

  SegmentedDoc run(const StandardMarkdown& source) {
    find_tables();
    find_isolated_formulas();
    find_headings();
    find_embedded_formulas();
    fill_plain_text();

    std::sort(units_.begin(), units_.end(),
              [](const SemanticUnit& a, const SemanticUnit& b) { return a.span.begin < b.span.begin; });
    for (size_t i = 0; i < units_.size(); ++i) units_[i].index = i;
    return {source, std::move(units_), std::move(warnings_)};
  }

 private:
  bool at(size_t pos, std::string_view s) const { return text_.substr(pos, s.size()) == s; }

  bool free(size_t pos) const { return !claimed_[pos] && !code_.opaque[pos]; }

  bool range_free(size_t b, size_t e) const {
    for (size_t k = b; k < e; ++k) {
      if (claimed_[k]) return false;
    }
    return true;
  }

  void claim(UnitKind kind, int level, std::string text, size_t b, size_t e) {
    std::fill(claimed_.begin() + static_cast<std::ptrdiff_t>(b), claimed_.begin() + static_cast<std::ptrdiff_t>(e),
              true);
    units_.push_back({kind, level, std::move(text), {b, e}, 0});
  }

  // Position of `closer` after `from`, stopping at claimed text. Escaped
  // backslashes and code are skipped.
  size_t find_closer(size_t from, std::string_view closer) const {
    size_t k = from;
    while (k + 1 < text_.size()) {
      if (claimed_[k]) return npos;
      if (code_.opaque[k]) {
        ++k;
        continue;
      }
      if (text_[k] == '\\') {
        if (text_[k + 1] == '\\') {
          k += 2;
          continue;
        }
        if (at(k, closer)) return k;
        k += 2;
        continue;
      }
      ++k;
    }
    return npos;
  }

  // Skips an optional [pos] argument and the {colspec} group after \begin{tabular}.
  size_t skip_tabular_arguments(size_t pos, size_t limit) const {
    size_t i = pos;
    auto skip_ws = [&] {
      while (i < limit && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\n')) ++i;
    };
    skip_ws();
    if (i < limit && text_[i] == '[') {
      const size_t close = text_.find(']', i);
      if (close == npos || close >= limit) return pos;
      i = close + 1;
      skip_ws();
    }
    if (i >= limit || text_[i] != '{') return pos;
    int depth = 0;
    for (; i < limit; ++i) {
      if (text_[i] == '\\') {
        ++i;
        continue;
      }
      if (text_[i] == '{') ++depth;
      if (text_[i] == '}' && --depth == 0) return i + 1;
    }
    return pos;
  }

  void find_tables() {
    size_t i = 0;
    while (i < text_.size()) {
      if (!free(i) || !at(i, kBeginTabular)) {
        ++i;
        continue;
      }
      int depth = 0;
      size_t k = i;
      size_t body_end = npos;
      size_t stop = npos;
      while (k < text_.size()) {
        if (!code_.opaque[k] && at(k, kBeginTabular)) {
          ++depth;
          k += kBeginTabular.size();
        } else if (!code_.opaque[k] && at(k, kEndTabular)) {
          if (--depth == 0) {
            body_end = k;
            stop = k + kEndTabular.size();
            break;
          }
          k += kEndTabular.size();
        } else {
          ++k;
        }
      }
      if (stop == npos) {
        warnings_.push_back("unterminated \\begin{tabular} at byte " + std::to_string(i) +
                            "; the rest of the document is taken as the table");
        body_end = stop = text_.size();
      }
      const size_t body_begin = skip_tabular_arguments(i + kBeginTabular.size(), body_end);
      claim(UnitKind::Table, 0, std::string(trim(text_.substr(body_begin, body_end - body_begin))), i, stop);
      i = stop;
    }
  }

  void find_isolated_formulas() {
    for (size_t li = 0; li < code_.lines.size(); ++li) {
      if (code_.fenced_line[li]) continue;
      const LineRef& line = code_.lines[li];
      const size_t p = line.begin + indentation(text_.substr(line.begin, line.end - line.begin));
      if (p + 1 >= text_.size() || p >= line.end || !free(p) || !at(p, "\\[")) continue;
      const size_t close = find_closer(p + 2, "\\]");
      if (close == npos) {
        warnings_.push_back("line " + std::to_string(li + 1) + ": unterminated \\[ kept as plain text");
        continue;
      }
      claim(UnitKind::FormulaIsolated, 0, std::string(trim(text_.substr(p + 2, close - p - 2))), p, close + 2);
    }
  }

  void find_headings() {
    for (size_t li = 0; li < code_.lines.size(); ++li) {
      if (code_.fenced_line[li]) continue;
      const LineRef& line = code_.lines[li];
      size_t p = line.begin;
      while (p < line.end && p - line.begin < 3 && text_[p] == ' ') ++p;
      if (p >= line.end || !free(p) || text_[p] != '#') continue;
      int level = 0;
      while (p + static_cast<size_t>(level) < line.end && text_[p + static_cast<size_t>(level)] == '#') ++level;
      const size_t after = p + static_cast<size_t>(level);
      if (level > 6 || after >= line.end || (text_[after] != ' ' && text_[after] != '\t')) continue;
      size_t stop = after;
      while (stop < line.end && !claimed_[stop]) ++stop;
      std::string heading(trim(text_.substr(after, stop - after)));
      if (heading.empty()) continue;
      claim(UnitKind::Heading, level, std::move(heading), line.begin, stop);
    }
  }

  void find_embedded_formulas() {
    size_t i = 0;
    while (i + 1 < text_.size()) {
      if (!free(i) || text_[i] != '\\') {
        ++i;
        continue;
      }
      const char next = text_[i + 1];
      if (next == '(' || next == '[') {
        const size_t close = find_closer(i + 2, next == '(' ? "\\)" : "\\]");
        if (close != npos) {
          claim(UnitKind::FormulaEmbedded, 0, std::string(trim(text_.substr(i + 2, close - i - 2))), i, close + 2);
          i = close + 2;
          continue;
        }
      }
      i += 2;
    }
  }

  // Gaps between units. Whitespace that contains a line break is dropped at
  // the gap boundaries; spaces on the same line as text are kept.
  void fill_plain_text() {
    size_t i = 0;
    while (i < text_.size()) {
      if (claimed_[i]) {
        ++i;
        continue;
      }
      size_t e = i;
      while (e < text_.size() && !claimed_[e]) ++e;
      size_t b = i;
      size_t k = b;
      while (k < e && (text_[k] == ' ' || text_[k] == '\t' || text_[k] == '\n')) {
        if (text_[k] == '\n') b = k + 1;
        ++k;
      }
      size_t t = e;
      size_t r = e;
      while (r > b && (text_[r - 1] == ' ' || text_[r - 1] == '\t' || text_[r - 1] == '\n')) {
        if (text_[r - 1] == '\n') t = r - 1;
        --r;
      }
      if (r > b) units_.push_back({UnitKind::PlainText, 0, std::string(text_.substr(b, t - b)), {b, t}, 0});
      i = e;
    }
  }

  std::string_view text_;
  CodeLayout code_;
  std::vector<bool> claimed_;
  std::vector<SemanticUnit> units_;
  Warnings warnings_;
};

}  // namespace

SegmentedDoc segment(const StandardMarkdown& doc) { return Segmenter(doc.str()).run(doc); }

std::vector<SemanticUnit> units_of_kind(const SegmentedDoc& doc, UnitKind kind) {
  std::vector<SemanticUnit> out;
  for (const SemanticUnit& unit : doc.units) {
    if (unit.kind == kind) out.push_back(unit);
  }
  return out;
}

}  // namespace docgrade
