#include "docgrade/structure.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

#include "docgrade/markup.hpp"

namespace docgrade {

StructTree::StructTree() { nodes_.push_back({std::string(kRootLabel), 0, {}}); }

size_t StructTree::add_child(size_t parent, std::string label, int level) {
  const size_t id = nodes_.size();
  nodes_.push_back({std::move(label), level, {}});
  nodes_[parent].children.push_back(id);
  return id;
}

std::vector<size_t> StructTree::preorder() const {
  std::vector<size_t> order;
  order.reserve(nodes_.size());
  std::vector<size_t> stack{kRoot};
  while (!stack.empty()) {
    const size_t id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& kids = nodes_[id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

namespace {

void append_escaped(std::string& out, std::string_view label) {
  for (char c : label) {
    if (c == '\\' || c == '(' || c == ')' || c == ',') out += '\\';
    out += c;
  }
}

void write_bracket(const StructTree& tree, size_t id, std::string& out) {
  const TreeNode& node = tree.node(id);
  append_escaped(out, node.label);
  if (node.children.empty()) return;
  out += '(';
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (i) out += ',';
    write_bracket(tree, node.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string StructTree::to_bracket() const {
  std::string out;
  write_bracket(*this, kRoot, out);
  return out;
}

StructTree build_toc(const std::vector<SemanticUnit>& headings) {
  StructTree tree;
  struct Open {
    size_t id;
    int level;
  };
  std::vector<Open> stack;
  for (const SemanticUnit& unit : headings) {
    if (unit.kind != UnitKind::Heading) continue;
    while (!stack.empty() && stack.back().level >= unit.level) stack.pop_back();
    const size_t parent = stack.empty() ? StructTree::kRoot : stack.back().id;
    const size_t id = tree.add_child(parent, unit.text, unit.level);
    stack.push_back({id, unit.level});
  }
  return tree;
}

// ---------------------------------------------------------------------------
// LaTeX tables

namespace {

constexpr size_t npos = std::string_view::npos;
constexpr std::string_view kBeginTabular = "\\begin{tabular}";
constexpr std::string_view kEndTabular = "\\end{tabular}";

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

bool braces_balanced(std::string_view s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth < 0) return false;
  }
  return depth == 0;
}

size_t skip_spaces(std::string_view s, size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
  return i;
}

// Reads a balanced `open ... close` group at `i` (after spaces). On success
// stores the content and returns one past the closer.
std::optional<size_t> read_group(std::string_view s, size_t i, char open, char close, std::string_view* content) {
  i = skip_spaces(s, i);
  if (i >= s.size() || s[i] != open) return std::nullopt;
  int depth = 0;
  for (size_t k = i; k < s.size(); ++k) {
    if (s[k] == '\\') {
      ++k;
      continue;
    }
    if (s[k] == open) ++depth;
    if (s[k] == close && --depth == 0) {
      if (content) *content = s.substr(i + 1, k - i - 1);
      return k + 1;
    }
  }
  return std::nullopt;
}

// \multirow's width: a braced group or the bare `*` / `=` shorthands.
std::optional<size_t> read_width(std::string_view s, size_t i) {
  i = skip_spaces(s, i);
  if (i < s.size() && (s[i] == '*' || s[i] == '=')) return i + 1;
  return read_group(s, i, '{', '}', nullptr);
}

size_t skip_optional(std::string_view s, size_t i, char open, char close) {
  if (auto next = read_group(s, i, open, close, nullptr)) return *next;
  return i;
}

// Index of the \end{tabular} matching a \begin{tabular} whose name ends before `from`.
size_t matching_end(std::string_view s, size_t from) {
  int depth = 1;
  size_t k = from;
  while (k < s.size()) {
    if (s.substr(k, kBeginTabular.size()) == kBeginTabular) {
      ++depth;
      k += kBeginTabular.size();
    } else if (s.substr(k, kEndTabular.size()) == kEndTabular) {
      if (--depth == 0) return k;
      k += kEndTabular.size();
    } else {
      ++k;
    }
  }
  return npos;
}

struct RuleCommand {
  std::string_view name;
  int args;
};
constexpr std::array<RuleCommand, 9> kRuleCommands{{{"hline", 0},
                                                    {"toprule", 0},
                                                    {"midrule", 0},
                                                    {"bottomrule", 0},
                                                    {"cline", 1},
                                                    {"cmidrule", 1},
                                                    {"hhline", 1},
                                                    {"specialrule", 3},
                                                    {"addlinespace", 0}}};

std::string strip_rules(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '\\') {
      out += s[i++];
      continue;
    }
    size_t e = i + 1;
    while (e < s.size() && std::isalpha(static_cast<unsigned char>(s[e]))) ++e;
    const std::string_view name = s.substr(i + 1, e - i - 1);
    const auto rule = std::find_if(kRuleCommands.begin(), kRuleCommands.end(),
                                   [&](const RuleCommand& r) { return r.name == name; });
    if (name.empty() || rule == kRuleCommands.end()) {
      out += s[i++];
      if (i < s.size() && name.empty()) out += s[i++];
      continue;
    }
    size_t k = e;
    k = skip_optional(s, k, '(', ')');
    k = skip_optional(s, k, '[', ']');
    for (int a = 0; a < rule->args; ++a) {
      if (auto next = read_group(s, k, '{', '}', nullptr)) k = *next;
    }
    out += ' ';
    i = k;
  }
  return out;
}

struct RawTable {
  std::vector<std::vector<std::string>> rows;
};

// Splits on top-level '\\' (rows) and '&' (cells). Content inside braces or a
// nested tabular is never split.
RawTable split_cells(std::string_view body) {
  RawTable table;
  std::vector<std::string> row;
  std::string cell;
  int depth = 0;
  int nested = 0;
  size_t i = 0;
  auto end_row = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    table.rows.push_back(std::move(row));
    row.clear();
  };
  while (i < body.size()) {
    const char c = body[i];
    if (c == '\\') {
      if (body.substr(i, kBeginTabular.size()) == kBeginTabular) {
        ++nested;
        cell.append(kBeginTabular);
        i += kBeginTabular.size();
        continue;
      }
      if (body.substr(i, kEndTabular.size()) == kEndTabular) {
        nested = std::max(0, nested - 1);
        cell.append(kEndTabular);
        i += kEndTabular.size();
        continue;
      }
      const bool top = depth == 0 && nested == 0;
      if (top && i + 1 < body.size() && body[i + 1] == '\\') {
        end_row();
        i = skip_optional(body, i + 2, '[', ']');
        continue;
      }
      if (top && body.substr(i, 15) == "\\tabularnewline") {
        end_row();
        i = skip_optional(body, i + 15, '[', ']');
        continue;
      }
      cell += c;
      if (i + 1 < body.size()) cell += body[i + 1];
      i += 2;
      continue;
    }
    if (c == '{') ++depth;
    if (c == '}') depth = std::max(0, depth - 1);
    if (c == '&' && depth == 0 && nested == 0) {
      row.push_back(std::move(cell));
      cell.clear();
      ++i;
      continue;
    }
    cell += c;
    ++i;
  }
  end_row();
  return table;
}

std::optional<int> parse_span_count(std::string_view arg) {
  const std::string_view t = trim(arg);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || value == 0) return std::nullopt;
  return std::abs(value);
}

std::string flatten_nested(std::string_view text);

struct CellLabel {
  std::string text;
  int colspan = 1;
  int rowspan = 1;
};

CellLabel parse_cell(std::string_view raw, Warnings& warnings) {
  CellLabel label;
  std::string current(trim(raw));
  for (;;) {
    const std::string_view s = current;
    if (s.starts_with("\\multicolumn") && !(s.size() > 12 && std::isalpha(static_cast<unsigned char>(s[12])))) {
      std::string_view count;
      std::string_view content;
      auto k = read_group(s, 12, '{', '}', &count);
      if (k) k = read_group(s, *k, '{', '}', nullptr);
      if (k) k = read_group(s, *k, '{', '}', &content);
      const auto span = parse_span_count(count);
      if (!k || !span) {
        warnings.push_back("malformed \\multicolumn, raw text used as cell label: " + current);
        break;
      }
      label.colspan = *span;
      current = std::string(trim(content)) + " " + std::string(s.substr(*k));
      current = std::string(trim(current));
      continue;
    }
    if (s.starts_with("\\multirow") && !(s.size() > 9 && std::isalpha(static_cast<unsigned char>(s[9])))) {
      std::string_view count;
      std::string_view content;
      size_t k = skip_optional(s, 9, '[', ']');
      auto next = read_group(s, k, '{', '}', &count);
      if (next) next = read_width(s, skip_optional(s, *next, '[', ']'));
      if (next) next = read_group(s, skip_optional(s, *next, '[', ']'), '{', '}', &content);
      const auto span = parse_span_count(count);
      if (!next || !span) {
        warnings.push_back("malformed \\multirow, raw text used as cell label: " + current);
        break;
      }
      label.rowspan = *span;
      current = std::string(trim(content)) + " " + std::string(s.substr(*next));
      current = std::string(trim(current));
      continue;
    }
    break;
  }
  label.text = collapse_whitespace(flatten_nested(current));
  return label;
}

std::string make_label(const CellLabel& cell) {
  std::string out = cell.text;
  if (cell.colspan > 1) out += "⟨cs=" + std::to_string(cell.colspan) + "⟩";
  if (cell.rowspan > 1) out += "⟨rs=" + std::to_string(cell.rowspan) + "⟩";
  return out;
}

std::string_view strip_environment(std::string_view text, Warnings& warnings) {
  text = trim(text);
  if (!text.starts_with(kBeginTabular)) return text;
  size_t i = skip_optional(text, kBeginTabular.size(), '[', ']');
  i = skip_optional(text, i, '{', '}');
  const size_t end = matching_end(text, kBeginTabular.size());
  if (end == npos) {
    warnings.push_back("tabular environment without \\end{tabular}");
    return text.substr(i);
  }
  return text.substr(i, end - i);
}

// Rows of cell labels for a tabular body; rule-only and empty rows dropped.
std::vector<std::vector<std::string>> labeled_rows(std::string_view body, Warnings& warnings) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& raw_row : split_cells(body).rows) {
    std::vector<std::string> cells;
    cells.reserve(raw_row.size());
    for (const std::string& raw : raw_row) cells.push_back(strip_rules(raw));
    if (cells.size() == 1 && trim(cells[0]).empty()) continue;
    std::vector<std::string> labels;
    labels.reserve(cells.size());
    for (const std::string& cell : cells) labels.push_back(make_label(parse_cell(cell, warnings)));
    rows.push_back(std::move(labels));
  }
  return rows;
}

std::string flatten_nested(std::string_view text) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    const size_t begin = text.find(kBeginTabular, i);
    if (begin == npos) break;
    out.append(text.substr(i, begin - i));
    const size_t end = matching_end(text, begin + kBeginTabular.size());
    const size_t stop = end == npos ? text.size() : end + kEndTabular.size();
    Warnings ignored;
    std::string inner;
    for (const auto& row : labeled_rows(strip_environment(text.substr(begin, stop - begin), ignored), ignored)) {
      for (const std::string& label : row) {
        if (label.empty()) continue;
        if (!inner.empty()) inner += ' ';
        inner += label;
      }
    }
    out += ' ';
    out += inner;
    out += ' ';
    i = stop;
  }
  out.append(text.substr(std::min(i, text.size())));
  return out;
}

}  // namespace

TableParse parse_latex_table(std::string_view table_text) {
  TableParse result;
  const std::string_view body = strip_environment(table_text, result.warnings);
  if (!braces_balanced(body)) {
    result.failed = true;
    result.warnings.push_back("unbalanced braces in table");
  }
  for (const auto& row : labeled_rows(body, result.warnings)) {
    const size_t row_id = result.tree.add_child(StructTree::kRoot, std::string(kRowLabel));
    for (const std::string& label : row) result.tree.add_child(row_id, label);
  }
  return result;
}

}  // namespace docgrade
