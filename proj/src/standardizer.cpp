#include "docgrade/standardizer.hpp"

#include <algorithm>
#include <optional>

#include "docgrade/markup.hpp"
#include "docgrade/unicode.hpp"

namespace docgrade {
namespace {

constexpr size_t npos = std::string_view::npos;

struct Edit {
  size_t pos = 0;
  size_t len = 0;
  std::string replacement;
};

std::string apply_edits(std::string_view text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.pos < b.pos; });
  std::string out;
  out.reserve(text.size());
  size_t cursor = 0;
  for (const Edit& e : edits) {
    out.append(text.substr(cursor, e.pos - cursor));
    out += e.replacement;
    cursor = e.pos + e.len;
  }
  out.append(text.substr(cursor));
  return out;
}

void warn(Warnings* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

bool starts_with_at(std::string_view text, size_t pos, std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

// Finds `closer` at or after `from`, skipping code and escaped backslashes.
size_t find_closer(std::string_view text, const std::vector<bool>& skip, size_t from, std::string_view closer) {
  size_t k = from;
  while (k + 1 < text.size()) {
    if (skip[k]) {
      ++k;
      continue;
    }
    if (text[k] == '\\') {
      if (text[k + 1] == '\\') {
        k += 2;
        continue;
      }
      if (starts_with_at(text, k, closer)) return k;
      k += 2;
      continue;
    }
    ++k;
  }
  return npos;
}

// Code plus \( \) and \[ \] math regions.
std::vector<bool> math_mask(std::string_view text, const CodeLayout& code) {
  std::vector<bool> mask = code.opaque;
  size_t i = 0;
  while (i + 1 < text.size()) {
    if (code.opaque[i] || text[i] != '\\') {
      ++i;
      continue;
    }
    const char next = text[i + 1];
    if (next == '(' || next == '[') {
      const size_t close = find_closer(text, code.opaque, i + 2, next == '(' ? "\\)" : "\\]");
      if (close != npos) {
        std::fill(mask.begin() + static_cast<std::ptrdiff_t>(i), mask.begin() + static_cast<std::ptrdiff_t>(close + 2),
                  true);
        i = close + 2;
        continue;
      }
    }
    i += 2;
  }
  return mask;
}

// Math regions plus tabular environments (nesting respected, unterminated runs to the end).
std::vector<bool> latex_mask(std::string_view text, const CodeLayout& code) {
  std::vector<bool> mask = math_mask(text, code);
  constexpr std::string_view begin_tab = "\\begin{tabular}";
  constexpr std::string_view end_tab = "\\end{tabular}";
  size_t i = 0;
  while (i < text.size()) {
    if (code.opaque[i] || !starts_with_at(text, i, begin_tab)) {
      ++i;
      continue;
    }
    int depth = 0;
    size_t k = i;
    size_t stop = text.size();
    while (k < text.size()) {
      if (!code.opaque[k] && starts_with_at(text, k, begin_tab)) {
        ++depth;
        k += begin_tab.size();
      } else if (!code.opaque[k] && starts_with_at(text, k, end_tab)) {
        k += end_tab.size();
        if (--depth == 0) {
          stop = k;
          break;
        }
      } else {
        ++k;
      }
    }
    std::fill(mask.begin() + static_cast<std::ptrdiff_t>(i), mask.begin() + static_cast<std::ptrdiff_t>(stop), true);
    i = stop;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Formula delimiters

enum class TokKind { Dollar1, Dollar2, EnvOpen, EnvClose, BracketOpen, BracketClose };

struct Tok {
  TokKind kind;
  size_t pos;
  size_t len;
  std::string env;
  size_t line;
};

std::vector<Tok> lex_math_delimiters(std::string_view text, const CodeLayout& code,
                                     const StandardizerConfig& config) {
  std::vector<Tok> toks;
  size_t line = 0;
  size_t i = 0;
  auto is_display_env = [&](std::string_view name) {
    return std::find(config.display_environments.begin(), config.display_environments.end(), name) !=
           config.display_environments.end();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (code.opaque[i]) {
      ++i;
      continue;
    }
    if (c == '\\' && i + 1 < text.size()) {
      const char n = text[i + 1];
      if (n == '[') {
        toks.push_back({TokKind::BracketOpen, i, 2, {}, line});
      } else if (n == ']') {
        toks.push_back({TokKind::BracketClose, i, 2, {}, line});
      } else if (starts_with_at(text, i, "\\begin{") || starts_with_at(text, i, "\\end{")) {
        const bool open = text[i + 1] == 'b';
        const size_t name_start = i + (open ? 7 : 5);
        const size_t brace = text.find('}', name_start);
        if (brace != npos) {
          const std::string_view name = text.substr(name_start, brace - name_start);
          if (is_display_env(name)) {
            toks.push_back({open ? TokKind::EnvOpen : TokKind::EnvClose, i, brace + 1 - i, std::string(name), line});
            i = brace + 1;
            continue;
          }
        }
        i += 2;
        continue;
      }
      // \\ \$ \( and any other escape: consume both bytes
      i += 2;
      continue;
    }
    if (c == '$') {
      if (i + 1 < text.size() && text[i + 1] == '$' && !code.opaque[i + 1]) {
        toks.push_back({TokKind::Dollar2, i, 2, {}, line});
        i += 2;
      } else {
        toks.push_back({TokKind::Dollar1, i, 1, {}, line});
        ++i;
      }
      continue;
    }
    ++i;
  }
  return toks;
}

bool closes(const Tok& opener, const Tok& candidate) {
  switch (opener.kind) {
    case TokKind::Dollar2:
      return candidate.kind == TokKind::Dollar2;
    case TokKind::EnvOpen:
      return candidate.kind == TokKind::EnvClose && candidate.env == opener.env;
    case TokKind::BracketOpen:
      return candidate.kind == TokKind::BracketClose;
    default:
      return false;
  }
}

}  // namespace

std::string align_formula_delimiters(std::string_view text, Warnings* warnings, const StandardizerConfig& config) {
  const CodeLayout code = analyze_code(text);
  const std::vector<Tok> toks = lex_math_delimiters(text, code, config);
  std::vector<Edit> edits;

  std::vector<const Tok*> inline_group;
  auto flush_inline = [&] {
    const size_t paired = inline_group.size() - inline_group.size() % 2;
    for (size_t k = 0; k < paired; k += 2) {
      edits.push_back({inline_group[k]->pos, 1, "\\("});
      edits.push_back({inline_group[k + 1]->pos, 1, "\\)"});
    }
    if (paired < inline_group.size()) {
      warn(warnings, "line " + std::to_string(inline_group.back()->line + 1) + ": unmatched $ kept as literal text");
    }
    inline_group.clear();
  };

  size_t t = 0;
  while (t < toks.size()) {
    const Tok& tok = toks[t];
    if (!inline_group.empty() && inline_group.back()->line != tok.line) flush_inline();

    switch (tok.kind) {
      case TokKind::Dollar1:
        inline_group.push_back(&tok);
        ++t;
        break;
      case TokKind::BracketClose:
        ++t;
        break;
      case TokKind::EnvClose:
        edits.push_back({tok.pos, tok.len, ""});
        warn(warnings, "line " + std::to_string(tok.line + 1) + ": stray \\end{" + tok.env + "} removed");
        ++t;
        break;
      case TokKind::Dollar2:
      case TokKind::EnvOpen:
      case TokKind::BracketOpen: {
        flush_inline();
        size_t c = t + 1;
        while (c < toks.size() && !closes(tok, toks[c])) ++c;
        if (c == toks.size()) {
          // unterminated: drop the opener and rescan its contents as ordinary text
          if (tok.kind != TokKind::BracketOpen) {
            edits.push_back({tok.pos, tok.len, ""});
          }
          warn(warnings, "line " + std::to_string(tok.line + 1) + ": unterminated display formula left as plain text");
          ++t;
          break;
        }
        if (tok.kind != TokKind::BracketOpen) {
          edits.push_back({tok.pos, tok.len, "\\["});
          edits.push_back({toks[c].pos, toks[c].len, "\\]"});
        }
        for (size_t k = t + 1; k < c; ++k) {
          const TokKind kind = toks[k].kind;
          if (kind == TokKind::Dollar2 || kind == TokKind::EnvOpen || kind == TokKind::EnvClose) {
            edits.push_back({toks[k].pos, toks[k].len, ""});
            warn(warnings, "line " + std::to_string(toks[k].line + 1) + ": nested display delimiter removed");
          }
        }
        t = c + 1;
        break;
      }
    }
  }
  flush_inline();
  return apply_edits(text, std::move(edits));
}

// ---------------------------------------------------------------------------
// Headings

namespace {

// Normalized ATX line, "" for an empty heading, nullopt if `line` is not ATX.
std::optional<std::string> normalize_atx(std::string_view line) {
  size_t i = 0;
  while (i < line.size() && line[i] == ' ') ++i;
  if (i > 3) return std::nullopt;
  size_t level = 0;
  while (i + level < line.size() && line[i + level] == '#') ++level;
  if (level == 0 || level > 6) return std::nullopt;
  const size_t after = i + level;
  if (after < line.size() && line[after] != ' ' && line[after] != '\t') return std::nullopt;

  std::string_view rest = trim(line.substr(after));
  size_t k = rest.size();
  while (k > 0 && rest[k - 1] == '#') --k;
  if (k == 0) {
    rest = {};
  } else if (k < rest.size() && (rest[k - 1] == ' ' || rest[k - 1] == '\t')) {
    rest = trim(rest.substr(0, k));
  }
  if (rest.empty()) return std::string();
  return std::string(level, '#') + " " + std::string(rest);
}

// 1 for "===", 2 for "---", 0 otherwise.
int setext_level(std::string_view line) {
  size_t i = 0;
  while (i < line.size() && line[i] == ' ') ++i;
  if (i > 3 || i >= line.size()) return 0;
  const char marker = line[i];
  if (marker != '=' && marker != '-') return 0;
  while (i < line.size() && line[i] == marker) ++i;
  if (!is_blank(line.substr(i))) return 0;
  return marker == '=' ? 1 : 2;
}

bool is_thematic_break(std::string_view line) {
  const std::string_view t = trim(line);
  if (t.empty()) return false;
  const char marker = t[0];
  if (marker != '-' && marker != '*' && marker != '_') return false;
  size_t count = 0;
  for (char c : t) {
    if (c == marker) {
      ++count;
    } else if (c != ' ' && c != '\t') {
      return false;
    }
  }
  return count >= 3;
}

bool is_list_item(std::string_view t) {
  if (t.empty()) return false;
  if (t[0] == '-' || t[0] == '*' || t[0] == '+') return t.size() == 1 || t[1] == ' ' || t[1] == '\t';
  size_t d = 0;
  while (d < t.size() && d < 9 && t[d] >= '0' && t[d] <= '9') ++d;
  if (d == 0 || d >= t.size() || (t[d] != '.' && t[d] != ')')) return false;
  return d + 1 == t.size() || t[d + 1] == ' ' || t[d + 1] == '\t';
}

// Lines that can be the content of a setext heading.
bool is_paragraph_line(std::string_view line) {
  if (is_blank(line) || is_thematic_break(line)) return false;
  const std::string_view t = trim(line);
  if (t[0] == '>' || is_list_item(t)) return false;
  if (t.starts_with("\\[") || t.starts_with("\\]") || t.starts_with("\\begin{") || t.starts_with("\\end{")) {
    return false;
  }
  return true;
}

}  // namespace

std::string unify_headings(std::string_view text) {
  const CodeLayout code = analyze_code(text);
  const std::vector<bool> shielded = latex_mask(text, code);

  struct OutLine {
    std::string text;
    bool paragraph;
  };
  std::vector<OutLine> out;
  out.reserve(code.lines.size());

  for (size_t li = 0; li < code.lines.size(); ++li) {
    const LineRef& ref = code.lines[li];
    const std::string_view line = text.substr(ref.begin, ref.end - ref.begin);
    const bool inside_latex = ref.begin < text.size() && shielded[ref.begin] && !line.starts_with("\\[") &&
                              !line.starts_with("\\begin{");
    if (code.fenced_line[li] || inside_latex) {
      out.push_back({std::string(line), false});
      continue;
    }
    if (auto atx = normalize_atx(line)) {
      out.push_back({std::move(*atx), false});
      continue;
    }
    if (const int level = setext_level(line)) {
      size_t k = out.size();
      while (k > 0 && out[k - 1].paragraph) --k;
      if (k < out.size()) {
        std::string content;
        for (size_t j = k; j < out.size(); ++j) {
          if (!content.empty()) content += ' ';
          content += trim(out[j].text);
        }
        out.resize(k);
        std::string heading = normalize_atx(std::string(static_cast<size_t>(level), '#') + " " + content).value_or("");
        out.push_back({std::move(heading), false});
        continue;
      }
      // "===" without content is ordinary text; "---" is a thematic break
      out.push_back({std::string(line), level == 1});
      continue;
    }
    out.push_back({std::string(line), is_paragraph_line(line)});
  }

  std::string result;
  result.reserve(text.size());
  for (size_t i = 0; i < out.size(); ++i) {
    if (i) result += '\n';
    result += out[i].text;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Links and images

namespace {

// Parses an inline link destination starting at `open` (which holds '(').
// Returns one past the closing ')' or npos.
size_t parse_inline_destination(std::string_view text, size_t open) {
  size_t i = open + 1;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '<') {
    const size_t close = text.find('>', i + 1);
    if (close == npos || text.substr(i, close - i).find('\n') != npos) return npos;
    i = close + 1;
  } else {
    int depth = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == ' ' || c == '\t' || c == '\n') break;
      if (c == '\\' && i + 1 < text.size()) {
        i += 2;
        continue;
      }
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      ++i;
    }
    if (depth != 0) return npos;
  }
  skip_ws();
  if (i < text.size() && (text[i] == '"' || text[i] == '\'' || text[i] == '(')) {
    const char close_quote = text[i] == '(' ? ')' : text[i];
    const size_t close = text.find(close_quote, i + 1);
    if (close == npos) return npos;
    i = close + 1;
    skip_ws();
  }
  if (i < text.size() && text[i] == ')') return i + 1;
  return npos;
}

// <scheme:...> per CommonMark autolink syntax. Returns one past '>' or npos.
size_t parse_autolink(std::string_view text, size_t open) {
  size_t i = open + 1;
  const size_t scheme_start = i;
  if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) return npos;
  while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '+' ||
                             text[i] == '.' || text[i] == '-')) {
    ++i;
  }
  const size_t scheme_len = i - scheme_start;
  if (scheme_len < 2 || scheme_len > 32 || i >= text.size() || text[i] != ':') return npos;
  ++i;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '>') return i + 1;
    if (c == '<' || c == ' ' || c == '\t' || c == '\n' || static_cast<unsigned char>(c) < 0x20) return npos;
    ++i;
  }
  return npos;
}

// One innermost-first rewriting sweep. Returns true if anything changed.
bool strip_links_once(std::string& text) {
  const CodeLayout code = analyze_code(text);
  const std::vector<bool> shielded = math_mask(text, code);
  std::vector<Edit> edits;

  size_t i = 0;
  while (i < text.size()) {
    if (shielded[i]) {
      ++i;
      continue;
    }
    const char c = text[i];
    if (c == '\\') {
      i += 2;
      continue;
    }
    if (c == '<') {
      const size_t end = parse_autolink(text, i);
      if (end != npos) {
        edits.push_back({i, end - i, ""});
        i = end;
        continue;
      }
      ++i;
      continue;
    }
    if (c != '[') {
      ++i;
      continue;
    }
    // innermost: no unshielded bracket between '[' and ']'
    size_t j = i + 1;
    while (j < text.size()) {
      if (shielded[j]) {
        ++j;
        continue;
      }
      if (text[j] == '\\') {
        j += 2;
        continue;
      }
      if (text[j] == '[' || text[j] == ']') break;
      ++j;
    }
    if (j >= text.size() || text[j] == '[') {
      i = j;
      continue;
    }
    const size_t close = j;
    const bool image = i > 0 && text[i - 1] == '!' && !shielded[i - 1] && !(i > 1 && text[i - 2] == '\\');
    const size_t start = image ? i - 1 : i;
    size_t end = npos;
    if (close + 1 < text.size() && text[close + 1] == '(' && !shielded[close + 1]) {
      end = parse_inline_destination(text, close + 1);
    } else if (close + 1 < text.size() && text[close + 1] == '[' && !shielded[close + 1]) {
      const size_t label_end = text.find(']', close + 2);
      if (label_end != npos) {
        const std::string_view label = std::string_view(text).substr(close + 2, label_end - close - 2);
        if (label.find('[') == npos && label.find('\n') == npos) end = label_end + 1;
      }
    }
    if (end == npos) {
      i = close + 1;
      continue;
    }
    edits.push_back({start, end - start, image ? std::string() : text.substr(i + 1, close - i - 1)});
    i = end;
  }
  if (edits.empty()) return false;
  text = apply_edits(text, std::move(edits));
  return true;
}

// "[id]: destination" lines; footnote definitions ("[^id]:") are kept.
bool is_reference_definition(std::string_view line) {
  size_t i = 0;
  while (i < line.size() && i < 4 && line[i] == ' ') ++i;
  if (i > 3 || i >= line.size() || line[i] != '[') return false;
  if (i + 1 < line.size() && line[i + 1] == '^') return false;
  const size_t close = line.find(']', i + 1);
  if (close == npos || close == i + 1) return false;
  if (line.substr(i + 1, close - i - 1).find('[') != npos) return false;
  if (close + 1 >= line.size() || line[close + 1] != ':') return false;
  return !trim(line.substr(close + 2)).empty();
}

}  // namespace

std::string strip_links_and_images(std::string_view input) {
  std::string text;
  {
    const CodeLayout code = analyze_code(input);
    std::vector<Edit> edits;
    for (size_t li = 0; li < code.lines.size(); ++li) {
      const LineRef& ref = code.lines[li];
      if (code.fenced_line[li] || code.is_opaque(ref.begin)) continue;
      if (is_reference_definition(input.substr(ref.begin, ref.end - ref.begin))) {
        edits.push_back({ref.begin, ref.end - ref.begin, ""});
      }
    }
    text = apply_edits(input, std::move(edits));
  }
  while (strip_links_once(text)) {
  }
  return text;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

struct RowSplit {
  std::vector<std::string> cells;
  bool had_pipe = false;
};

// Splits a pipe-table row on unescaped, unshielded '|'. Leading and trailing
// pipes are optional. Escaped pipes become literal '|'.
RowSplit split_row(std::string_view text, const LineRef& ref, const std::vector<bool>& shielded) {
  size_t b = ref.begin;
  size_t e = ref.end;
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;

  RowSplit row;
  std::string cell;
  std::vector<size_t> pipes;
  for (size_t i = b; i < e; ++i) {
    if (!shielded[i] && text[i] == '\\' && i + 1 < e && text[i + 1] == '|') {
      ++i;
      continue;
    }
    if (!shielded[i] && text[i] == '|') pipes.push_back(i);
  }
  row.had_pipe = !pipes.empty();
  if (!row.had_pipe) {
    row.cells.emplace_back(trim(text.substr(b, e - b)));
    return row;
  }
  size_t start = b;
  size_t first = 0;
  size_t last = pipes.size();
  if (pipes.front() == b) {
    start = b + 1;
    first = 1;
  }
  size_t stop = e;
  if (pipes.back() == e - 1 && last > first) {
    stop = e - 1;
    --last;
  }
  auto emit = [&](size_t from, size_t to) {
    std::string value;
    for (size_t k = from; k < to; ++k) {
      if (!shielded[k] && text[k] == '\\' && k + 1 < to && text[k + 1] == '|') continue;
      value += text[k];
    }
    row.cells.emplace_back(trim(value));
  };
  size_t cursor = start;
  for (size_t p = first; p < last; ++p) {
    emit(cursor, pipes[p]);
    cursor = pipes[p] + 1;
  }
  emit(cursor, stop);
  return row;
}

bool is_delimiter_row(std::string_view line, const RowSplit& row) {
  if (line.find('-') == npos) return false;
  for (char c : line) {
    if (c != '|' && c != ':' && c != '-' && c != ' ' && c != '\t') return false;
  }
  for (const std::string& cell : row.cells) {
    std::string_view t = cell;
    if (!t.empty() && t.front() == ':') t.remove_prefix(1);
    if (!t.empty() && t.back() == ':') t.remove_suffix(1);
    if (t.empty() || t.find_first_not_of('-') != npos) return false;
  }
  return row.had_pipe || row.cells.size() == 1;
}

std::string escape_ampersands(std::string_view cell) {
  std::string out;
  out.reserve(cell.size());
  for (size_t i = 0; i < cell.size(); ++i) {
    if (cell[i] == '&' && (i == 0 || cell[i - 1] != '\\')) out += '\\';
    out += cell[i];
  }
  return out;
}

}  // namespace

std::string convert_md_tables_to_latex(std::string_view text, Warnings* warnings) {
  const CodeLayout code = analyze_code(text);
  const std::vector<bool> shielded = math_mask(text, code);
  const std::vector<bool> in_latex = latex_mask(text, code);
  const auto& lines = code.lines;

  auto line_at = [&](size_t li) { return text.substr(lines[li].begin, lines[li].end - lines[li].begin); };
  auto eligible = [&](size_t li) {
    if (code.fenced_line[li] || is_blank(line_at(li))) return false;
    const size_t b = lines[li].begin;
    if (b < text.size() && in_latex[b]) return false;
    return !normalize_atx(line_at(li)).has_value();
  };

  std::vector<Edit> edits;
  size_t li = 0;
  while (li + 1 < lines.size()) {
    if (!eligible(li) || !eligible(li + 1)) {
      ++li;
      continue;
    }
    const RowSplit header = split_row(text, lines[li], shielded);
    if (!header.had_pipe) {
      ++li;
      continue;
    }
    const RowSplit delimiter = split_row(text, lines[li + 1], shielded);
    if (!is_delimiter_row(line_at(li + 1), delimiter) || delimiter.cells.size() != header.cells.size()) {
      ++li;
      continue;
    }
    const size_t ncols = header.cells.size();
    std::vector<std::vector<std::string>> rows{header.cells};
    size_t end = li + 2;
    while (end < lines.size() && eligible(end)) {
      RowSplit row = split_row(text, lines[end], shielded);
      if (!row.had_pipe) break;
      if (row.cells.size() != ncols) {
        warn(warnings, "line " + std::to_string(end + 1) + ": ragged table row has " +
                           std::to_string(row.cells.size()) + " cells, expected " + std::to_string(ncols));
      }
      if (row.cells.size() > ncols) {
        std::string merged = row.cells[ncols - 1];
        for (size_t k = ncols; k < row.cells.size(); ++k) {
          if (row.cells[k].empty()) continue;
          if (!merged.empty()) merged += ' ';
          merged += row.cells[k];
        }
        row.cells.resize(ncols);
        row.cells.back() = std::move(merged);
      }
      row.cells.resize(ncols);
      rows.push_back(std::move(row.cells));
      ++end;
    }

    std::string latex = "\\begin{tabular}{" + std::string(ncols, 'c') + "} ";
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r) latex += " \\\\ ";
      for (size_t c = 0; c < ncols; ++c) {
        if (c) latex += " & ";
        latex += escape_ampersands(rows[r][c]);
      }
    }
    latex += " \\end{tabular}";
    edits.push_back({lines[li].begin, lines[end - 1].end - lines[li].begin, std::move(latex)});
    li = end;
  }
  return apply_edits(text, std::move(edits));
}

// ---------------------------------------------------------------------------

Standardized standardize(const RawMarkdown& raw, const StandardizerConfig& config) {
  Standardized result;
  std::string text = nfc(canonicalize_newlines(raw.content));
  for (int pass = 0; pass < config.max_passes; ++pass) {
    Warnings* sink = pass == 0 ? &result.warnings : nullptr;
    std::string next = align_formula_delimiters(text, sink, config);
    next = strip_links_and_images(next);
    next = unify_headings(next);
    next = convert_md_tables_to_latex(next, sink);
    if (next == text) break;
    text = std::move(next);
    if (pass + 1 == config.max_passes) {
      result.warnings.push_back("standardization did not reach a fixed point");
    }
  }
  result.text = StandardMarkdown::trusted(std::move(text));
  return result;
}

}  // namespace docgrade
