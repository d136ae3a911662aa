#include "docgrade/markup.hpp"

namespace docgrade {

std::vector<LineRef> split_lines(std::string_view text) {
  std::vector<LineRef> lines;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      lines.push_back({start, i});
      start = i + 1;
    }
  }
  if (start < text.size() || text.empty() || text.back() == '\n') lines.push_back({start, text.size()});
  return lines;
}

size_t indentation(std::string_view line) {
  size_t n = 0;
  while (n < line.size() && (line[n] == ' ' || line[n] == '\t')) ++n;
  return n;
}

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (b < e && space(s[b])) ++b;
  while (e > b && space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

namespace {

struct Fence {
  char marker = 0;
  size_t length = 0;
};

// An opening fence: up to three spaces, then three or more '`' or '~'. A
// backtick fence's info string may not contain backticks.
bool parse_fence_open(std::string_view line, Fence& fence) {
  size_t i = 0;
  while (i < line.size() && i < 4 && line[i] == ' ') ++i;
  if (i > 3 || i >= line.size()) return false;
  const char marker = line[i];
  if (marker != '`' && marker != '~') return false;
  size_t run = 0;
  while (i + run < line.size() && line[i + run] == marker) ++run;
  if (run < 3) return false;
  if (marker == '`' && line.substr(i + run).find('`') != std::string_view::npos) return false;
  fence = {marker, run};
  return true;
}

bool is_fence_close(std::string_view line, const Fence& fence) {
  size_t i = 0;
  while (i < line.size() && i < 4 && line[i] == ' ') ++i;
  if (i > 3) return false;
  size_t run = 0;
  while (i + run < line.size() && line[i + run] == fence.marker) ++run;
  return run >= fence.length && is_blank(line.substr(i + run));
}

void mark_inline_spans(std::string_view text, const LineRef& line, std::vector<bool>& opaque) {
  size_t i = line.begin;
  while (i < line.end) {
    if (text[i] != '`') {
      ++i;
      continue;
    }
    size_t run = 0;
    while (i + run < line.end && text[i + run] == '`') ++run;
    if (i > line.begin && text[i - 1] == '\\') {
      // escaped backtick is literal; the rest of the run may still open a span
      ++i;
      continue;
    }
    size_t j = i + run;
    size_t close = std::string_view::npos;
    while (j < line.end) {
      if (text[j] != '`') {
        ++j;
        continue;
      }
      size_t other = 0;
      while (j + other < line.end && text[j + other] == '`') ++other;
      if (other == run) {
        close = j;
        break;
      }
      j += other;
    }
    if (close == std::string_view::npos) {
      i += run;
      continue;
    }
    for (size_t k = i; k < close + run; ++k) opaque[k] = true;
    i = close + run;
  }
}

}  // namespace

CodeLayout analyze_code(std::string_view text) {
  CodeLayout layout;
  layout.lines = split_lines(text);
  layout.fenced_line.assign(layout.lines.size(), false);
  layout.opaque.assign(text.size(), false);

  bool in_fence = false;
  Fence fence;
  for (size_t li = 0; li < layout.lines.size(); ++li) {
    const LineRef& line = layout.lines[li];
    const std::string_view content = text.substr(line.begin, line.end - line.begin);
    if (in_fence) {
      layout.fenced_line[li] = true;
      if (is_fence_close(content, fence)) in_fence = false;
    } else if (parse_fence_open(content, fence)) {
      layout.fenced_line[li] = true;
      in_fence = true;
    }
    if (layout.fenced_line[li]) {
      // the line break belongs to the block too
      const size_t stop = line.end < text.size() ? line.end + 1 : line.end;
      for (size_t k = line.begin; k < stop; ++k) layout.opaque[k] = true;
    } else {
      mark_inline_spans(text, line, layout.opaque);
    }
  }
  return layout;
}

}  // namespace docgrade
