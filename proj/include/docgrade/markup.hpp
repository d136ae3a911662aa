#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace docgrade {

/// Byte range of one line, excluding its terminating '\n'.
struct LineRef {
  size_t begin = 0;
  size_t end = 0;
};

std::vector<LineRef> split_lines(std::string_view text);

/// Where code lives in a Markdown text. Code is opaque to every rewriting and
/// recognition rule: fenced blocks (fence lines included) and inline code spans
/// (backticks included). Inline spans are closed on the line they open on.
struct CodeLayout {
  std::vector<LineRef> lines;
  std::vector<bool> fenced_line;  // per line
  std::vector<bool> opaque;       // per byte

  bool is_opaque(size_t pos) const { return pos < opaque.size() && opaque[pos]; }
};

CodeLayout analyze_code(std::string_view text);

/// Number of leading spaces (tabs count as one) before the first other byte.
size_t indentation(std::string_view line);

bool is_blank(std::string_view line);

std::string_view trim(std::string_view s);

}  // namespace docgrade
