#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docgrade {

using Warnings = std::vector<std::string>;

/// Markdown as emitted by an arbitrary extraction tool.
struct RawMarkdown {
  std::string content;
  std::string source_label;
};

/// Markdown in the canonical dialect: display math as \[ \], inline math as
/// \( \), ATX headings only, no links or images, tables as single-line
/// LaTeX tabular environments.
class StandardMarkdown {
 public:
  StandardMarkdown() = default;

  /// Wraps text the caller guarantees to be canonical already.
  static StandardMarkdown trusted(std::string content) { return StandardMarkdown(std::move(content)); }

  const std::string& str() const { return content_; }

  friend bool operator==(const StandardMarkdown&, const StandardMarkdown&) = default;

 private:
  explicit StandardMarkdown(std::string content) : content_(std::move(content)) {}
  std::string content_;
};

struct StandardizerConfig {
  /// Display environments rewritten to \[ \]. Extend to cover e.g. align.
  std::vector<std::string> display_environments{"equation", "equation*", "gather",
                                                "gather*",  "multline",  "multline*"};
  /// Upper bound on rule-pipeline passes while searching for the fixed point.
  int max_passes = 6;
};

struct Standardized {
  StandardMarkdown text;
  Warnings warnings;
};

/// NFC + newline canonicalization, then the rewrite rules below, repeated until
/// the text stops changing. Never throws on malformed Markdown; problems are
/// reported as warnings and the offending region is kept as plain text.
Standardized standardize(const RawMarkdown& raw, const StandardizerConfig& config = {});

// Individual rules. Each leaves fenced code blocks and inline code spans alone.

/// $$..$$ and display environments -> \[..\]; per-line leftmost $..$ pairs -> \(..\).
std::string align_formula_delimiters(std::string_view text, Warnings* warnings = nullptr,
                                     const StandardizerConfig& config = {});

/// Setext -> ATX; ATX normalized to "#"*level + " " + text. Empty headings are blanked.
std::string unify_headings(std::string_view text);

/// Drops images and autolinks, reduces inline and reference links to their text,
/// deletes link reference definitions. Math regions are left alone.
std::string strip_links_and_images(std::string_view text);

/// Pipe tables -> "\begin{tabular}{c..c} h & h \\ c & c \end{tabular}" on one line.
std::string convert_md_tables_to_latex(std::string_view text, Warnings* warnings = nullptr);

}  // namespace docgrade
