#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "docgrade/standardizer.hpp"

namespace docgrade {

enum class UnitKind { Heading, FormulaEmbedded, FormulaIsolated, Table, PlainText };

std::string_view to_string(UnitKind kind);

/// Half-open byte interval into the standardized text.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct SemanticUnit {
  UnitKind kind = UnitKind::PlainText;
  int level = 0;  // 1..6 for headings, 0 otherwise
  /// Heading text without the '#' run, formula body without delimiters,
  /// tabular body without the column spec, or the plain text itself.
  std::string text;
  Span span;  // delimiters included
  size_t index = 0;
};

struct SegmentedDoc {
  StandardMarkdown source;
  std::vector<SemanticUnit> units;
  Warnings warnings;
};

/// Recognition precedence: Table > FormulaIsolated > Heading > FormulaEmbedded,
/// whatever remains is PlainText. Code (fenced or inline) is never recognized
/// as anything but plain text.
SegmentedDoc segment(const StandardMarkdown& doc);

std::vector<SemanticUnit> units_of_kind(const SegmentedDoc& doc, UnitKind kind);

}  // namespace docgrade
