#include <doctest.h>

#include "docgrade/markup.hpp"
#include "docgrade/report.hpp"
#include "docgrade/segmenter.hpp"
#include "support/corpus.hpp"
#include "support/partition.hpp"

using namespace docgrade;

namespace {

SegmentedDoc seg(const std::string& text) { return segment(StandardMarkdown::trusted(text)); }

SegmentedDoc seg_raw(const std::string& raw) { return segment(standardize({raw, ""}).text); }

std::vector<UnitKind> kinds(const SegmentedDoc& doc) {
  std::vector<UnitKind> out;
  for (const auto& u : doc.units) out.push_back(u.kind);
  return out;
}

// Re-emits each unit with canonical delimiters, keeping the whitespace between units.
std::string render(const SegmentedDoc& doc) {
  const std::string& src = doc.source.str();
  std::string out;
  size_t cursor = 0;
  for (const SemanticUnit& u : doc.units) {
    out += src.substr(cursor, u.span.begin - cursor);
    switch (u.kind) {
      case UnitKind::Heading:
        out += std::string(static_cast<size_t>(u.level), '#') + " " + u.text;
        break;
      case UnitKind::FormulaEmbedded:
        out += "\\(" + u.text + "\\)";
        break;
      case UnitKind::FormulaIsolated:
        out += "\\[" + u.text + "\\]";
        break;
      case UnitKind::Table:
        out += "\\begin{tabular}{c}" + u.text + "\\end{tabular}";
        break;
      case UnitKind::PlainText:
        out += u.text;
        break;
    }
    cursor = u.span.end;
  }
  return out + src.substr(cursor);
}

}  // namespace

TEST_CASE("segmentation example") {
  const SegmentedDoc doc = seg("# A\ntext \\(x\\) more\n\\[y\\]");
  REQUIRE(doc.units.size() == 5);
  CHECK(doc.units[0].kind == UnitKind::Heading);
  CHECK(doc.units[0].level == 1);
  CHECK(doc.units[0].text == "A");
  CHECK(doc.units[1].kind == UnitKind::PlainText);
  CHECK(doc.units[1].text == "text ");
  CHECK(doc.units[2].kind == UnitKind::FormulaEmbedded);
  CHECK(doc.units[2].text == "x");
  CHECK(doc.units[3].kind == UnitKind::PlainText);
  CHECK(doc.units[3].text == " more");
  CHECK(doc.units[4].kind == UnitKind::FormulaIsolated);
  CHECK(doc.units[4].text == "y");
  CHECK(units_of_kind(doc, UnitKind::Heading).size() == 1);
  CHECK(units_of_kind(doc, UnitKind::Table).empty());
  CHECK(partition::problems(doc).empty());
}

TEST_CASE("segmentation edge cases") {
  CHECK(seg("").units.empty());
  CHECK(seg(" \n\n \t").units.empty());

  const std::string table = "\\begin{tabular}{cc} a & b \\\\ 1 & 2 \\end{tabular}";
  const SegmentedDoc one = seg(table);
  REQUIRE(one.units.size() == 1);
  CHECK(one.units[0].kind == UnitKind::Table);
  CHECK(one.units[0].span == Span{0, table.size()});
  CHECK(one.units[0].text == "a & b \\\\ 1 & 2");

  const SegmentedDoc open = seg("x\n\\begin{tabular}{c} a \\\\ b");
  REQUIRE(open.units.size() == 2);
  CHECK(open.units[1].kind == UnitKind::Table);
  CHECK(open.units[1].span.end == open.source.str().size());
  CHECK_FALSE(open.warnings.empty());

  const SegmentedDoc unclosed = seg("\\[ x");
  REQUIRE(unclosed.units.size() == 1);
  CHECK(unclosed.units[0].kind == UnitKind::PlainText);
  CHECK_FALSE(unclosed.warnings.empty());
}

TEST_CASE("recognition precedence") {
  // a table inside a heading line ends the heading
  const SegmentedDoc a = seg("# T \\begin{tabular}{c} x \\end{tabular} tail");
  REQUIRE(a.units.size() == 3);
  CHECK(a.units[0].kind == UnitKind::Heading);
  CHECK(a.units[0].text == "T");
  CHECK(a.units[1].kind == UnitKind::Table);
  CHECK(a.units[2].kind == UnitKind::PlainText);
  // headings outrank embedded formulas: the formula stays in the heading text
  const SegmentedDoc b = seg("## Result \\(x\\)");
  REQUIRE(b.units.size() == 1);
  CHECK(b.units[0].text == "Result \\(x\\)");
  // display brackets mid-line are embedded
  const SegmentedDoc c = seg("so \\[y\\] holds");
  REQUIRE(c.units.size() == 3);
  CHECK(c.units[1].kind == UnitKind::FormulaEmbedded);
  // a tabular inside display brackets is claimed first; the brackets become plain text
  const SegmentedDoc d = seg("\\[\n\\begin{tabular}{c} x \\end{tabular}\n\\]");
  CHECK(units_of_kind(d, UnitKind::Table).size() == 1);
  CHECK(units_of_kind(d, UnitKind::FormulaIsolated).empty());
  // code is never recognized
  const SegmentedDoc e = seg("```\n# not\n\\[x\\]\n```\n`\\(y\\)`");
  REQUIRE(e.units.size() == 1);
  CHECK(e.units[0].kind == UnitKind::PlainText);
  // seven hashes is not a heading
  CHECK(seg("####### x").units[0].kind == UnitKind::PlainText);
}

TEST_CASE("segment JSON") {
  const auto j = to_json(seg("# A\nb"));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["kind"] == "heading");
  CHECK(j[0]["level"] == 1);
  CHECK(j[0]["start"] == 0);
  CHECK(j[0]["end"] == 3);
  CHECK(j[1]["kind"] == "plain_text");
  CHECK_FALSE(j[1].contains("level"));
  CHECK(j[1]["index"] == 1);
}

TEST_CASE("partition property on generated documents") {
  corpus::Rng rng(81);
  corpus::DocShape small;
  small.sections = 2;
  small.subsections = 1;
  small.paragraphs = 1;
  small.words = 15;
  for (int i = 0; i < 1000; ++i) {
    const std::string raw = i % 2 ? corpus::synthetic_document(rng, small) : corpus::random_markdown(rng, 40);
    const SegmentedDoc doc = seg_raw(raw);
    CAPTURE(doc.source.str());
    const auto problems = partition::problems(doc);
    REQUIRE_MESSAGE(problems.empty(), problems.front());
  }
}

TEST_CASE("reclassification is stable under canonical re-rendering") {
  corpus::Rng rng(82);
  corpus::DocShape small;
  small.sections = 2;
  small.words = 12;
  for (int i = 0; i < 200; ++i) {
    const SegmentedDoc doc = seg_raw(corpus::synthetic_document(rng, small));
    const SegmentedDoc again = seg_raw(render(doc));
    CAPTURE(doc.source.str());
    REQUIRE(kinds(again) == kinds(doc));
  }
}
