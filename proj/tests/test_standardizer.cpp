#include <doctest.h>

#include <map>
#include <set>
#include <regex>

#include "docgrade/markup.hpp"
#include "docgrade/segmenter.hpp"
#include "docgrade/standardizer.hpp"
#include "docgrade/unicode.hpp"
#include "support/corpus.hpp"
#include "support/golden.hpp"

using namespace docgrade;

namespace {

std::string std_text(const std::string& raw) { return standardize({raw, "test"}).text.str(); }

Warnings std_warnings(const std::string& raw) { return standardize({raw, "test"}).warnings; }

bool contains(const Warnings& warnings, const std::string& needle) {
  for (const auto& w : warnings) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Forbidden patterns, checked outside code.
std::vector<std::string> invariant_violations(const std::string& out) {
  std::vector<std::string> problems;
  const CodeLayout code = analyze_code(out);
  std::string visible = out;
  for (size_t i = 0; i < visible.size(); ++i) {
    if (code.is_opaque(i)) visible[i] = ' ';
  }
  for (const char* forbidden : {"$$", "\\begin{equation}", "\\begin{gather}", "\\begin{multline}", "\\end{equation}",
                                "\\begin{equation*}", "\\begin{gather*}", "\\begin{multline*}"}) {
    if (visible.find(forbidden) != std::string::npos) problems.push_back(std::string("contains ") + forbidden);
  }
  for (const LineRef& line : code.lines) {
    if (code.fenced_line[&line - code.lines.data()]) continue;
    const std::string_view l(visible.data() + line.begin, line.end - line.begin);
    size_t dollars = 0;
    for (size_t i = 0; i < l.size(); ++i) {
      if (l[i] == '\\') {
        ++i;
        continue;
      }
      if (l[i] == '$') ++dollars;
    }
    if (dollars > 1) problems.push_back("line with paired $: " + std::string(l));
  }
  return problems;
}

}  // namespace

TEST_CASE("standardization goldens are byte-exact and fixed points") {
  const auto cases = golden::load(std::string(DOCGRADE_GOLDEN_DIR) + "/standardize");
  REQUIRE(cases.size() >= 30);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const std::string out = std_text(c.input);
    CHECK(out == c.expected);
    CHECK(std_text(out) == out);
  }
}

TEST_CASE("formula delimiter alignment") {
  CHECK(align_formula_delimiters("$$E=mc^2$$") == "\\[E=mc^2\\]");
  CHECK(align_formula_delimiters("\\begin{equation}a+b\\end{equation}") == "\\[a+b\\]");
  CHECK(align_formula_delimiters("\\begin{align}a\\end{align}") == "\\begin{align}a\\end{align}");
  StandardizerConfig with_align;
  with_align.display_environments.push_back("align");
  CHECK(align_formula_delimiters("\\begin{align}a\\end{align}", nullptr, with_align) == "\\[a\\]");
  CHECK(align_formula_delimiters("\\(x\\) and \\[y\\]") == "\\(x\\) and \\[y\\]");
  CHECK(align_formula_delimiters("$a$\n$b") == "\\(a\\)\n$b");  // pairing never crosses lines
  CHECK(align_formula_delimiters("$$a $$b$$ c$$") == "\\[a \\]b\\[ c\\]");  // sequential pairs
  Warnings nested;
  CHECK(align_formula_delimiters("\\begin{equation}a $$ b\\end{equation}", &nested) == "\\[a  b\\]");
  CHECK(contains(nested, "nested"));

  Warnings w;
  align_formula_delimiters("costs $5", &w);
  CHECK(contains(w, "unmatched $"));
  w.clear();
  align_formula_delimiters("$$ open", &w);
  CHECK(contains(w, "unterminated"));
  w.clear();
  align_formula_delimiters("\\end{gather}", &w);
  CHECK(contains(w, "stray"));
}

TEST_CASE("heading unification") {
  CHECK(unify_headings("Intro\n-----") == "## Intro");
  CHECK(unify_headings("###   Spaced   ###") == "### Spaced");
  CHECK(unify_headings("#NoSpace") == "#NoSpace");
  CHECK(unify_headings("####### seven") == "####### seven");
  CHECK(unify_headings("# a # b #") == "# a # b");
  CHECK(unify_headings("> quote\n---") == "> quote\n---");
  CHECK(unify_headings("\\[\nx\n\\]\n---") == "\\[\nx\n\\]\n---");
  CHECK(unify_headings("```\nT\n===\n```") == "```\nT\n===\n```");
}

TEST_CASE("link and image stripping") {
  CHECK(strip_links_and_images("see [docs](https://x.y)") == "see docs");
  CHECK(strip_links_and_images("![fig](a.png)") == "");
  CHECK(strip_links_and_images("a [b [c](u1)](u2)") == "a b c");
  CHECK(strip_links_and_images("[t][]") == "t");
  CHECK(strip_links_and_images("\\[a](b)") == "\\[a](b)");
  CHECK(strip_links_and_images("[not a link]") == "[not a link]");
  CHECK(strip_links_and_images("`[a](b)`") == "`[a](b)`");
  CHECK(strip_links_and_images("https://bare.example stays") == "https://bare.example stays");
}

TEST_CASE("pipe tables to LaTeX") {
  CHECK(convert_md_tables_to_latex("|a|b|\n|-|-|\n|1|2|") == "\\begin{tabular}{cc} a & b \\\\ 1 & 2 \\end{tabular}");
  CHECK(convert_md_tables_to_latex("no pipes here\n---") == "no pipes here\n---");
  CHECK(convert_md_tables_to_latex("a | b\n|---|---|---|") == "a | b\n|---|---|---|");  // cell counts differ
  Warnings w;
  CHECK(convert_md_tables_to_latex("|a|\n|-|\n|x|y|", &w) == "\\begin{tabular}{c} a \\\\ x y \\end{tabular}");
  CHECK(contains(w, "ragged"));
}

TEST_CASE("idempotence on fuzzed Markdown") {
  corpus::Rng rng(71);
  for (int i = 0; i < 1000; ++i) {
    const std::string raw = corpus::random_markdown(rng, 4 + static_cast<size_t>(i % 60));
    const std::string once = std_text(raw);
    CAPTURE(raw);
    REQUIRE(std_text(once) == once);
    REQUIRE(std_text(raw) == once);  // determinism
  }
}

TEST_CASE("standardized synthetic documents satisfy the canonical-dialect invariants") {
  corpus::Rng rng(72);
  const std::regex image(R"(!\[[^\]\n]*\]\([^)\n]*\))");
  const std::regex link(R"(\[[^\]\n]*\]\([^)\n]*\))");
  for (int i = 0; i < 200; ++i) {
    const std::string out = std_text(corpus::synthetic_document(rng));
    CAPTURE(out);
    REQUIRE(invariant_violations(out).empty());
    REQUIRE_FALSE(std::regex_search(out, image));
    REQUIRE_FALSE(std::regex_search(out, link));
    // no pipe tables: no delimiter row survives
    REQUIRE_FALSE(std::regex_search(out, std::regex(R"((^|\n)\|?\s*:?-+:?\s*(\|\s*:?-+:?\s*)+\|?\s*(\n|$))")));
    // every heading line is canonical ATX
    for (const LineRef& line : split_lines(out)) {
      const std::string l = out.substr(line.begin, line.end - line.begin);
      if (!l.empty() && l[0] == '#') REQUIRE(std::regex_match(l, std::regex(R"(#{1,6} \S.*)")));
    }
  }
}

TEST_CASE("the word multiset survives standardization") {
  // Generated text without URLs or images, so every word must be kept; the
  // rewritten markup contributes only the words filtered below.
  const std::set<std::string> markup = {"begin", "end", "equation", "tabular", "gather", "multline"};
  auto words = [&](const std::string& text) {
    std::map<std::string, int> bag;
    for (const std::string& t : tokenize_words(text)) {
      if (markup.count(t) || t.find_first_not_of('c') == std::string::npos) continue;
      ++bag[t];
    }
    return bag;
  };
  corpus::Rng rng(73);
  corpus::DocShape shape;
  for (int i = 0; i < 200; ++i) {
    std::string raw = corpus::synthetic_document(rng, shape);
    // drop link targets so only visible text remains comparable
    raw = std::regex_replace(raw, std::regex(R"(\]\(https://[^)]*\))"), "](#)");
    CAPTURE(raw);
    REQUIRE(words(std_text(raw)) == words(raw));
  }
}

TEST_CASE("warnings never abort") {
  CHECK_NOTHROW(standardize({std::string("\\begin{equation}\n$$\n|a|\n|-|\n", 18), ""}));
  CHECK(contains(std_warnings("$$ x"), "unterminated"));
  CHECK(std_warnings("plain text").empty());
}
