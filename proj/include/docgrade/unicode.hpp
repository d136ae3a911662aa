#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docgrade {

/// Decodes UTF-8 into Unicode scalar values. Malformed sequences decode to U+FFFD.
std::u32string to_code_points(std::string_view utf8);
std::string to_utf8(std::u32string_view code_points);

/// NFC normalization. Invalid UTF-8 is repaired (U+FFFD) as a side effect.
std::string nfc(std::string_view utf8);

/// Rewrites "\r\n" and lone "\r" to "\n".
std::string canonicalize_newlines(std::string_view text);

bool is_whitespace(char32_t c);

/// Text in the comparison form used by every string metric: NFC, "\n" line
/// endings, each whitespace run reduced to one character ("\n" if the run held
/// a line break, otherwise a space), no leading or trailing whitespace.
class NormalizedText {
 public:
  NormalizedText() = default;

  static NormalizedText from(std::string_view raw);

  const std::string& str() const { return content_; }
  bool empty() const { return content_.empty(); }

  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;

 private:
  explicit NormalizedText(std::string content) : content_(std::move(content)) {}
  std::string content_;
};

/// Unicode word tokens: maximal runs of letters, digits and combining marks,
/// lowercased. Everything else separates tokens and is discarded.
std::vector<std::string> tokenize_words(std::string_view utf8);

}  // namespace docgrade
