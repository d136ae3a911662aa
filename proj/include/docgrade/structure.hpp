#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "docgrade/segmenter.hpp"

namespace docgrade {

struct TreeNode {
  std::string label;
  int level = 0;  // heading level for ToC nodes, 0 elsewhere
  std::vector<size_t> children;
};

/// Rooted ordered labeled tree. Node 0 is a virtual root labeled kRootLabel,
/// counted in size().
class StructTree {
 public:
  static constexpr std::string_view kRootLabel = "⟨root⟩";
  static constexpr size_t kRoot = 0;

  StructTree();

  size_t add_child(size_t parent, std::string label, int level = 0);

  const TreeNode& node(size_t id) const { return nodes_[id]; }
  size_t size() const { return nodes_.size(); }

  /// Node ids in preorder, root first.
  std::vector<size_t> preorder() const;

  /// `label(child,child,...)`; a leaf is its bare label. '\', '(', ')' and ','
  /// inside labels are backslash-escaped.
  std::string to_bracket() const;

  friend bool operator==(const StructTree& a, const StructTree& b) { return a.to_bracket() == b.to_bracket(); }

 private:
  std::vector<TreeNode> nodes_;
};

/// Table-of-contents tree: each heading hangs under the nearest preceding
/// heading of strictly smaller level, else under the root. Non-heading units
/// in the input are ignored.
StructTree build_toc(const std::vector<SemanticUnit>& headings);

struct TableParse {
  StructTree tree;
  Warnings warnings;
  bool failed = false;  // unbalanced braces; the tree is not trustworthy
};

/// Accepts a tabular body or a whole \begin{tabular}...\end{tabular}
/// environment. Shape: root -> one "⟨row⟩" node per row -> one node per cell,
/// labeled with the whitespace-collapsed cell text plus "⟨cs=k⟩" / "⟨rs=k⟩"
/// span markers for k > 1. Rule commands and the column spec are dropped;
/// nested tabulars are flattened to their text.
TableParse parse_latex_table(std::string_view table_text);

inline constexpr std::string_view kRowLabel = "⟨row⟩";

}  // namespace docgrade
