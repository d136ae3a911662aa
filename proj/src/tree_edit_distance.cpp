#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "docgrade/metrics.hpp"

namespace docgrade {
namespace {

// Postorder view of a StructTree; indices are 1-based, 0 means "empty forest".
struct PostorderTree {
  std::vector<size_t> label;     // interned label id per postorder index
  std::vector<size_t> leftmost;  // postorder index of the leftmost leaf descendant
  std::vector<size_t> keyroots;  // ascending

  size_t size() const { return label.size() - 1; }
};

PostorderTree index_tree(const StructTree& tree, std::unordered_map<std::string, size_t>& labels,
                         std::vector<std::u32string>& label_text) {
  PostorderTree out;
  out.label.assign(1, 0);
  out.leftmost.assign(1, 0);

  auto intern = [&](const std::string& s) {
    const auto [it, inserted] = labels.emplace(s, label_text.size());
    if (inserted) label_text.push_back(to_code_points(s));
    return it->second;
  };

  // iterative postorder
  struct Frame {
    size_t node;
    size_t next_child;
    size_t first_leaf;
  };
  std::vector<Frame> stack{{StructTree::kRoot, 0, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const TreeNode& node = tree.node(f.node);
    if (f.next_child < node.children.size()) {
      stack.push_back({node.children[f.next_child++], 0, 0});
      continue;
    }
    const size_t index = out.label.size();
    out.label.push_back(intern(node.label));
    const size_t leftmost = node.children.empty() ? index : f.first_leaf;
    out.leftmost.push_back(leftmost);
    stack.pop_back();
    if (!stack.empty() && stack.back().next_child == 1) stack.back().first_leaf = leftmost;
  }

  // a keyroot is the highest node for its leftmost leaf
  std::vector<bool> seen(out.label.size(), false);
  for (size_t i = out.size(); i >= 1; --i) {
    if (!seen[out.leftmost[i]]) {
      seen[out.leftmost[i]] = true;
      out.keyroots.push_back(i);
    }
  }
  std::sort(out.keyroots.begin(), out.keyroots.end());
  return out;
}

class RelabelTable {
 public:
  RelabelTable(const std::vector<std::u32string>& labels, RelabelCost mode)
      : labels_(labels), mode_(mode), n_(labels.size()), cache_(n_ * n_, -1.0) {}

  double operator()(size_t a, size_t b) {
    if (a == b) return 0.0;
    double& slot = cache_[a * n_ + b];
    if (slot < 0.0) {
      slot = mode_ == RelabelCost::Exact ? 1.0 : 1.0 - eds(labels_[a], labels_[b]);
      cache_[b * n_ + a] = slot;
    }
    return slot;
  }

 private:
  const std::vector<std::u32string>& labels_;
  RelabelCost mode_;
  size_t n_;
  std::vector<double> cache_;
};

}  // namespace

double tree_edit_distance(const StructTree& a, const StructTree& b, RelabelCost relabel) {
  std::unordered_map<std::string, size_t> interned;
  std::vector<std::u32string> label_text;
  const PostorderTree t1 = index_tree(a, interned, label_text);
  const PostorderTree t2 = index_tree(b, interned, label_text);
  RelabelTable cost(label_text, relabel);

  const size_t n1 = t1.size();
  const size_t n2 = t2.size();
  const size_t stride = n2 + 1;
  std::vector<double> tree_dist((n1 + 1) * stride, 0.0);
  std::vector<double> forest((n1 + 2) * (n2 + 2), 0.0);

  for (size_t i : t1.keyroots) {
    for (size_t j : t2.keyroots) {
      const size_t li = t1.leftmost[i];
      const size_t lj = t2.leftmost[j];
      // forest indices are offset so that (li - 1, lj - 1) maps to (0, 0)
      const size_t cols = j - lj + 2;
      auto fd = [&](size_t x, size_t y) -> double& { return forest[(x - li + 1) * cols + (y - lj + 1)]; };

      fd(li - 1, lj - 1) = 0.0;
      for (size_t x = li; x <= i; ++x) fd(x, lj - 1) = fd(x - 1, lj - 1) + 1.0;
      for (size_t y = lj; y <= j; ++y) fd(li - 1, y) = fd(li - 1, y - 1) + 1.0;
      for (size_t x = li; x <= i; ++x) {
        for (size_t y = lj; y <= j; ++y) {
          const double del = fd(x - 1, y) + 1.0;
          const double ins = fd(x, y - 1) + 1.0;
          if (t1.leftmost[x] == li && t2.leftmost[y] == lj) {
            const double rel = fd(x - 1, y - 1) + cost(t1.label[x], t2.label[y]);
            const double best = std::min({del, ins, rel});
            fd(x, y) = best;
            tree_dist[x * stride + y] = best;
          } else {
            const double sub = fd(t1.leftmost[x] - 1, t2.leftmost[y] - 1) + tree_dist[x * stride + y];
            fd(x, y) = std::min({del, ins, sub});
          }
        }
      }
    }
  }
  return tree_dist[n1 * stride + n2];
}

double teds(const StructTree& a, const StructTree& b, RelabelCost relabel) {
  const double longest = static_cast<double>(std::max(a.size(), b.size()));
  const double score = 1.0 - tree_edit_distance(a, b, relabel) / longest;
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace docgrade
