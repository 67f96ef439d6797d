#include "bairegames/tree.hpp"

#include <algorithm>

#include "bairegames/errors.hpp"

namespace bairegames::tree {

std::uint64_t level(const TreeNode& t) {
  std::uint64_t n = t.size();
  for (auto d : t) n += d;
  return n;
}

std::pair<TreeNode, TreeNode> successors(const TreeNode& t) {
  if (t.empty()) {
    throw DomainError("successors: the root branches into (0) alone");
  }
  TreeNode minus = t;
  minus.push_back(0);
  TreeNode plus = t;
  plus.back() += 1;
  return {std::move(minus), std::move(plus)};
}

std::pair<TreeNode, std::uint64_t> source(const TreeNode& t) {
  if (t.empty()) {
    throw DomainError("source: the root has no source");
  }
  TreeNode s(t.begin(), t.end() - 1);
  std::uint64_t k = level(s);
  return {std::move(s), k};
}

std::vector<TreeNode> level_nodes(std::uint64_t n) {
  if (n == 0) return {root()};
  // Generate by replaying the successor construction, then order
  // lexicographically; sizes stay small (2^(n-1) nodes).
  std::vector<TreeNode> cur = {TreeNode{0}};
  for (std::uint64_t lvl = 1; lvl < n; ++lvl) {
    std::vector<TreeNode> next;
    next.reserve(cur.size() * 2);
    for (const auto& t : cur) {
      auto [m, p] = successors(t);
      next.push_back(std::move(m));
      next.push_back(std::move(p));
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

bool in_tree_level(const TreeNode& t, std::uint64_t n) {
  if (t.empty()) return n == 0;
  return level(t) == n;
}

std::string node_label(const TreeNode& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  out += ")";
  return out;
}

}  // namespace bairegames::tree
