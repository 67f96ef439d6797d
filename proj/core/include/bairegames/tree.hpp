#ifndef BAIREGAMES_TREE_HPP
#define BAIREGAMES_TREE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bairegames::tree {

// Nodes of the binary splitting tree that schedules refinement work: a node
// is a finite digit string, the root is the empty string. Each non-root node
// t has exactly two successors,
//   minus(t) = t with 0 appended,
//   plus(t)  = t with its last digit incremented,
// and the levels are T_0 = {root}, T_1 = {(0)}, T_{n+1} = successors of T_n.
// A string sits at level |t| + sum(t), which makes membership and level
// computation closed-form; tests cross-check against literal replay.
using TreeNode = std::vector<std::uint32_t>;

inline TreeNode root() { return {}; }

// Level of a node: 0 for the root, |t| + sum of digits otherwise.
std::uint64_t level(const TreeNode& t);

// The (minus, plus) successor pair. Throws DomainError for the root, whose
// sole successor is (0).
std::pair<TreeNode, TreeNode> successors(const TreeNode& t);

// The source of a non-root node: the pair (s, k) with s the node minus its
// last digit and k = level(s), satisfying t = s followed by level(t)-k-1.
// Throws DomainError for the root.
std::pair<TreeNode, std::uint64_t> source(const TreeNode& t);

// All nodes of level n in canonical (lexicographic) order. |T_0| = |T_1| = 1
// and |T_{n+1}| = 2^n for n >= 1.
std::vector<TreeNode> level_nodes(std::uint64_t n);

// Membership by the closed form above.
bool in_tree_level(const TreeNode& t, std::uint64_t n);

// Display form "(0,1)"; "()" for the root.
std::string node_label(const TreeNode& t);

}  // namespace bairegames::tree

#endif
