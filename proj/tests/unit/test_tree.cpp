#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bairegames/errors.hpp"
#include "bairegames/tree.hpp"

using namespace bairegames;
using namespace bairegames::tree;

namespace {

// Literal replay of the level recursion, independent of the closed form:
// T_1 = {(0)}, and T_{n+1} collects both successors of every node of T_n.
std::vector<std::vector<TreeNode>> replay_levels(std::uint64_t depth) {
  std::vector<std::vector<TreeNode>> levels(depth + 1);
  levels[0] = {root()};
  if (depth >= 1) levels[1] = {TreeNode{0}};
  for (std::uint64_t n = 1; n < depth; ++n) {
    for (const TreeNode& t : levels[n]) {
      TreeNode minus = t;
      minus.push_back(0);
      TreeNode plus = t;
      plus.back() += 1;
      levels[n + 1].push_back(minus);
      levels[n + 1].push_back(plus);
    }
    std::sort(levels[n + 1].begin(), levels[n + 1].end());
  }
  return levels;
}

}  // namespace

TEST_CASE("levels match the literal replay through depth 13") {
  auto replay = replay_levels(13);
  for (std::uint64_t n = 0; n <= 13; ++n) {
    CAPTURE(n);
    auto engine = level_nodes(n);
    std::sort(engine.begin(), engine.end());
    CHECK(engine == replay[n]);
    for (const TreeNode& t : engine) {
      CHECK(level(t) == n);
      CHECK(in_tree_level(t, n));
      if (n > 0) CHECK_FALSE(in_tree_level(t, n - 1));
    }
  }
  // |T_{n+1}| = 2^n, the refinement count the weave burns per step.
  for (std::uint64_t n = 0; n <= 12; ++n) {
    CHECK(level_nodes(n + 1).size() == 1ull << n);
  }
}

TEST_CASE("successor and source invert each other") {
  auto replay = replay_levels(12);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (const TreeNode& t : replay[n]) {
      auto [minus, plus] = successors(t);
      TreeNode expect_minus = t;
      expect_minus.push_back(0);
      TreeNode expect_plus = t;
      expect_plus.back() += 1;
      CHECK(minus == expect_minus);
      CHECK(plus == expect_plus);
      CHECK(level(minus) == n + 1);
      CHECK(level(plus) == n + 1);

      // s of the minus child is t itself; s of the plus child is s of t.
      CHECK(source(minus).first == t);
      CHECK(source(minus).second == n);
      if (n > 1 || t.back() > 0) {
        CHECK(source(plus).first == source(t).first);
      } else {
        CHECK(source(plus).first == root());
      }

      // The digit identity: t equals its source followed by level(t)-k-1.
      auto [s, k] = source(t);
      CHECK(k == level(s));
      TreeNode rebuilt = s;
      rebuilt.push_back(static_cast<std::uint32_t>(level(t) - k - 1));
      CHECK(rebuilt == t);
    }
  }
  CHECK_THROWS_AS(successors(root()), DomainError);
  CHECK_THROWS_AS(source(root()), DomainError);
}

TEST_CASE("node labels") {
  CHECK(node_label(root()) == "()");
  CHECK(node_label(TreeNode{0}) == "(0)");
  CHECK(node_label(TreeNode{0, 1}) == "(0,1)");
  CHECK(node_label(TreeNode{2, 0, 3}) == "(2,0,3)");
}
