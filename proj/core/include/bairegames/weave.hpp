#ifndef BAIREGAMES_WEAVE_HPP
#define BAIREGAMES_WEAVE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bairegames/games.hpp"
#include "bairegames/topology.hpp"
#include "bairegames/tree.hpp"

namespace bairegames::transfer {

// The two-space weave: a shrink-game strategy on the X side that burns one
// dense-open oracle per step while growing, on the Y side, a full binary
// tree of opens with anchor points, one tree level per step. The minus
// branch of a node refines inside the node's own open; the plus branch
// refines inside the node's source open intersected with a convergence-
// forcing neighborhood of the source anchor. A companion point-picker
// strategy on the Y side then walks one branch of the recorded tree,
// and the two survivors together thread every scheduled dense open.

struct WeaveConfig {
  topology::SpacePtr x_space;
  topology::SpacePtr y_space;
  topology::BaseElement start_u;  // X-side start
  topology::BaseElement start_v;  // Y-side start
  // One oracle per step; step n performs its dense refinements through
  // schedule[n]. The schedule length caps how deep the X side can play.
  std::vector<topology::OraclePtr> schedule;
  // Membership spot checks per certified containment (pairs sampled from
  // the certified box).
  std::size_t sample_budget = 32;
  // Bounds the branch-index search in the Y-side walker.
  std::uint64_t fuel = 4096;
  // Anchor choice for fresh Y-side opens; default is the canonical point.
  std::function<topology::Point(const topology::BaseElement&)> anchor;
  // Convergence-forcing responder at an anchor; default is the canonical
  // neighborhood responder.
  std::function<topology::WPointStrategy(const topology::Point&)> w_strategy;
};

// What the scenario remembers about a tree node.
struct NodeRecord {
  topology::Point y;       // the anchor chosen inside v
  topology::BaseElement v;
};

// Certification result for one node of one step. "Exact" parts are decided
// by containment on descriptors; "sampled" parts are oracle membership spot
// checks (vacuously true when the oracle offers no membership test).
struct NodeCheck {
  tree::TreeNode node;
  bool minus_exact = false;
  bool minus_sampled = false;
  bool has_plus = false;
  bool plus_exact = false;
  bool plus_sampled = false;

  bool ok() const {
    return minus_exact && minus_sampled && (!has_plus || (plus_exact && plus_sampled));
  }
};

struct StepReport {
  std::size_t step = 0;         // index of the X-side open produced
  std::size_t refinements = 0;  // dense refinements burned in this call
  std::vector<NodeCheck> checks;

  bool all_ok() const;
};

struct ConvergenceCheck {
  tree::TreeNode node;  // a recorded node s+k, checked against anchor(s)
  bool ok = false;
};

struct OracleCheck {
  std::size_t level = 0;
  bool tested = false;  // false when the oracle offers no membership test
  bool ok = false;
};

struct WitnessReport {
  topology::Point x;
  topology::Point y;
  bool in_start_box = false;
  std::vector<OracleCheck> oracle_checks;
  bool certified = false;
};

class WeaveScenario {
 public:
  explicit WeaveScenario(WeaveConfig cfg);

  // Direct drive of the X side: the opening move, then one move per
  // opponent reply. Throws PreconditionError when a reply escapes the
  // previous move or the schedule runs dry, FuelError (naming step and
  // node) when an oracle gives up, InvariantViolation when certification
  // fails.
  topology::BaseElement first_move();
  topology::BaseElement next_move(const topology::BaseElement& reply);

  // Direct drive of the Y side; requires the X side to have run first so
  // the records exist. The walker descends the recorded tree: each reply B
  // moves to the first recorded branch index k >= round with anchor in B.
  topology::PointedOpen y_first_move();
  topology::PointedOpen y_next_move(const topology::BaseElement& reply);

  const std::vector<StepReport>& reports() const { return reports_; }
  const std::map<tree::TreeNode, NodeRecord>& records() const { return records_; }
  const std::vector<topology::BaseElement>& x_chain() const { return x_chain_; }
  const std::vector<topology::BaseElement>& y_chain() const { return y_chain_; }
  const std::vector<std::uint64_t>& branch_indices() const { return branch_; }
  const WeaveConfig& config() const { return cfg_; }

  // Re-checks the convergence bookkeeping over all recorded nodes: the
  // anchor of s+k lies in the k-th responder output at anchor(s).
  std::vector<ConvergenceCheck> certify_convergence() const;

  // Builds the final witness pair from an X-side point and the finished
  // Y-side walk, and replays it through the start box, the whole recorded
  // X-chain and Y-chain, and every oracle membership test up to `depth`.
  // Throws InvariantViolation on any definite miss.
  WitnessReport assemble_witness(const topology::Point& x, std::size_t depth) const;

 private:
  struct PlusTarget {
    topology::BaseElement neighborhood;
    topology::BaseElement target;
  };
  PlusTarget plus_target(const tree::TreeNode& t) const;
  bool sampled_ok(const topology::DenseOpenOracle& oracle, const topology::BaseElement& u,
                  const topology::BaseElement& v) const;

  WeaveConfig cfg_;
  std::map<tree::TreeNode, NodeRecord> records_;
  std::vector<topology::BaseElement> x_chain_;   // the moves this side made
  std::vector<topology::BaseElement> a_chain_;   // the replies consumed
  std::vector<StepReport> reports_;

  // Y-side walker state.
  tree::TreeNode y_node_;
  std::vector<topology::BaseElement> y_chain_;   // W_0, W_1, ...
  std::vector<topology::BaseElement> b_chain_;   // replies consumed
  std::vector<std::uint64_t> branch_;            // chosen branch indices
  bool y_started_ = false;
};

// The scenario as referee-ready strategies. Both are stateful views onto the
// shared scenario: play each in a single game, X side first.
games::Strategy build_sigma_x(const std::shared_ptr<WeaveScenario>& scenario);

// Validates that `x_play` is a shrink-game transcript on the X space whose
// first-mover moves are exactly the scenario's recorded chain and that
// `x_witness` lies in every open of the play, then returns the Y-side
// point-picker strategy.
games::Strategy build_sigma_y(const std::shared_ptr<WeaveScenario>& scenario,
                              const games::Transcript& x_play,
                              const topology::Point& x_witness);

}  // namespace bairegames::transfer

#endif
