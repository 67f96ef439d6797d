#ifndef BAIREGAMES_PRODUCT_GAMES_HPP
#define BAIREGAMES_PRODUCT_GAMES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bairegames/krom.hpp"
#include "bairegames/topology.hpp"

namespace bairegames::product {

// Shrink-game machinery over finite products, in two parallel presentations:
// boxes of ground-space elements, and boxes of stems over the derived
// sequence spaces. The transfer maps a beta strategy across the two
// presentations in either direction, and the extractors map surviving plays
// back, coordinate by coordinate.

// A product open constraining finitely many coordinates; the rest are whole.
struct ProductBox {
  std::map<std::size_t, topology::BaseElement> factors;
};

// Its derived-space counterpart: constrained coordinates carry stems.
struct KromBox {
  std::map<std::size_t, krom::DecreasingSeq> stems;
};

class ProductUniverse {
 public:
  explicit ProductUniverse(std::vector<topology::SpacePtr> factors);

  std::size_t arity() const { return factors_.size(); }
  const topology::SpacePtr& factor(std::size_t i) const;

  // Structural validity: indices in range, elements from the right space,
  // stems nonempty and decreasing (stems re-validate on construction, so
  // this is a cheap shape check).
  void require_box(const ProductBox& b) const;
  void require_box(const KromBox& b) const;

  bool box_subset(const ProductBox& inner, const ProductBox& outer) const;
  bool box_subset(const KromBox& inner, const KromBox& outer) const;

  bool box_member(const std::vector<topology::Point>& xs, const ProductBox& b) const;

  // The ground box a stem box denotes after projecting every stem to its
  // final element.
  ProductBox project(const KromBox& b) const;

  ProductBox whole_box() const { return ProductBox{}; }

 private:
  std::vector<topology::SpacePtr> factors_;
};

// Beta strategies at the box level. The chooser sees the opponent replies
// made so far (the strategy's own moves are a function of those), which
// matches the usual composed-play notation and keeps transfers stateless.
struct ProductStrategy {
  std::string name;
  std::function<ProductBox(const std::vector<ProductBox>&)> next;
};

struct KromProductStrategy {
  std::string name;
  std::function<KromBox(const std::vector<KromBox>&)> next;
};

// Canonical beta players used by the exhaustive drivers: shrink every
// constrained factor one step around its canonical point, and constrain one
// fresh coordinate per round while any remain.
ProductStrategy product_beta_canonical(const ProductUniverse& u);
KromProductStrategy krom_beta_canonical(const ProductUniverse& u);

// ---------------------------------------------------------------------------
// The transfer itself.
// ---------------------------------------------------------------------------

// Ground beta strategy -> stem-level beta strategy. Each reply stem is
// projected to its final element, the ground strategy answers, and the
// answer is appended to the replied stems (fresh one-element stems appear at
// newly constrained coordinates). An answer that escapes the replied box is
// reported as IllegalStrategyMove; a stem that fails to nest is an
// InvariantViolation.
KromProductStrategy krom_lift_beta(const ProductUniverse& u, ProductStrategy sigma);

// Stem-level beta strategy -> ground beta strategy. Each ground reply is
// appended to the stems of the stem-level strategy's previous move, the
// stem-level strategy answers, and the answer projects to final elements.
// The stem-level play is replayed from the start on every call, so the
// chooser stays a pure function of the replies; fine for the shallow plays
// this is built for.
ProductStrategy krom_lower_beta(const ProductUniverse& u, KromProductStrategy sigma_star);

// ---------------------------------------------------------------------------
// Finished plays and counterplay extraction.
// ---------------------------------------------------------------------------

// A finished alternating play: beta[0], alpha[0], beta[1], ... with
// beta.size() == alpha.size() or alpha.size()+1.
struct ProductPlay {
  std::vector<ProductBox> beta;
  std::vector<ProductBox> alpha;
};

struct KromPlay {
  std::vector<KromBox> beta;
  std::vector<KromBox> alpha;
};

// Validates every move of a play against the shrink-game rule.
bool play_legal(const ProductUniverse& u, const ProductPlay& p, std::string* why = nullptr);
bool play_legal(const ProductUniverse& u, const KromPlay& p, std::string* why = nullptr);

// From survivors of a stem-level play to a ground tuple: constrained
// coordinates contribute their survivor's witness, unconstrained ones the
// canonical point. Verifies the witness tuple against every projected beta
// box and throws InvariantViolation on a miss; missing survivor entries are
// a PreconditionError.
std::vector<topology::Point> extract_counterplay_lift(
    const ProductUniverse& u, const KromPlay& play,
    std::map<std::size_t, krom::KromPoint> survivors);

// From a surviving ground tuple to derived-space survivors: constrained
// coordinates glue their grown stem into a sequence around x_i, the rest
// ride the whole space. Verifies membership in every beta stem box.
std::map<std::size_t, krom::KromPoint> extract_counterplay_lower(
    const ProductUniverse& u, const KromPlay& star_play, const std::vector<topology::Point>& xs);

// ---------------------------------------------------------------------------
// Exhaustive finite-space drivers.
// ---------------------------------------------------------------------------

// Every alpha reply to `current` from the bounded move menu: the stall, each
// single-coordinate strict shrink through the open lattice, and each way of
// constraining the lowest unconstrained coordinate. Complete for single-
// coordinate progress; multi-coordinate simultaneous shrinks are compositions
// of these across rounds.
std::vector<ProductBox> alpha_reply_menu(const ProductUniverse& u, const ProductBox& current);
std::vector<KromBox> alpha_reply_menu(const ProductUniverse& u, const KromBox& current);

struct DualityReport {
  std::uint64_t plays = 0;
  std::uint64_t lift_moves = 0;
  std::uint64_t extraction_checks = 0;
  // First failure descriptions; empty means the sweep was clean.
  std::vector<std::string> failures;

  bool clean() const { return failures.empty(); }
};

// Walks every alpha-reply sequence to `depth` against the canonical ground
// strategy lifted to stems; checks legality of every lifted move and runs
// witness extraction at every leaf.
DualityReport exhaustive_lift_duality(const ProductUniverse& u, std::size_t depth);

// Same sweep for the lowering direction: canonical stem strategy, ground
// alpha menus, extraction of derived-space survivors at the leaves.
DualityReport exhaustive_lower_duality(const ProductUniverse& u, std::size_t depth);

}  // namespace bairegames::product

#endif
