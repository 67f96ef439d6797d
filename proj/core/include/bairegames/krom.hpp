#ifndef BAIREGAMES_KROM_HPP
#define BAIREGAMES_KROM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bairegames/topology.hpp"

namespace bairegames::krom {

// The derived space whose points are decreasing sequences of nonempty base
// elements with a common point, and whose basic opens are finite-prefix
// agreement classes. Index convention throughout: a sequence of length n is
// defined on 0..n-1, and the basic open of a stem of length n constrains
// exactly those entries.

// A finite decreasing chain of base elements, never empty.
struct DecreasingSeq {
  topology::SpacePtr space;
  std::vector<topology::BaseElement> elems;

  std::size_t size() const { return elems.size(); }
  const topology::BaseElement& at(std::size_t k) const { return elems.at(k); }
  const topology::BaseElement& last() const { return elems.back(); }
};

// Validating constructors. Nesting may be non-strict.
DecreasingSeq make_decreasing(topology::SpacePtr space,
                              std::vector<topology::BaseElement> elems);
DecreasingSeq extend(DecreasingSeq seq, topology::BaseElement next);
DecreasingSeq prefix_of(const DecreasingSeq& seq, std::size_t len);

// Rule generating the continuation of a sequence past its materialized
// prefix. The token identifies the rule for the equality judgement in
// ultradist: rules must be pure functions of (witness, prefix so far), so
// equal tokens plus equal state imply equal continuations forever.
struct TailRule {
  std::string token;
  std::function<topology::BaseElement(const topology::Space&, const topology::Point&,
                                      const std::vector<topology::BaseElement>&)>
      next;
};

// Repeats the final element forever.
TailRule constant_tail();
// Applies space.refine(witness, last, 1) forever: a canonical strictly
// shrinking continuation pinned to the witness.
TailRule refine_tail();

// A point of the derived space: lazily materialized elements plus the common
// point that witnesses the nonempty intersection. Materialization is
// single-writer: share instances across threads only after materializing as
// deep as anyone will read.
class KromPoint {
 public:
  KromPoint(DecreasingSeq prefix, TailRule tail, topology::Point witness);

  const topology::SpacePtr& space() const { return prefix_.space; }
  const topology::Point& witness() const { return witness_; }
  const std::string& tail_token() const { return tail_.token; }

  // Materializes through index k and returns that element, revalidating the
  // chain and witness invariants on each extension.
  const topology::BaseElement& at(std::size_t k);

  std::size_t materialized() const { return prefix_.size(); }

  // The first `len` elements as a stem (materializing as needed).
  DecreasingSeq stem(std::size_t len);

 private:
  DecreasingSeq prefix_;
  TailRule tail_;
  topology::Point witness_;
};

// The canonical point of the derived space over `space`: starts at the whole
// space and shrinks around `center` by the refine rule.
KromPoint canonical_krom_point(const topology::SpacePtr& space, const topology::Point& center);

// A basic open [stem]: all sequences whose prefix equals the stem.
struct KromBasicOpen {
  DecreasingSeq stem;

  std::size_t size() const { return stem.size(); }
};

KromBasicOpen make_basic_open(DecreasingSeq stem);

// [g] subset-of [f] holds exactly when g extends f entrywise.
bool basic_subset(const KromBasicOpen& g, const KromBasicOpen& f);

// [g] and [f] are disjoint exactly when the stems are incompatible: neither
// extends the other, which forces a difference within the shorter length.
bool basic_disjoint(const KromBasicOpen& g, const KromBasicOpen& f);

// Membership of a point in a basic open (materializes the point's prefix).
bool basic_member(KromPoint& f, const KromBasicOpen& g);

// ---------------------------------------------------------------------------
// Ultrametric structure.
// ---------------------------------------------------------------------------

// Either the exact distance, or the report that the distance is at most
// `value` (= 2^-fuel) because no difference appeared within the budget and
// the tails could not be judged equal.
struct UltraDistance {
  bool exact = true;
  Rational value;
};

// 2^-(first differing index); exact 0 when the sequences are judged equal
// (identical materialized data, witnesses, and tail-rule tokens).
UltraDistance ultradist(KromPoint& f, KromPoint& g, std::size_t fuel);

// ---------------------------------------------------------------------------
// Base-of-neighborhoods certification.
// ---------------------------------------------------------------------------

// Evidence that a sequence is a neighborhood base at its witness: for each
// k < depth an index j(k), strictly increasing, with elems(j(k)) inside the
// k-th canonical neighborhood of the witness.
struct K0Certificate {
  topology::Point witness;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> evidence;
};

// Searches for the evidence, scanning at most `fuel` indices past the
// previous hit for each k. Throws NotCertifiedAtDepth(k) on failure.
K0Certificate k0_certify(KromPoint& f, std::size_t depth, std::size_t fuel);

// Re-checks a certificate against the point it claims to certify.
bool k0_verify(KromPoint& f, const K0Certificate& cert, std::size_t depth);

// ---------------------------------------------------------------------------
// Pi-base countability mechanism.
// ---------------------------------------------------------------------------

// One step of the countable-in-itself pi-base construction: append the
// space's ccc witness sub-open of the final element.
DecreasingSeq ccc_pi_base_step(const DecreasingSeq& f);

// Checks the projection law behind the countable pi-base argument: given
// stems extending f0 with pairwise disjoint basic opens, do their final
// elements stay pairwise disjoint inside f0's final element? Preconditions
// (extension and stem incompatibility) are enforced; the projection verdict
// is returned, with the first offending pair described in *why on false.
bool disjoint_family_projection(const KromBasicOpen& f0,
                                std::vector<KromBasicOpen> family, std::string* why);

// A family of `count` stems below f0 whose basic opens are pairwise disjoint
// by construction: f0's final element is split into disjoint pieces, each
// extended a seed-chosen number of extra refinement steps.
std::vector<KromBasicOpen> generate_disjoint_family(const KromBasicOpen& f0, std::size_t count,
                                                    std::uint64_t seed);

// ---------------------------------------------------------------------------
// Density mechanism: certified tails glue below any stem.
// ---------------------------------------------------------------------------

// The sequence running through h and continuing with g, which requires
// g(0) inside h's final element. The result's witness is g's witness and its
// base-evidence indices are g's shifted by |h|.
KromPoint splice_below(const DecreasingSeq& h, KromPoint g);

}  // namespace bairegames::krom

#endif
