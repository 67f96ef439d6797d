#ifndef BAIREGAMES_BCO_LOWER_HPP
#define BAIREGAMES_BCO_LOWER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bairegames/games.hpp"
#include "bairegames/krom.hpp"
#include "bairegames/topology.hpp"

namespace bairegames::transfer {

// The point-open game played on the space of certified decreasing sequences,
// and its descent to the ground space. A first-mover move up there is a
// certified point f together with a cut m >= 1, standing for the pair
// (f, class of certified sequences agreeing with f below m). The opponent
// replies with a deeper stem of the same sequence, so a reply is just a
// DecreasingSeq extending the move's stem.

struct SeqGameMove {
  krom::KromPoint point;
  std::size_t cut = 1;
};

// A first mover on the sequence space. The chooser sees the stems the
// opponent has fed back so far; stems grow strictly across rounds.
struct SeqGameStrategy {
  std::string name;
  std::function<SeqGameMove(const std::vector<krom::DecreasingSeq>&)> next;
};

// Canonical first mover: opens at the canonical certified point of the
// space, then keeps answering a fed stem by one refine step around the
// stem's canonical point, cutting at the full extended length.
SeqGameStrategy seq_beta_canonical(const topology::SpacePtr& space);

// Drives the point-open game on the ground space by bookkeeping a parallel
// game on the sequence space: each ground move is (witness of f_k, V_k)
// where V_k is the cut element of f_k or a strictly smaller base element
// around the witness; each ground reply U_k is absorbed by probing f_k for
// a deep enough element inside U_k and feeding that stem back upstairs.
class BcoDescent {
 public:
  BcoDescent(topology::SpacePtr space, SeqGameStrategy sigma_star, std::uint64_t fuel = 4096);

  // Throws IllegalStrategyMove when the upstairs strategy breaks the stem
  // agreement or cut monotonicity, FuelError when no element of f_k fits
  // inside the reply within fuel, UnsupportedSpaceError when the strictly
  // smaller base element required around a non-singleton cut does not
  // exist, and NotCertifiedAtDepth when an upstairs point fails its
  // neighborhood-base spot check.
  topology::PointedOpen first_move();
  topology::PointedOpen next_move(const topology::BaseElement& reply);

  struct Round {
    krom::KromPoint point;          // f_k
    std::size_t cut = 0;            // the move's cut m_k
    std::size_t probe = 0;          // n_k, set once the next reply is consumed
    bool probed = false;
    topology::Point x;
    topology::BaseElement v;
    bool singleton = false;         // which branch produced v
  };
  const std::vector<Round>& rounds() const { return rounds_; }
  const std::vector<krom::DecreasingSeq>& fed_stems() const { return fed_; }

  // The glued sequence: elements of f_k on [m_{k-1}, m_k) over all rounds,
  // continued by a constant tail, with `survivor` as witness. Validates the
  // agreement law (the glued prefix matches every f_k below its cut) and
  // membership in the class of every fed stem.
  krom::KromPoint glue(const topology::Point& survivor);

 private:
  topology::BaseElement pick_v(krom::KromPoint& f, std::size_t cut, const topology::Point& x,
                               bool* singleton) const;
  void check_upstairs_move(SeqGameMove& move, std::size_t min_cut);

  topology::SpacePtr space_;
  SeqGameStrategy sigma_star_;
  std::uint64_t fuel_;
  std::vector<krom::DecreasingSeq> fed_;
  std::vector<Round> rounds_;
};

// Referee-ready wrapper around a shared descent.
games::Strategy bco_ch_lower(const std::shared_ptr<BcoDescent>& descent);

}  // namespace bairegames::transfer

#endif
