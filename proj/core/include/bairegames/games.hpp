#ifndef BAIREGAMES_GAMES_HPP
#define BAIREGAMES_GAMES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bairegames/topology.hpp"

namespace bairegames::games {

using topology::BaseElement;
using topology::Point;
using topology::PointedOpen;
using topology::SpacePtr;

enum class GameKind {
  BanachMazur,   // both players shrink opens; the chain must nest
  StrongChoquet, // the point player proposes (x, V), the open player answers
                 // with U between x and V
  Gruenhage      // the center player offers neighborhoods of a fixed point,
                 // the other player picks points inside them
};

enum class Side { Beta, Alpha, PlayerOne, PlayerTwo };

const char* kind_name(GameKind k);
const char* side_name(Side s);

// One move: an open set (Banach-Mazur both sides, Choquet answer, Gruenhage
// neighborhood), a pointed open (Choquet proposal), or a bare point
// (Gruenhage pick).
using Move = std::variant<BaseElement, PointedOpen, Point>;

struct GameSetup {
  GameKind kind = GameKind::BanachMazur;
  SpacePtr space;
  // Gruenhage games revolve around a fixed center; ignored by the others.
  std::optional<Point> center;
};

// Moves in play order; even indices belong to the first mover (beta for the
// shrink games, the center player for Gruenhage).
struct History {
  GameSetup setup;
  std::vector<Move> moves;

  std::size_t round_of_next() const { return moves.size() / 2; }
  Side side_of_next() const;
};

// The side moving at slot i of a game of this kind.
Side side_at(GameKind kind, std::size_t index);

// Empty when appending `move` to `history` is legal, otherwise the reason.
std::optional<std::string> illegal_reason(const History& history, const Move& move);

bool legal_move(const History& history, const Move& move);

// Appends after revalidating; throws IllegalStrategyMove on rejection.
void append_checked(History& history, Move move);

// Every open set mentioned by the history, in play order (pointed opens
// contribute their open part).
std::vector<const BaseElement*> opens_in_play(const History& history);

// ---------------------------------------------------------------------------
// Strategies. Choosers are deterministic functions of the visible history;
// any randomness enters through an explicit seed at construction time. The
// optional witness hook lets a strategy assert the point it has been
// threading through its own moves; the referee validates the claim against
// the whole history before certifying.
// ---------------------------------------------------------------------------

struct Strategy {
  std::string name;
  GameKind kind = GameKind::BanachMazur;
  Side side = Side::Beta;
  std::function<Move(const History&)> choose;
  std::function<std::optional<Point>(const History&)> witness_claim;  // may be null
};

// The opponent-visible part of a history for a given side: the subsequence
// of moves made by the other side. Stock strategies consult only this view,
// matching the usual strategy signatures for these games.
std::vector<Move> opponent_moves(const History& history, Side side);

// ---------------------------------------------------------------------------
// Outcomes. Adjudication is depth-bounded and certificate-driven:
//   AlphaCertified  a concrete point, threaded by the alpha side or locked
//                   by a singleton in play, verified to lie in every open;
//   BetaCertified   per-point exclusion evidence covering the enumeration
//                   prefix of length >= depth: entry (k, slot) says the
//                   k-th enumerated point misses the open played at slot;
//   UndecidedAtDepth neither certificate exists at this depth.
// ---------------------------------------------------------------------------

struct AlphaCertified {
  Point witness;
};

struct BetaCertified {
  std::uint64_t prefix = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> exclusions;  // (point index, move slot)
};

struct UndecidedAtDepth {};

using Outcome = std::variant<AlphaCertified, BetaCertified, UndecidedAtDepth>;

const char* outcome_name(const Outcome& o);

// Convergence diagnostics for Gruenhage runs: for each pick index k, the
// deepest canonical neighborhood of the center containing every pick from k
// onward (capped by the run depth). Not a winner claim.
struct ConvergenceDiagnostics {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> tail_depth;
};

struct Transcript {
  History history;
  std::size_t depth = 0;  // full rounds actually played
  Outcome outcome;
  std::optional<ConvergenceDiagnostics> diagnostics;
};

// Computes the outcome for a finished history, consulting the alpha-side
// strategy's witness hook when present.
Outcome adjudicate(const History& history, std::size_t depth, const Strategy* alpha);

// Plays `depth` rounds (two moves each), validating every move. Strategy
// errors propagate; illegal moves raise IllegalStrategyMove naming side and
// round. The observer, when set, sees each move as it is accepted.
using MoveObserver = std::function<void(std::size_t round, Side, const Move&)>;

Transcript run_game(const GameSetup& setup, const Strategy& first, const Strategy& second,
                    std::size_t depth, const MoveObserver& observe = {});

// Re-validates a transcript move by move from scratch.
bool replay_legal(const Transcript& t, std::string* why = nullptr);

// Re-verifies the outcome certificate against the history.
bool verify_certificate(const Transcript& t, std::string* why = nullptr);

// Gruenhage wrapper: builds the center player from convergence-forcing data
// and attaches diagnostics to the transcript.
Transcript gruenhage_run(const SpacePtr& space, const topology::WPointStrategy& w,
                         const Strategy& replier, std::size_t depth);

// Dense-open intersection on a finite lattice, by enumeration: intersects
// all dense opens and checks the result is dense. True on every finite
// space; exists to validate the machinery against an exhaustive oracle.
bool finite_space_baire_oracle(const SpacePtr& space);

}  // namespace bairegames::games

#endif
