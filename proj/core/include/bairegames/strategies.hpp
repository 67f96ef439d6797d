#ifndef BAIREGAMES_STRATEGIES_HPP
#define BAIREGAMES_STRATEGIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bairegames/games.hpp"

namespace bairegames::strategies {

using games::GameKind;
using games::Side;
using games::Strategy;
using topology::Point;
using topology::SpacePtr;

struct StrategyOptions {
  std::uint64_t seed = 0;
  // Bounds internal searches (point enumeration scans and the like).
  std::uint64_t fuel = 4096;
  // Gruenhage center for strategies that need one.
  std::optional<Point> center;
};

// Builds a stock strategy by name. Throws ConfigError for names that do not
// exist for the given kind and side, listing what does.
Strategy make_strategy(const std::string& name, GameKind kind, Side side,
                       const SpacePtr& space, const StrategyOptions& opts = {});

std::vector<std::string> strategy_names(GameKind kind, Side side);

// Named factories used directly by the transfer pipelines.

// Walks the point enumeration and dodges one enumerated point per round, so
// the exclusion certificate covers the prefix as deep as the play runs.
Strategy bm_beta_diagonal(const SpacePtr& space);

// Proposes the canonical point of a one-step refinement each round.
Strategy choquet_beta_canonical(const SpacePtr& space);

// Answers with the proposed open unchanged. The weakest legal answer, and
// the one that makes downstream bookkeeping exactly reproducible.
Strategy choquet_alpha_echo(const SpacePtr& space);

}  // namespace bairegames::strategies

#endif
