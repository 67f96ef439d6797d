#include "bairegames/strategies.hpp"

#include <random>
#include <sstream>

#include "bairegames/errors.hpp"

namespace bairegames::strategies {

using games::History;
using games::Move;
using topology::BaseElement;
using topology::PointedOpen;

namespace {

// Last open set on the table, or the whole space before any move.
BaseElement table_open(const SpacePtr& space, const History& h) {
  if (h.moves.empty()) return space->whole();
  if (const auto* e = std::get_if<BaseElement>(&h.moves.back())) return *e;
  return std::get<PointedOpen>(h.moves.back()).open;
}

// Fresh generator per decision point, so strategies are pure functions of
// (seed, position) and replays cannot drift.
std::mt19937_64 rng_at(std::uint64_t seed, const History& h) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull + h.moves.size() + 1);
}

Strategy base(std::string name, GameKind kind, Side side) {
  Strategy s;
  s.name = std::move(name);
  s.kind = kind;
  s.side = side;
  return s;
}

// Canonical point of the last answer this alpha gave; valid as a witness
// because the chain of opens is decreasing, so the deepest open sits inside
// all of them.
std::optional<Point> pick_of_last_answer(const SpacePtr& space, const History& h) {
  if (h.moves.empty() || h.moves.size() % 2 != 0) return std::nullopt;
  const auto* last = std::get_if<BaseElement>(&h.moves.back());
  if (!last) return std::nullopt;
  return space->pick_point(*last);
}

// --- Banach-Mazur ----------------------------------------------------------

Strategy bm_shrink(const SpacePtr& space, GameKind kind, Side side) {
  Strategy s = base("shrink", kind, side);
  s.choose = [space](const History& h) -> Move {
    BaseElement u = table_open(space, h);
    return space->refine(space->pick_point(u), u, 1);
  };
  return s;
}

Strategy bm_alpha_identity(const SpacePtr& space) {
  Strategy s = base("identity", GameKind::BanachMazur, Side::Alpha);
  s.choose = [space](const History& h) -> Move { return table_open(space, h); };
  return s;
}

Strategy bm_alpha_halver(const SpacePtr& space) {
  Strategy s = base("halver", GameKind::BanachMazur, Side::Alpha);
  s.choose = [space](const History& h) -> Move {
    BaseElement u = table_open(space, h);
    if (auto halves = topology::split_element(*space, u, 2)) {
      // Splitting drops the cut point, so pieces may fall outside u only by
      // its boundary; they are still inside u, which is all legality needs.
      return (*halves)[0];
    }
    return space->refine(space->pick_point(u), u, 1);
  };
  return s;
}

Strategy bm_random(const SpacePtr& space, Side side, std::uint64_t seed) {
  Strategy s = base("random", GameKind::BanachMazur, side);
  s.choose = [space, seed](const History& h) -> Move {
    auto rng = rng_at(seed, h);
    BaseElement u = table_open(space, h);
    auto samples = space->sample_points(u, 3);
    const Point& x = samples[rng() % samples.size()];
    return space->refine(x, u, 1 + rng() % 2);
  };
  return s;
}

// --- Strong Choquet ---------------------------------------------------------

Strategy ch_beta_random(const SpacePtr& space, std::uint64_t seed) {
  Strategy s = base("random", GameKind::StrongChoquet, Side::Beta);
  s.choose = [space, seed](const History& h) -> Move {
    auto rng = rng_at(seed, h);
    BaseElement u = table_open(space, h);
    auto samples = space->sample_points(u, 3);
    const Point& x = samples[rng() % samples.size()];
    BaseElement v = space->refine(x, u, 1 + rng() % 2);
    return topology::make_pointed_open(*space, x, v);
  };
  return s;
}

Strategy ch_alpha_refiner(const SpacePtr& space, bool claims) {
  Strategy s = base(claims ? "refiner" : "silent-refiner", GameKind::StrongChoquet,
                    Side::Alpha);
  s.choose = [space](const History& h) -> Move {
    const auto& proposal = std::get<PointedOpen>(h.moves.back());
    return space->refine(proposal.point, proposal.open, 1);
  };
  if (claims) {
    s.witness_claim = [space](const History& h) { return pick_of_last_answer(space, h); };
  }
  return s;
}

// On spaces with isolated points: the moment the proposal lands on one,
// answer with its singleton and ride it to the end.
Strategy ch_alpha_isolator(const SpacePtr& space) {
  Strategy s = base("isolator", GameKind::StrongChoquet, Side::Alpha);
  s.choose = [space](const History& h) -> Move {
    const auto& proposal = std::get<PointedOpen>(h.moves.back());
    BaseElement tight = space->refine(proposal.point, proposal.open, 0);
    if (space->singleton_member(tight)) return tight;
    return space->refine(proposal.point, proposal.open, 1);
  };
  s.witness_claim = [space](const History& h) { return pick_of_last_answer(space, h); };
  return s;
}

// Answers with the proposal cut down to the round-deep canonical
// neighborhood of the proposed point. On sequence spaces the answer is the
// cylinder of the point at the round's depth, so the answers thread toward a
// single sequence and the claimed witness is that thread.
Strategy ch_alpha_cylinder(const SpacePtr& space) {
  Strategy s = base("cylinder", GameKind::StrongChoquet, Side::Alpha);
  s.choose = [space](const History& h) -> Move {
    const auto& proposal = std::get<PointedOpen>(h.moves.back());
    std::uint64_t round = h.moves.size() / 2;
    auto cut = space->intersect(space->neighborhood(proposal.point, round + 1), proposal.open);
    if (!cut)
      throw InvariantViolation("cylinder: proposal and its own neighborhood fail to meet");
    return *cut;
  };
  s.witness_claim = [space](const History& h) { return pick_of_last_answer(space, h); };
  return s;
}

// --- Gruenhage ---------------------------------------------------------------

Strategy gru_one_wpoint(const SpacePtr& space, const std::optional<Point>& center) {
  if (!center) throw ConfigError("gruenhage strategy 'wpoint' needs a center point");
  auto w = topology::gruenhage_w_strategy(space, *center);
  Strategy s = base("wpoint", GameKind::Gruenhage, Side::PlayerOne);
  s.choose = [w](const History& h) -> Move {
    std::vector<Point> picks;
    for (std::size_t i = 1; i < h.moves.size(); i += 2)
      picks.push_back(std::get<Point>(h.moves[i]));
    return w.responder(picks);
  };
  return s;
}

Strategy gru_one_stall(const SpacePtr& space) {
  Strategy s = base("stall", GameKind::Gruenhage, Side::PlayerOne);
  s.choose = [space](const History&) -> Move { return space->whole(); };
  return s;
}

Strategy gru_two_canonical(const SpacePtr& space) {
  Strategy s = base("canonical", GameKind::Gruenhage, Side::PlayerTwo);
  s.choose = [space](const History& h) -> Move {
    return space->pick_point(std::get<BaseElement>(h.moves.back()));
  };
  return s;
}

// Picks away from the center whenever the offered neighborhood allows it.
Strategy gru_two_edge(const SpacePtr& space) {
  Strategy s = base("edge", GameKind::Gruenhage, Side::PlayerTwo);
  s.choose = [space](const History& h) -> Move {
    const auto& offer = std::get<BaseElement>(h.moves.back());
    for (const Point& p : space->sample_points(offer, 4)) {
      if (h.setup.center && !(p == *h.setup.center)) return p;
    }
    return space->pick_point(offer);
  };
  return s;
}

Strategy gru_two_random(const SpacePtr& space, std::uint64_t seed) {
  Strategy s = base("random", GameKind::Gruenhage, Side::PlayerTwo);
  s.choose = [space, seed](const History& h) -> Move {
    auto rng = rng_at(seed, h);
    const auto& offer = std::get<BaseElement>(h.moves.back());
    auto samples = space->sample_points(offer, 4);
    return samples[rng() % samples.size()];
  };
  return s;
}

}  // namespace

Strategy bm_beta_diagonal(const SpacePtr& space) {
  Strategy s = base("diagonal", GameKind::BanachMazur, Side::Beta);
  s.choose = [space](const History& h) -> Move {
    std::size_t round = h.round_of_next();
    BaseElement u = table_open(space, h);
    std::optional<Point> target = space->enumerate_point(round);
    if (target && space->member(*target, u)) {
      if (auto dodged = topology::puncture_element(*space, u, *target)) return *dodged;
    }
    // Already excluded upstream, past the enumeration, or inseparable; a
    // plain shrink keeps the chain honest either way.
    return space->refine(space->pick_point(u), u, 1);
  };
  return s;
}

Strategy choquet_beta_canonical(const SpacePtr& space) {
  Strategy s = base("canonical", GameKind::StrongChoquet, Side::Beta);
  s.choose = [space](const History& h) -> Move {
    BaseElement u = table_open(space, h);
    BaseElement v = h.moves.empty() ? u : space->refine(space->pick_point(u), u, 1);
    return topology::make_pointed_open(*space, space->pick_point(v), v);
  };
  return s;
}

Strategy choquet_alpha_echo(const SpacePtr& space) {
  Strategy s = base("echo", GameKind::StrongChoquet, Side::Alpha);
  s.choose = [](const History& h) -> Move {
    return std::get<PointedOpen>(h.moves.back()).open;
  };
  s.witness_claim = [space](const History& h) { return pick_of_last_answer(space, h); };
  return s;
}

Strategy make_strategy(const std::string& name, GameKind kind, Side side,
                       const SpacePtr& space, const StrategyOptions& opts) {
  if (!space) throw ConfigError("strategy needs a space");
  switch (kind) {
    case GameKind::BanachMazur:
      if (side == Side::Beta) {
        if (name == "diagonal") return bm_beta_diagonal(space);
        if (name == "shrink") return bm_shrink(space, kind, side);
        if (name == "random") return bm_random(space, side, opts.seed);
      } else if (side == Side::Alpha) {
        if (name == "shrink") return bm_shrink(space, kind, side);
        if (name == "identity") return bm_alpha_identity(space);
        if (name == "halver") return bm_alpha_halver(space);
        if (name == "random") return bm_random(space, side, opts.seed);
      }
      break;
    case GameKind::StrongChoquet:
      if (side == Side::Beta) {
        if (name == "canonical") return choquet_beta_canonical(space);
        if (name == "random") return ch_beta_random(space, opts.seed);
      } else if (side == Side::Alpha) {
        if (name == "refiner") return ch_alpha_refiner(space, true);
        if (name == "silent-refiner") return ch_alpha_refiner(space, false);
        if (name == "echo") return choquet_alpha_echo(space);
        if (name == "isolator") return ch_alpha_isolator(space);
        if (name == "cylinder") return ch_alpha_cylinder(space);
      }
      break;
    case GameKind::Gruenhage:
      if (side == Side::PlayerOne) {
        if (name == "wpoint") return gru_one_wpoint(space, opts.center);
        if (name == "stall") return gru_one_stall(space);
      } else if (side == Side::PlayerTwo) {
        if (name == "canonical") return gru_two_canonical(space);
        if (name == "edge") return gru_two_edge(space);
        if (name == "random") return gru_two_random(space, opts.seed);
      }
      break;
  }
  std::ostringstream os;
  os << "no strategy '" << name << "' for " << games::kind_name(kind) << " "
     << games::side_name(side) << "; available:";
  for (const auto& n : strategy_names(kind, side)) os << " " << n;
  throw ConfigError(os.str());
}

std::vector<std::string> strategy_names(GameKind kind, Side side) {
  switch (kind) {
    case GameKind::BanachMazur:
      if (side == Side::Beta) return {"diagonal", "shrink", "random"};
      if (side == Side::Alpha) return {"shrink", "identity", "halver", "random"};
      return {};
    case GameKind::StrongChoquet:
      if (side == Side::Beta) return {"canonical", "random"};
      if (side == Side::Alpha)
        return {"refiner", "silent-refiner", "echo", "isolator", "cylinder"};
      return {};
    case GameKind::Gruenhage:
      if (side == Side::PlayerOne) return {"wpoint", "stall"};
      if (side == Side::PlayerTwo) return {"canonical", "edge", "random"};
      return {};
  }
  return {};
}

}  // namespace bairegames::strategies
