#include "doctest.h"

#include <string>
#include <vector>

#include "bairegames/serialize.hpp"
#include "bairegames/strategies.hpp"

using namespace bairegames;
using games::GameKind;
using games::GameSetup;
using games::Side;
using games::Transcript;
using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

namespace {

GameSetup setup_for(const SpacePtr& space, GameKind kind) {
  GameSetup s;
  s.kind = kind;
  s.space = space;
  return s;
}

}  // namespace

TEST_CASE("the roster builds everything it lists and rejects the rest") {
  SpacePtr q = topology::make_space("rationals");
  strategies::StrategyOptions opts;
  opts.center = q->pick_point(q->whole());

  for (GameKind kind :
       {GameKind::BanachMazur, GameKind::StrongChoquet, GameKind::Gruenhage}) {
    for (Side side : {Side::Beta, Side::Alpha, Side::PlayerOne, Side::PlayerTwo}) {
      for (const std::string& name : strategies::strategy_names(kind, side)) {
        auto s = strategies::make_strategy(name, kind, side, q, opts);
        CHECK(s.name == name);
        CHECK(s.kind == kind);
        CHECK(s.side == side);
        CHECK(bool(s.choose));
      }
    }
  }

  // An unknown name is refused with the available names spelled out.
  try {
    strategies::make_strategy("zigzag", GameKind::BanachMazur, Side::Alpha, q);
    FAIL("accepted a nonexistent strategy");
  } catch (const ConfigError& e) {
    std::string what = e.what();
    CHECK(what.find("zigzag") != std::string::npos);
    for (const std::string& name : strategies::strategy_names(GameKind::BanachMazur, Side::Alpha))
      CHECK(what.find(name) != std::string::npos);
  }

  // The convergence-forcing first player needs its center up front.
  CHECK_THROWS_AS(
      strategies::make_strategy("wpoint", GameKind::Gruenhage, Side::PlayerOne, q),
      ConfigError);
}

TEST_CASE("the diagonal point-dodger earns an exclusion certificate") {
  SpacePtr q = topology::make_space("rationals");
  auto beta = strategies::bm_beta_diagonal(q);
  auto alpha = strategies::make_strategy("identity", GameKind::BanachMazur, Side::Alpha, q);

  Transcript t = games::run_game(setup_for(q, GameKind::BanachMazur), beta, alpha, 12);
  REQUIRE(std::holds_alternative<games::BetaCertified>(t.outcome));
  const auto& cert = std::get<games::BetaCertified>(t.outcome);
  CHECK(cert.prefix >= 12);

  std::string why;
  CHECK(games::replay_legal(t, &why));
  CHECK(games::verify_certificate(t, &why));

  // Each exclusion really does separate its enumerated point from the open
  // at the recorded slot.
  auto opens = games::opens_in_play(t.history);
  for (const auto& [idx, slot] : cert.exclusions) {
    auto p = q->enumerate_point(idx);
    REQUIRE(bool(p));
    CHECK_FALSE(q->member(*p, *opens.at(slot)));
  }
}

TEST_CASE("the cylinder answerer threads a witness through every depth") {
  SpacePtr s = topology::make_space("baire-omega");
  auto beta = strategies::choquet_beta_canonical(s);
  auto alpha = strategies::make_strategy("cylinder", GameKind::StrongChoquet, Side::Alpha, s);

  for (std::size_t depth : {1u, 2u, 5u, 9u}) {
    Transcript t = games::run_game(setup_for(s, GameKind::StrongChoquet), beta, alpha, depth);
    REQUIRE(std::holds_alternative<games::AlphaCertified>(t.outcome));
    const Point& w = std::get<games::AlphaCertified>(t.outcome).witness;
    for (const auto* open : games::opens_in_play(t.history)) CHECK(s->member(w, *open));
    CHECK(games::verify_certificate(t));
  }
}

TEST_CASE("the isolator locks onto the first isolated proposal") {
  SpacePtr r = topology::make_space("remark-qd:4");
  auto alpha = strategies::make_strategy("isolator", GameKind::StrongChoquet, Side::Alpha, r);

  bool saw_isolated_run = false;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    strategies::StrategyOptions opts;
    opts.seed = seed;
    auto beta =
        strategies::make_strategy("random", GameKind::StrongChoquet, Side::Beta, r, opts);
    Transcript t = games::run_game(setup_for(r, GameKind::StrongChoquet), beta, alpha, 6);
    CHECK(games::replay_legal(t));
    CHECK(games::verify_certificate(t));

    // Find the first proposal sitting on an isolated point, if any: the
    // zero-step refinement around such a point is already a singleton.
    std::optional<Point> first_isolated;
    for (std::size_t i = 0; i < t.history.moves.size() && !first_isolated; i += 2) {
      const auto& po = std::get<topology::PointedOpen>(t.history.moves[i]);
      if (r->singleton_member(r->refine(po.point, po.open, 0))) first_isolated = po.point;
    }
    if (!first_isolated) continue;

    saw_isolated_run = true;
    REQUIRE(std::holds_alternative<games::AlphaCertified>(t.outcome));
    CHECK(std::get<games::AlphaCertified>(t.outcome).witness == *first_isolated);
    // Once locked, the singleton rides to the end of the play.
    auto opens = games::opens_in_play(t.history);
    auto locked = r->singleton_member(*opens.back());
    REQUIRE(bool(locked));
    CHECK(*locked == *first_isolated);
  }
  CHECK(saw_isolated_run);
}

TEST_CASE("the convergence-forcing first player keeps its center in every offer") {
  SpacePtr q = topology::make_space("rationals");
  Point center = q->pick_point(q->whole());
  strategies::StrategyOptions opts;
  opts.center = center;

  auto one = strategies::make_strategy("wpoint", GameKind::Gruenhage, Side::PlayerOne, q, opts);
  auto two = strategies::make_strategy("edge", GameKind::Gruenhage, Side::PlayerTwo, q);

  GameSetup setup = setup_for(q, GameKind::Gruenhage);
  setup.center = center;
  Transcript t = games::run_game(setup, one, two, 8);
  CHECK(std::holds_alternative<games::UndecidedAtDepth>(t.outcome));
  CHECK(games::replay_legal(t));
  for (std::size_t i = 0; i < t.history.moves.size(); i += 2) {
    CHECK(q->member(center, std::get<BaseElement>(t.history.moves[i])));
  }
}

TEST_CASE("seeded randomness replays identically") {
  SpacePtr r = topology::make_space("remark-qd:3");
  strategies::StrategyOptions opts;
  opts.seed = 41;

  auto play = [&]() {
    auto beta =
        strategies::make_strategy("random", GameKind::StrongChoquet, Side::Beta, r, opts);
    auto alpha = strategies::make_strategy("refiner", GameKind::StrongChoquet, Side::Alpha, r);
    return games::run_game(setup_for(r, GameKind::StrongChoquet), beta, alpha, 7);
  };
  std::string a = ser::encode(play()).dump();
  std::string b = ser::encode(play()).dump();
  CHECK(a == b);

  opts.seed = 42;
  std::string c = ser::encode(play()).dump();
  CHECK(a != c);
}
