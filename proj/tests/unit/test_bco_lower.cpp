#include "doctest.h"

#include <memory>
#include <vector>

#include "bairegames/bco_lower.hpp"
#include "bairegames/strategies.hpp"

using namespace bairegames;
using topology::BaseElement;
using topology::Point;
using topology::PointedOpen;
using topology::SpacePtr;
using transfer::BcoDescent;
using transfer::SeqGameMove;
using transfer::SeqGameStrategy;

TEST_CASE("the descent keeps cuts, probes, and stems in lockstep") {
  SpacePtr s = topology::make_space("baire-omega");
  BcoDescent d(s, transfer::seq_beta_canonical(s));

  std::vector<PointedOpen> moves{d.first_move()};
  std::vector<BaseElement> replies;
  for (std::size_t k = 0; k < 4; ++k) {
    const PointedOpen& m = moves.back();
    CHECK(s->member(m.point, m.open));
    replies.push_back(s->refine(m.point, m.open, 1));
    moves.push_back(d.next_move(replies.back()));
  }

  const auto& rounds = d.rounds();
  REQUIRE(rounds.size() == 5);
  for (std::size_t k = 0; k + 1 < rounds.size(); ++k) {
    CHECK(rounds[k].probed);
    CHECK(rounds[k].probe >= rounds[k].cut);
    // The next cut must protect everything the probe fed upstairs.
    CHECK(rounds[k + 1].cut >= rounds[k].probe + 1);
  }
  CHECK_FALSE(rounds.back().probed);

  // Fed stems grow strictly, agree as prefixes, and land inside the replies
  // that prompted them.
  const auto& fed = d.fed_stems();
  REQUIRE(fed.size() == 4);
  for (std::size_t k = 0; k < fed.size(); ++k) {
    CHECK(fed[k].size() == rounds[k].probe + 1);
    CHECK(s->contains(fed[k].last(), replies[k]));
    if (k > 0)
      CHECK(krom::basic_subset(krom::make_basic_open(fed[k]), krom::make_basic_open(fed[k - 1])));
  }

  // The played opens shrink strictly on a space with no isolated points.
  for (std::size_t k = 0; k + 1 < rounds.size(); ++k) {
    CHECK_FALSE(rounds[k].singleton);
    CHECK(s->contains(rounds[k + 1].v, rounds[k].v));
    CHECK_FALSE(s->contains(rounds[k].v, rounds[k + 1].v));
  }

  // Gluing at the last witness reproduces every round below its cut and
  // stays in the class of every fed stem.
  Point survivor = rounds.back().x;
  krom::KromPoint glued = d.glue(survivor);
  CHECK(glued.witness() == survivor);
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    krom::KromPoint f = rounds[k].point;  // copy; materialization mutates
    for (std::size_t p = 0; p < rounds[k].cut; ++p) CHECK(glued.at(p) == f.at(p));
  }
  for (const auto& stem : fed) CHECK(krom::basic_member(glued, krom::make_basic_open(stem)));

  // The glued sequence is itself certified base evidence around the survivor.
  auto cert = krom::k0_certify(glued, 4, 32);
  CHECK(krom::k0_verify(glued, cert, 4));

  // A survivor outside the played opens is refused.
  topology::SeqPoint far;
  far.prefix = {7};
  CHECK_THROWS_AS(d.glue(Point{s->name(), far}), PreconditionError);
}

TEST_CASE("a singleton cut element stabilizes the descent") {
  SpacePtr s = topology::make_space("finite:discrete2");
  BcoDescent d(s, transfer::seq_beta_canonical(s));

  PointedOpen m = d.first_move();
  for (std::size_t k = 0; k < 3; ++k) m = d.next_move(m.open);

  const auto& rounds = d.rounds();
  REQUIRE(rounds.size() == 4);
  for (std::size_t k = 1; k < rounds.size(); ++k) {
    CHECK(rounds[k].singleton);
    CHECK(rounds[k].v == rounds[1].v);
  }
  CHECK(*s->singleton_member(rounds.back().v) == rounds.back().x);

  krom::KromPoint glued = d.glue(rounds.back().x);
  CHECK(glued.witness() == rounds.back().x);
}

TEST_CASE("upstairs misbehavior is pinned on the strategy") {
  SpacePtr q = topology::make_space("rationals");
  auto canonical = transfer::seq_beta_canonical(q);

  SUBCASE("a cut shallower than the fed stem") {
    SeqGameStrategy rogue;
    rogue.name = "shallow";
    rogue.next = [q, canonical](const std::vector<krom::DecreasingSeq>& replies) -> SeqGameMove {
      if (replies.empty()) return canonical.next(replies);
      SeqGameMove move = canonical.next(replies);
      move.cut = 1;
      return move;
    };
    BcoDescent d(q, rogue);
    PointedOpen m = d.first_move();
    CHECK_THROWS_AS(d.next_move(q->refine(m.point, m.open, 1)), IllegalStrategyMove);
  }

  SUBCASE("a point that abandons the fed stem") {
    SeqGameStrategy rogue;
    rogue.name = "amnesiac";
    rogue.next = [q, canonical](const std::vector<krom::DecreasingSeq>& replies) -> SeqGameMove {
      if (replies.empty()) return canonical.next(replies);
      Point far{q->name(), topology::RationalPoint{Rational(1000)}};
      return SeqGameMove{krom::canonical_krom_point(q, far), replies.back().size() + 1};
    };
    BcoDescent d(q, rogue);
    PointedOpen m = d.first_move();
    CHECK_THROWS_AS(d.next_move(q->refine(m.point, m.open, 1)), IllegalStrategyMove);
  }
}

TEST_CASE("stalled base evidence runs the probe out of fuel") {
  SpacePtr q = topology::make_space("rationals");
  Point x{q->name(), topology::RationalPoint{Rational(0)}};
  // Certified three deep, then constant: the spot check passes but the
  // elements never squeeze into a genuinely small reply.
  krom::DecreasingSeq stem = krom::make_decreasing(
      q, {q->whole(), q->neighborhood(x, 1), q->neighborhood(x, 2)});
  SeqGameStrategy stalled;
  stalled.name = "stalled";
  stalled.next = [stem, x](const std::vector<krom::DecreasingSeq>&) -> SeqGameMove {
    return SeqGameMove{krom::KromPoint(stem, krom::constant_tail(), x), 1};
  };

  BcoDescent d(q, stalled, 32);
  PointedOpen m = d.first_move();
  BaseElement reply = q->refine(m.point, m.open, 6);
  REQUIRE_FALSE(q->contains(q->neighborhood(x, 2), reply));
  CHECK_THROWS_AS(d.next_move(reply), FuelError);
}

TEST_CASE("the descent survives a refereed game") {
  SpacePtr s = topology::make_space("baire-omega");
  auto descent = std::make_shared<BcoDescent>(s, transfer::seq_beta_canonical(s));
  auto beta = transfer::bco_ch_lower(descent);
  auto alpha = strategies::make_strategy("refiner", games::GameKind::StrongChoquet,
                                         games::Side::Alpha, s);

  games::GameSetup setup;
  setup.kind = games::GameKind::StrongChoquet;
  setup.space = s;
  games::Transcript t = games::run_game(setup, beta, alpha, 5);
  CHECK(games::replay_legal(t));
  CHECK(games::verify_certificate(t));
  CHECK(descent->rounds().size() == 5);

  krom::KromPoint glued = descent->glue(descent->rounds().back().x);
  for (const auto& stem : descent->fed_stems())
    CHECK(krom::basic_member(glued, krom::make_basic_open(stem)));

  CHECK_THROWS_AS(BcoDescent(nullptr, transfer::seq_beta_canonical(s)), ConfigError);
  BcoDescent idle(s, transfer::seq_beta_canonical(s));
  CHECK_THROWS_AS(idle.next_move(s->whole()), PreconditionError);
  CHECK_THROWS_AS(idle.glue(s->pick_point(s->whole())), PreconditionError);
}
