#include "doctest.h"

#include <variant>
#include <vector>

#include "bairegames/games.hpp"
#include "bairegames/strategies.hpp"

using namespace bairegames;
using namespace bairegames::games;
using topology::BaseElement;
using topology::Interval;
using topology::Point;
using topology::PointedOpen;
using topology::RationalPoint;
using topology::SpacePtr;

namespace {

BaseElement qiv(const Rational& lo, const Rational& hi) {
  return BaseElement{"rationals", Interval{lo, hi}};
}

Point qpoint(const Rational& r) { return Point{"rationals", RationalPoint{r}}; }

}  // namespace

TEST_CASE("shrink-game legality is nesting") {
  SpacePtr q = topology::make_space("rationals");
  History h{GameSetup{GameKind::BanachMazur, q, std::nullopt}, {}};

  CHECK_FALSE(illegal_reason(h, qiv(Rational(0), Rational(1))).has_value());
  append_checked(h, qiv(Rational(0), Rational(1)));

  // A reply escaping the previous open is rejected, with side and round.
  CHECK(illegal_reason(h, qiv(Rational(1, 2), Rational(2))).has_value());
  try {
    append_checked(h, qiv(Rational(1, 2), Rational(2)));
    FAIL("append accepted an escaping open");
  } catch (const IllegalStrategyMove& e) {
    CHECK(e.side() == "alpha");
    CHECK(e.round() == 0);
  }

  // Points and pointed opens are the wrong move shape here.
  CHECK(illegal_reason(h, qpoint(Rational(1, 2))).has_value());
  CHECK(illegal_reason(h, PointedOpen{qpoint(Rational(1, 2)), qiv(Rational(0), Rational(1))})
            .has_value());

  append_checked(h, qiv(Rational(0), Rational(1, 2)));
  append_checked(h, qiv(Rational(0), Rational(1, 4)));
  CHECK(h.round_of_next() == 1);
  CHECK(opens_in_play(h).size() == 3);
}

TEST_CASE("point-open legality pins the proposal point") {
  SpacePtr q = topology::make_space("rationals");
  History h{GameSetup{GameKind::StrongChoquet, q, std::nullopt}, {}};

  // A bare open is not a proposal.
  CHECK(illegal_reason(h, qiv(Rational(0), Rational(1))).has_value());
  // The proposed point must sit inside the proposed open.
  CHECK(illegal_reason(h, PointedOpen{qpoint(Rational(2)), qiv(Rational(0), Rational(1))})
            .has_value());

  append_checked(h, topology::make_pointed_open(*q, qpoint(Rational(1, 2)),
                                                qiv(Rational(0), Rational(1))));

  // The answer must hold the point and stay inside the proposal.
  CHECK(illegal_reason(h, qiv(Rational(3, 4), Rational(1))).has_value());
  CHECK(illegal_reason(h, qiv(Rational(0), Rational(2))).has_value());
  CHECK_FALSE(illegal_reason(h, qiv(Rational(1, 4), Rational(3, 4))).has_value());
  append_checked(h, qiv(Rational(1, 4), Rational(3, 4)));

  // The next proposal must sit inside the answer.
  CHECK(illegal_reason(h, topology::make_pointed_open(*q, qpoint(Rational(9, 10)),
                                                      qiv(Rational(7, 8), Rational(1))))
            .has_value());
  append_checked(h, topology::make_pointed_open(*q, qpoint(Rational(1, 2)),
                                                qiv(Rational(1, 4), Rational(1, 2))));
}

TEST_CASE("center-game legality") {
  SpacePtr q = topology::make_space("rationals");
  GameSetup setup{GameKind::Gruenhage, q, qpoint(Rational(0))};
  History h{setup, {}};

  // The first mover offers opens containing the center.
  CHECK(illegal_reason(h, qiv(Rational(1), Rational(2))).has_value());
  append_checked(h, qiv(Rational(-1), Rational(1)));

  // The second mover picks points inside the last open.
  CHECK(illegal_reason(h, qpoint(Rational(2))).has_value());
  CHECK(illegal_reason(h, qiv(Rational(-1), Rational(1))).has_value());
  append_checked(h, qpoint(Rational(1, 2)));

  append_checked(h, qiv(Rational(-1, 4), Rational(1, 4)));
  append_checked(h, qpoint(Rational(1, 8)));
  CHECK(h.round_of_next() == 2);
}

TEST_CASE("exclusion certificates verify point by point") {
  SpacePtr q = topology::make_space("rationals");
  strategies::StrategyOptions sopts;
  Strategy beta = strategies::make_strategy("diagonal", GameKind::BanachMazur, Side::Beta, q,
                                            sopts);
  Strategy alpha = strategies::make_strategy("shrink", GameKind::BanachMazur, Side::Alpha, q,
                                             sopts);
  GameSetup setup{GameKind::BanachMazur, q, std::nullopt};
  const std::size_t depth = 8;
  Transcript t = run_game(setup, beta, alpha, depth);

  REQUIRE(std::holds_alternative<BetaCertified>(t.outcome));
  const auto& cert = std::get<BetaCertified>(t.outcome);
  CHECK(cert.prefix == depth);
  REQUIRE(cert.exclusions.size() == depth);

  // Independent replay: each claimed exclusion really excludes, and every
  // enumerated point of the prefix is covered.
  auto opens = opens_in_play(t.history);
  std::vector<bool> covered(depth, false);
  for (const auto& [k, slot] : cert.exclusions) {
    REQUIRE(k < depth);
    REQUIRE(slot < opens.size());
    Point p = *q->enumerate_point(k);
    CHECK_FALSE(q->member(p, *opens[slot]));
    covered[k] = true;
  }
  for (std::size_t k = 0; k < depth; ++k) CHECK(covered[k]);

  std::string why;
  CHECK(replay_legal(t, &why));
  CHECK(verify_certificate(t, &why));
}

TEST_CASE("threaded witnesses certify and fake claims are caught") {
  SpacePtr s = topology::make_space("baire-omega");
  strategies::StrategyOptions sopts;
  Strategy beta = strategies::make_strategy("canonical", GameKind::StrongChoquet, Side::Beta, s,
                                            sopts);
  Strategy echo = strategies::choquet_alpha_echo(s);
  GameSetup setup{GameKind::StrongChoquet, s, std::nullopt};

  Transcript t = run_game(setup, beta, echo, 6);
  REQUIRE(std::holds_alternative<AlphaCertified>(t.outcome));
  const Point& w = std::get<AlphaCertified>(t.outcome).witness;
  for (const BaseElement* u : opens_in_play(t.history)) CHECK(s->member(w, *u));

  // An alpha claiming a point outside some played open is an invariant
  // violation, not a quiet downgrade.
  Strategy liar = echo;
  liar.name = "liar";
  liar.witness_claim = [s](const History&) -> std::optional<Point> {
    topology::SeqPoint p;
    p.prefix = {9, 9, 9};
    return Point{s->name(), p};
  };
  CHECK_THROWS_AS(run_game(setup, beta, liar, 6), InvariantViolation);
}

TEST_CASE("singletons in play lock the witness") {
  SpacePtr s = topology::make_space("finite:discrete2");
  History h{GameSetup{GameKind::BanachMazur, s, std::nullopt}, {}};
  BaseElement one{s->name(), topology::OpenMask{0b01}};
  append_checked(h, one);
  append_checked(h, one);  // the only legal shrink of a singleton is itself

  Outcome o = adjudicate(h, 1, nullptr);
  REQUIRE(std::holds_alternative<AlphaCertified>(o));
  CHECK(std::get<topology::FinitePoint>(std::get<AlphaCertified>(o).witness.desc).index == 0);
}

TEST_CASE("tampered transcripts fail replay") {
  SpacePtr q = topology::make_space("rationals");
  strategies::StrategyOptions sopts;
  sopts.seed = 11;
  Strategy beta = strategies::make_strategy("random", GameKind::BanachMazur, Side::Beta, q,
                                            sopts);
  Strategy alpha = strategies::make_strategy("halver", GameKind::BanachMazur, Side::Alpha, q,
                                             sopts);
  Transcript t = run_game(GameSetup{GameKind::BanachMazur, q, std::nullopt}, beta, alpha, 4);
  std::string why;
  REQUIRE(replay_legal(t, &why));

  Transcript bad = t;
  bad.history.moves[5] = bad.history.moves[1];  // un-shrink a later move
  CHECK_FALSE(replay_legal(bad, &why));
  CHECK_FALSE(why.empty());

  // Forged exclusion certificates fail re-verification.
  Transcript forged = t;
  if (std::holds_alternative<BetaCertified>(forged.outcome)) {
    std::get<BetaCertified>(forged.outcome).exclusions.clear();
    CHECK_FALSE(verify_certificate(forged, &why));
  } else {
    forged.outcome = BetaCertified{4, {}};
    CHECK_FALSE(verify_certificate(forged, &why));
  }
}

TEST_CASE("the referee reports moves in order") {
  SpacePtr q = topology::make_space("rationals");
  strategies::StrategyOptions sopts;
  Strategy beta = strategies::make_strategy("shrink", GameKind::BanachMazur, Side::Beta, q,
                                            sopts);
  Strategy alpha = strategies::make_strategy("halver", GameKind::BanachMazur, Side::Alpha, q,
                                             sopts);
  std::vector<std::pair<std::size_t, Side>> seen;
  Transcript t = run_game(GameSetup{GameKind::BanachMazur, q, std::nullopt}, beta, alpha, 3,
                          [&](std::size_t round, Side side, const Move&) {
                            seen.emplace_back(round, side);
                          });
  REQUIRE(seen.size() == 6);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    CHECK(seen[i].first == i / 2);
    CHECK(seen[i].second == (i % 2 == 0 ? Side::Beta : Side::Alpha));
  }
  CHECK(t.depth == 3);
}

TEST_CASE("center-game runs attach convergence diagnostics") {
  SpacePtr q = topology::make_space("rationals");
  Point center = qpoint(Rational(0));
  topology::WPointStrategy w = topology::gruenhage_w_strategy(q, center);
  strategies::StrategyOptions sopts;
  sopts.center = center;
  Strategy replier = strategies::make_strategy("canonical", GameKind::Gruenhage,
                                               Side::PlayerTwo, q, sopts);
  Transcript t = gruenhage_run(q, w, replier, 6);
  REQUIRE(t.diagnostics.has_value());
  REQUIRE(t.diagnostics->tail_depth.size() == 6);
  // The squeeze is monotone: later tails converge at least as deep.
  for (std::size_t i = 1; i < t.diagnostics->tail_depth.size(); ++i)
    CHECK(t.diagnostics->tail_depth[i].second >= t.diagnostics->tail_depth[i - 1].second);
  std::string why;
  CHECK(replay_legal(t, &why));
}

TEST_CASE("dense intersections on finite lattices, against brute force") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (const SpacePtr& s : topology::enumerate_topologies(n)) {
      CAPTURE(s->name());
      // Independent oracle: collect the nonempty opens as masks, intersect
      // all dense ones (dense: meets every nonempty open), and check the
      // result is dense. On finite lattices this decides Baire-ness.
      std::vector<std::uint32_t> opens;
      for (std::uint64_t k = 0;; ++k) {
        auto u = s->enumerate_base(k);
        if (!u) break;
        opens.push_back(std::get<topology::OpenMask>(u->desc).bits);
      }
      auto dense = [&](std::uint32_t d) {
        for (std::uint32_t o : opens)
          if ((o & d) == 0) return false;
        return true;
      };
      std::uint32_t everything = 0;
      for (std::uint32_t o : opens) everything |= o;
      std::uint32_t core = everything;
      for (std::uint32_t o : opens)
        if (dense(o)) core &= o;
      CHECK(games::finite_space_baire_oracle(s) == dense(core));
      // Finite lattices always come out dense: decreasing chains stabilize.
      CHECK(games::finite_space_baire_oracle(s));
    }
  }
}
