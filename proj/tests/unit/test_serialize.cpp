#include "doctest.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bairegames/serialize.hpp"

using namespace bairegames;
using ser::Json;
using topology::BaseElement;
using topology::Point;

namespace {

std::vector<std::string> keys_of(const Json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

TEST_CASE("rationals serialize as reduced fraction text") {
  CHECK(ser::encode(Rational(3, 4)) == "3/4");
  CHECK(ser::encode(Rational(-2, 6)) == "-1/3");
  // A unit denominator drops the slash entirely.
  CHECK(ser::encode(Rational(5)) == "5");
  CHECK(ser::encode(Rational(0)) == "0");

  auto back = rational_from_string("-7/3");
  REQUIRE(back.has_value());
  CHECK(ser::encode(*back) == "-7/3");
}

TEST_CASE("points and opens keep a fixed key layout") {
  auto q = topology::make_space("rationals");

  Point half{q->name(), topology::RationalPoint{Rational(1, 2)}};
  CHECK(ser::encode(half).dump() ==
        R"({"space":"rationals","point":{"kind":"rational","value":"1/2"}})");

  CHECK(ser::encode(q->whole()).dump() ==
        R"({"space":"rationals","open":{"kind":"interval","lo":null,"hi":null}})");

  Point zero{q->name(), topology::RationalPoint{Rational(0)}};
  CHECK(ser::encode(q->neighborhood(zero, 1)).dump() ==
        R"({"space":"rationals","open":{"kind":"interval","lo":"-1/2","hi":"1/2"}})");

  auto seq = topology::make_space("baire-omega");
  Point branch{seq->name(), topology::SeqPoint{{3, 1}, 0}};
  CHECK(ser::encode(branch).dump() ==
        R"({"space":"baire-omega","point":{"kind":"sequence","prefix":[3,1],"tail":0}})");
  CHECK(ser::encode(seq->neighborhood(branch, 2)).dump() ==
        R"({"space":"baire-omega","open":{"kind":"cylinder","prefix":[3,1]}})");

  auto fin = topology::make_space("finite:sierpinski");
  Json mask = ser::encode(fin->whole());
  CHECK(mask.at("open").at("kind") == "mask");
  CHECK(mask.at("open").at("bits") == 3);

  auto po = topology::make_pointed_open(*q, half, q->neighborhood(half, 1));
  CHECK(keys_of(ser::encode(po)) == std::vector<std::string>{"point", "open"});
}

TEST_CASE("moves are tagged unions") {
  auto q = topology::make_space("rationals");
  Point zero{q->name(), topology::RationalPoint{Rational(0)}};
  BaseElement u = q->neighborhood(zero, 1);

  Json open_move = ser::encode(games::Move{u});
  CHECK(open_move.at("move") == "open");
  CHECK(open_move.at("value") == ser::encode(u));

  Json pointed = ser::encode(games::Move{topology::make_pointed_open(*q, zero, u)});
  CHECK(pointed.at("move") == "pointed-open");
  CHECK(pointed.at("value").at("point") == ser::encode(zero));

  Json point_move = ser::encode(games::Move{zero});
  CHECK(point_move.at("move") == "point");
  CHECK(point_move.at("value") == ser::encode(zero));
}

TEST_CASE("transcripts carry setup, depth, moves, result in that order") {
  auto q = topology::make_space("rationals");
  Point zero{q->name(), topology::RationalPoint{Rational(0)}};

  games::History h;
  h.setup = games::GameSetup{games::GameKind::BanachMazur, q, std::nullopt};
  h.moves = {games::Move{q->whole()}, games::Move{q->neighborhood(zero, 1)}};

  games::Transcript t{h, 1, games::UndecidedAtDepth{}, std::nullopt};
  Json j = ser::encode(t);
  CHECK(keys_of(j) == std::vector<std::string>{"setup", "depth", "moves", "result"});
  CHECK(j.at("setup").dump() == R"({"game":"banach-mazur","space":"rationals"})");
  CHECK(j.at("depth") == 1);
  CHECK(j.at("moves").size() == 2);
  CHECK(j.at("result").dump() == R"({"outcome":"undecided-at-depth"})");

  SUBCASE("certificates spell out their evidence") {
    t.outcome = games::AlphaCertified{zero};
    Json a = ser::encode(t).at("result");
    CHECK(a.at("outcome") == "alpha-certified");
    CHECK(a.at("witness") == ser::encode(zero));

    t.outcome = games::BetaCertified{3, {{0, 1}, {2, 3}}};
    Json b = ser::encode(t).at("result");
    CHECK(b.dump() == R"({"outcome":"beta-certified","prefix":3,"exclusions":[[0,1],[2,3]]})");
  }

  SUBCASE("gruenhage extras appear only when present") {
    t.history.setup.kind = games::GameKind::Gruenhage;
    t.history.setup.center = zero;
    t.history.moves.clear();
    t.diagnostics = games::ConvergenceDiagnostics{{{0, 2}, {1, 3}}};
    Json g = ser::encode(t);
    CHECK(g.at("setup").at("center") == ser::encode(zero));
    CHECK(g.at("tail_depth").dump() == "[[0,2],[1,3]]");
  }
}

TEST_CASE("tree nodes and krom data stay plain arrays") {
  CHECK(ser::encode(tree::TreeNode{0, 1, 2}).dump() == "[0,1,2]");
  CHECK(ser::encode(tree::TreeNode{}).dump() == "[]");

  auto q = topology::make_space("rationals");
  Point zero{q->name(), topology::RationalPoint{Rational(0)}};
  auto seq = krom::make_decreasing(q, {q->whole(), q->neighborhood(zero, 1)});
  Json js = ser::encode(seq);
  REQUIRE(js.is_array());
  REQUIRE(js.size() == 2);
  CHECK(js.at(0) == ser::encode(q->whole()));

  krom::K0Certificate cert{zero, {{0, 0}, {2, 5}}};
  Json jc = ser::encode(cert);
  CHECK(keys_of(jc) == std::vector<std::string>{"witness", "evidence"});
  CHECK(jc.at("evidence").dump() == "[[0,0],[2,5]]");
}

TEST_CASE("jsonl writer emits one compact line per document") {
  auto q = topology::make_space("rationals");
  Json doc = ser::encode(q->whole());

  std::ostringstream out;
  ser::JsonlWriter writer(out);
  writer.line(doc);
  writer.line(Json{{"a", 1}});

  std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);

  std::istringstream lines(text);
  std::string first, second;
  REQUIRE(std::getline(lines, first));
  REQUIRE(std::getline(lines, second));
  CHECK(first == doc.dump());
  CHECK(Json::parse(second) == Json{{"a", 1}});
}
