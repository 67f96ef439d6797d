#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bairegames/product_games.hpp"

using namespace bairegames;
using product::KromBox;
using product::KromPlay;
using product::ProductBox;
using product::ProductUniverse;
using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

namespace {

std::vector<BaseElement> lattice(const SpacePtr& s) {
  std::vector<BaseElement> out;
  for (std::uint64_t k = 0;; ++k) {
    auto e = s->enumerate_base(k);
    if (!e) break;
    out.push_back(*e);
  }
  return out;
}

std::vector<Point> points(const SpacePtr& s) {
  std::vector<Point> out;
  for (std::uint64_t k = 0;; ++k) {
    auto p = s->enumerate_point(k);
    if (!p) break;
    out.push_back(*p);
  }
  return out;
}

// All boxes over the product constraining any subset of coordinates.
std::vector<ProductBox> all_boxes(const ProductUniverse& u) {
  std::vector<ProductBox> out{ProductBox{}};
  for (std::size_t i = 0; i < u.arity(); ++i) {
    std::vector<ProductBox> grown;
    for (const ProductBox& base : out) {
      grown.push_back(base);
      for (const BaseElement& e : lattice(u.factor(i))) {
        ProductBox b = base;
        b.factors.emplace(i, e);
        grown.push_back(std::move(b));
      }
    }
    out = std::move(grown);
  }
  return out;
}

}  // namespace

TEST_CASE("box containment matches tuple semantics on a finite product") {
  SpacePtr s = topology::make_space("finite:sierpinski");
  ProductUniverse u({s, s});
  auto pts = points(s);

  std::vector<std::vector<Point>> tuples;
  for (const Point& a : pts)
    for (const Point& b : pts) tuples.push_back({a, b});

  auto denote = [&](const ProductBox& b) {
    std::set<std::size_t> got;
    for (std::size_t t = 0; t < tuples.size(); ++t)
      if (u.box_member(tuples[t], b)) got.insert(t);
    return got;
  };

  auto boxes = all_boxes(u);
  REQUIRE(boxes.size() == 9);
  for (const ProductBox& inner : boxes) {
    for (const ProductBox& outer : boxes) {
      auto in = denote(inner);
      auto out = denote(outer);
      bool semantic = std::includes(out.begin(), out.end(), in.begin(), in.end());
      CHECK(u.box_subset(inner, outer) == semantic);
    }
  }
}

TEST_CASE("the universe rejects malformed boxes and tuples") {
  SpacePtr s = topology::make_space("finite:sierpinski");
  CHECK_THROWS_AS(ProductUniverse({s, nullptr}), ConfigError);

  ProductUniverse u({s, s});
  CHECK_THROWS_AS(u.factor(2), DomainError);

  ProductBox foreign;
  foreign.factors.emplace(0, topology::make_space("rationals")->whole());
  CHECK_THROWS_AS(u.require_box(foreign), PreconditionError);

  KromBox stale;
  stale.stems.emplace(1, krom::make_decreasing(s, {s->whole()}));
  stale.stems.at(1).elems.clear();
  CHECK_THROWS_AS(u.require_box(stale), PreconditionError);

  CHECK_THROWS_AS(u.box_member({s->pick_point(s->whole())}, ProductBox{}), PreconditionError);
}

TEST_CASE("lifted moves project back onto the ground strategy") {
  ProductUniverse u({topology::make_space("finite:sierpinski"),
                     topology::make_space("finite:discrete2")});
  auto sigma = product::product_beta_canonical(u);
  auto sigma_star = product::krom_lift_beta(u, sigma);

  std::vector<KromBox> star_replies;
  std::vector<ProductBox> ground_replies;
  for (std::size_t round = 0; round < 4; ++round) {
    KromBox move = sigma_star.next(star_replies);
    u.require_box(move);
    if (!star_replies.empty()) CHECK(u.box_subset(move, star_replies.back()));
    CHECK(u.project(move).factors == sigma.next(ground_replies).factors);

    // Reply with the deepest menu entry so stems keep growing.
    auto menu = product::alpha_reply_menu(u, move);
    REQUIRE(!menu.empty());
    for (const KromBox& option : menu) CHECK(u.box_subset(option, move));
    KromBox reply = menu.back();
    star_replies.push_back(reply);
    ground_replies.push_back(u.project(reply));
  }
}

TEST_CASE("a ground answer escaping the replied box is called out") {
  SpacePtr s = topology::make_space("finite:sierpinski");
  ProductUniverse u({s, s});

  product::ProductStrategy rogue;
  rogue.name = "rogue";
  rogue.next = [s](const std::vector<ProductBox>&) {
    ProductBox b;
    b.factors.emplace(0, s->whole());
    return b;
  };
  auto lifted = product::krom_lift_beta(u, rogue);

  KromBox opening = lifted.next({});
  CHECK(u.project(opening).factors.at(0) == s->whole());

  // Shrink coordinate 0 to a proper minimal open; the rogue answer (the
  // whole space again) now escapes it.
  BaseElement small = s->whole();
  for (const Point& p : points(s)) {
    BaseElement m = s->refine(p, s->whole(), 1);
    if (!s->contains(s->whole(), m)) {
      small = m;
      break;
    }
  }
  REQUIRE_FALSE(s->contains(s->whole(), small));
  KromBox reply;
  reply.stems.emplace(0, krom::extend(opening.stems.at(0), small));
  CHECK_THROWS_AS(lifted.next({reply}), IllegalStrategyMove);
}

TEST_CASE("survivors extract to tuples and back") {
  SpacePtr d = topology::make_space("finite:discrete2");
  ProductUniverse u({d, d});

  SUBCASE("lift direction") {
    auto sigma_star = product::krom_lift_beta(u, product::product_beta_canonical(u));
    KromBox b0 = sigma_star.next({});
    KromBox b1 = sigma_star.next({b0});  // stall reply
    KromPlay play{{b0, b1}, {b0}};
    CHECK(product::play_legal(u, play));

    std::map<std::size_t, krom::KromPoint> survivors;
    for (const auto& [i, stem] : b1.stems)
      survivors.emplace(i, krom::KromPoint(stem, krom::constant_tail(),
                                           u.factor(i)->pick_point(stem.last())));
    auto xs = product::extract_counterplay_lift(u, play, survivors);
    REQUIRE(xs.size() == 2);
    for (const KromBox& b : play.beta) CHECK(u.box_member(xs, u.project(b)));

    // Forgetting a constrained coordinate's survivor is a usage error.
    std::map<std::size_t, krom::KromPoint> missing = survivors;
    missing.erase(missing.begin()->first);
    CHECK_THROWS_AS(product::extract_counterplay_lift(u, play, missing), PreconditionError);

    // A survivor threading a different stem fails verification.
    std::map<std::size_t, krom::KromPoint> wrong = survivors;
    wrong.erase(0);
    wrong.emplace(0, krom::KromPoint(krom::make_decreasing(d, {d->whole()}),
                                     krom::constant_tail(), d->pick_point(d->whole())));
    CHECK_THROWS_AS(product::extract_counterplay_lift(u, play, wrong), InvariantViolation);
  }

  SUBCASE("lower direction") {
    auto sigma_star = product::krom_beta_canonical(u);
    KromBox m0 = sigma_star.next({});
    KromBox m1 = sigma_star.next({m0});  // stall reply
    KromPlay star{{m0, m1}, {m0}};
    CHECK(product::play_legal(u, star));
    REQUIRE(m1.stems.size() == 2);

    std::vector<Point> xs;
    for (std::size_t i = 0; i < u.arity(); ++i)
      xs.push_back(u.factor(i)->pick_point(m1.stems.at(i).last()));
    auto family = product::extract_counterplay_lower(u, star, xs);
    REQUIRE(family.size() == 2);
    for (const KromBox& b : star.beta)
      for (const auto& [i, stem] : b.stems)
        CHECK(krom::basic_member(family.at(i), krom::make_basic_open(stem)));

    CHECK_THROWS_AS(product::extract_counterplay_lower(u, star, {xs[0]}), PreconditionError);

    // On the discrete pair, the other point misses the singleton stem.
    std::vector<Point> bad = xs;
    for (const Point& p : points(d))
      if (!d->member(p, m1.stems.at(0).last())) bad[0] = p;
    REQUIRE_FALSE(d->member(bad[0], m1.stems.at(0).last()));
    CHECK_THROWS_AS(product::extract_counterplay_lower(u, star, bad), InvariantViolation);
  }
}

TEST_CASE("exhaustive sweeps come back clean on small products") {
  ProductUniverse solo({topology::make_space("finite:sierpinski")});
  auto lift1 = product::exhaustive_lift_duality(solo, 3);
  CHECK(lift1.clean());
  CHECK(lift1.plays > 0);
  CHECK(lift1.extraction_checks == lift1.plays);
  auto lower1 = product::exhaustive_lower_duality(solo, 3);
  CHECK(lower1.clean());
  CHECK(lower1.plays > 0);

  ProductUniverse pair({topology::make_space("finite:sierpinski"),
                        topology::make_space("finite:discrete2")});
  auto lift2 = product::exhaustive_lift_duality(pair, 2);
  CHECK(lift2.clean());
  CHECK(lift2.plays > 0);
  auto lower2 = product::exhaustive_lower_duality(pair, 2);
  CHECK(lower2.clean());
  CHECK(lower2.plays > 0);
}
