#include "doctest.h"

#include <vector>

#include "bairegames/krom.hpp"

using namespace bairegames;
using namespace bairegames::krom;
using topology::BaseElement;
using topology::Interval;
using topology::Point;
using topology::RationalPoint;
using topology::SpacePtr;

namespace {

BaseElement qiv(const Rational& lo, const Rational& hi) {
  return BaseElement{"rationals", Interval{lo, hi}};
}

Point qpoint(const Rational& r) { return Point{"rationals", RationalPoint{r}}; }

Point spoint(const SpacePtr& s, std::vector<std::uint32_t> prefix) {
  topology::SeqPoint p;
  p.prefix = std::move(prefix);
  return Point{s->name(), p};
}

}  // namespace

TEST_CASE("decreasing sequences validate on construction") {
  SpacePtr q = topology::make_space("rationals");
  CHECK_NOTHROW(make_decreasing(
      q, {q->whole(), qiv(Rational(0), Rational(1)), qiv(Rational(0), Rational(1, 2))}));
  // Non-strict nesting is allowed.
  CHECK_NOTHROW(make_decreasing(q, {qiv(Rational(0), Rational(1)), qiv(Rational(0), Rational(1))}));
  CHECK_THROWS_AS(
      make_decreasing(q, {qiv(Rational(0), Rational(1)), qiv(Rational(1, 2), Rational(2))}),
      PreconditionError);
  CHECK_THROWS_AS(make_decreasing(q, {}), PreconditionError);

  DecreasingSeq f = make_decreasing(q, {q->whole(), qiv(Rational(0), Rational(1))});
  CHECK_THROWS_AS(extend(f, qiv(Rational(1, 2), Rational(2))), PreconditionError);
  DecreasingSeq g = extend(f, qiv(Rational(0), Rational(1, 2)));
  CHECK(g.size() == 3);
  CHECK(prefix_of(g, 2).elems == f.elems);
  CHECK_THROWS_AS(prefix_of(g, 0), PreconditionError);
}

TEST_CASE("lazy points materialize through their tail rule") {
  SpacePtr q = topology::make_space("rationals");
  KromPoint f = canonical_krom_point(q, qpoint(Rational(0)));
  CHECK(f.at(0) == q->whole());
  // The refine tail shrinks strictly around the witness forever.
  for (std::size_t k = 1; k < 8; ++k) {
    CHECK(q->contains(f.at(k), f.at(k - 1)));
    CHECK_FALSE(q->contains(f.at(k - 1), f.at(k)));
    CHECK(q->member(f.witness(), f.at(k)));
  }
  CHECK(f.materialized() >= 8);
  CHECK(f.stem(3).size() == 3);

  // The constant tail repeats the final element.
  KromPoint g(make_decreasing(q, {qiv(Rational(0), Rational(1))}), constant_tail(),
              qpoint(Rational(1, 2)));
  CHECK(g.at(5) == qiv(Rational(0), Rational(1)));

  // A witness outside the chain is rejected at construction.
  CHECK_THROWS_AS(KromPoint(make_decreasing(q, {qiv(Rational(0), Rational(1))}), constant_tail(),
                            qpoint(Rational(2))),
                  PreconditionError);
}

TEST_CASE("basic opens compare by stem compatibility") {
  SpacePtr q = topology::make_space("rationals");
  DecreasingSeq whole1 = make_decreasing(q, {q->whole()});
  DecreasingSeq left = extend(whole1, qiv(Rational(0), Rational(1, 2)));
  DecreasingSeq right = extend(whole1, qiv(Rational(1, 2), Rational(1)));
  DecreasingSeq deeper = extend(left, qiv(Rational(0), Rational(1, 4)));

  KromBasicOpen top = make_basic_open(whole1);
  KromBasicOpen l = make_basic_open(left);
  KromBasicOpen r = make_basic_open(right);
  KromBasicOpen d = make_basic_open(deeper);

  CHECK(basic_subset(l, top));
  CHECK(basic_subset(d, l));
  CHECK_FALSE(basic_subset(l, d));
  CHECK_FALSE(basic_subset(l, r));

  CHECK(basic_disjoint(l, r));
  CHECK(basic_disjoint(d, r));
  CHECK_FALSE(basic_disjoint(l, d));
  CHECK_FALSE(basic_disjoint(l, top));

  KromPoint f(deeper, constant_tail(), qpoint(Rational(1, 8)));
  CHECK(basic_member(f, l));
  CHECK(basic_member(f, d));
  CHECK_FALSE(basic_member(f, r));
}

TEST_CASE("the distance is two to the minus first difference") {
  SpacePtr q = topology::make_space("rationals");

  // Same rule, same witness, same data: judged equal, exact zero.
  KromPoint a = canonical_krom_point(q, qpoint(Rational(0)));
  KromPoint b = canonical_krom_point(q, qpoint(Rational(0)));
  UltraDistance z = ultradist(a, b, 16);
  CHECK(z.exact);
  CHECK(z.value == Rational(0));

  // Different centers part ways at index 1 (index 0 is the whole space).
  KromPoint c = canonical_krom_point(q, qpoint(Rational(1)));
  UltraDistance d1 = ultradist(a, c, 16);
  CHECK(d1.exact);
  CHECK(d1.value == Rational(1, 2));

  // Symmetry.
  UltraDistance d2 = ultradist(c, a, 16);
  CHECK(d2.value == d1.value);

  // A later first difference gives a smaller distance: prefix two elements
  // of a's chain onto both, difference moves to index 3.
  DecreasingSeq shared = a.stem(3);
  KromPoint e1(shared, refine_tail(), qpoint(Rational(0)));
  DecreasingSeq shared2 = shared;
  KromPoint e2(shared2, constant_tail(), qpoint(Rational(0)));
  UltraDistance d3 = ultradist(e1, e2, 16);
  CHECK(d3.exact);
  CHECK(d3.value == Rational(1, 8));

  // Identical materialized data with no way to judge the tails equal: the
  // bound 2^-fuel comes back marked inexact.
  KromPoint t1(make_decreasing(q, {q->whole()}), constant_tail(), qpoint(Rational(0)));
  KromPoint t2(make_decreasing(q, {q->whole()}), constant_tail(), qpoint(Rational(1)));
  UltraDistance d4 = ultradist(t1, t2, 12);
  CHECK_FALSE(d4.exact);
  CHECK(d4.value == pow2_neg(12));
}

TEST_CASE("strong triangle on hand-built triples") {
  SpacePtr q = topology::make_space("rationals");
  KromPoint a = canonical_krom_point(q, qpoint(Rational(0)));
  KromPoint b = canonical_krom_point(q, qpoint(Rational(1)));
  KromPoint c = canonical_krom_point(q, qpoint(Rational(2)));
  Rational ab = ultradist(a, b, 16).value;
  Rational bc = ultradist(b, c, 16).value;
  Rational ac = ultradist(a, c, 16).value;
  CHECK(ac <= (ab > bc ? ab : bc));
  CHECK(ab <= (ac > bc ? ac : bc));
  CHECK(bc <= (ab > ac ? ab : ac));
}

TEST_CASE("base evidence certifies, verifies, and rejects tampering") {
  SpacePtr s = topology::make_space("baire-omega");
  KromPoint f = canonical_krom_point(s, spoint(s, {3, 1}));
  K0Certificate cert = k0_certify(f, 8, 64);
  CHECK(cert.witness == f.witness());
  REQUIRE(cert.evidence.size() == 8);
  for (std::size_t i = 1; i < cert.evidence.size(); ++i)
    CHECK(cert.evidence[i].second > cert.evidence[i - 1].second);
  for (const auto& [k, j] : cert.evidence)
    CHECK(s->contains(f.at(j), s->neighborhood(f.witness(), k)));
  CHECK(k0_verify(f, cert, 8));

  K0Certificate bad = cert;
  bad.evidence.back().second = 0;  // the whole space cannot sit inside a deep neighborhood
  CHECK_FALSE(k0_verify(f, bad, 8));
  K0Certificate wrong_witness = cert;
  wrong_witness.witness = spoint(s, {9});
  CHECK_FALSE(k0_verify(f, wrong_witness, 8));

  // A constant chain is not a neighborhood base: depth 0 is free (the 0th
  // neighborhood is the whole space), depth 1 is not.
  KromPoint flat(make_decreasing(s, {s->whole()}), constant_tail(), spoint(s, {}));
  CHECK_NOTHROW(k0_certify(flat, 1, 16));
  try {
    k0_certify(flat, 2, 16);
    FAIL("certified a constant chain as a base");
  } catch (const NotCertifiedAtDepth& e) {
    CHECK(e.depth() == 1);
  }
}

TEST_CASE("splicing below a stem shifts the evidence by the stem length") {
  SpacePtr s = topology::make_space("baire-omega");
  DecreasingSeq h = make_decreasing(s, {s->whole(), s->whole()});
  KromPoint g = canonical_krom_point(s, spoint(s, {3}));
  KromPoint spliced = splice_below(h, g);

  CHECK(spliced.witness() == g.witness());
  CHECK(basic_member(spliced, make_basic_open(h)));
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(spliced.at(k) == h.at(k));

  K0Certificate cert = k0_certify(spliced, 6, 64);
  K0Certificate direct = k0_certify(g, 6, 64);
  // Depth 0 can land early (the whole space is the 0th neighborhood); from
  // depth 1 on, the spliced evidence is the direct evidence shifted by |h|.
  for (std::size_t k = 1; k < 6; ++k) {
    CHECK(cert.evidence[k].second == direct.evidence[k].second + h.size());
  }

  // The splice precondition: g must start inside the stem's final element.
  SpacePtr q = topology::make_space("rationals");
  DecreasingSeq low = make_decreasing(q, {qiv(Rational(0), Rational(1))});
  KromPoint far(make_decreasing(q, {qiv(Rational(2), Rational(3))}), constant_tail(),
                qpoint(Rational(5, 2)));
  CHECK_THROWS_AS(splice_below(low, far), PreconditionError);
}

TEST_CASE("disjoint families below a stem project to disjoint elements") {
  SpacePtr q = topology::make_space("rationals");
  DecreasingSeq start = make_decreasing(q, {q->whole()});
  DecreasingSeq below = ccc_pi_base_step(start);
  CHECK(below.size() == 2);
  CHECK(q->contains(below.last(), start.last()));

  KromBasicOpen f0 =
      make_basic_open(make_decreasing(q, {q->whole(), qiv(Rational(0), Rational(1))}));
  auto family = generate_disjoint_family(f0, 24, 7);
  REQUIRE(family.size() == 24);
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(basic_subset(family[i], f0));
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      CHECK(basic_disjoint(family[i], family[j]));
      // Independent reading of disjointness: the stems must conflict at
      // their first difference with space-disjoint elements.
      const auto& a = family[i].stem;
      const auto& b = family[j].stem;
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a.at(k) == b.at(k)) ++k;
      REQUIRE(k < a.size());
      REQUIRE(k < b.size());
      CHECK(q->disjoint(a.at(k), b.at(k)));
    }
  }

  std::string why;
  CHECK(disjoint_family_projection(f0, family, &why));

  // Disjoint stems whose final elements overlap fail the projection (the
  // conflict sits at an earlier index, not the last one).
  DecreasingSeq left = extend(extend(f0.stem, qiv(Rational(0), Rational(2, 3))),
                              qiv(Rational(1, 3), Rational(2, 3)));
  DecreasingSeq right = extend(extend(f0.stem, qiv(Rational(1, 3), Rational(1))),
                               qiv(Rational(1, 3), Rational(2, 3)));
  std::vector<KromBasicOpen> overlap{make_basic_open(left), make_basic_open(right)};
  CHECK(basic_disjoint(overlap[0], overlap[1]));
  CHECK_FALSE(disjoint_family_projection(f0, overlap, &why));
  CHECK(!why.empty());

  // Compatible stems are rejected before any projection verdict.
  std::vector<KromBasicOpen> nested{f0, make_basic_open(left)};
  CHECK_THROWS_AS(disjoint_family_projection(f0, nested, &why), PreconditionError);
}
