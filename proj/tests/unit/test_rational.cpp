#include "doctest.h"

#include "bairegames/rational.hpp"

using namespace bairegames;

TEST_CASE("rational text form round-trips and normalizes") {
  CHECK(rational_to_string(Rational(3, 4)) == "3/4");
  CHECK(rational_to_string(Rational(-2)) == "-2");
  CHECK(rational_to_string(Rational(0)) == "0");

  CHECK(*rational_from_string("3/4") == Rational(3, 4));
  CHECK(*rational_from_string("-2") == Rational(-2));
  // Redundant factors reduce to the same canonical value.
  CHECK(*rational_from_string("6/8") == Rational(3, 4));
  CHECK(*rational_from_string("-4/2") == Rational(-2));

  CHECK_FALSE(rational_from_string("").has_value());
  CHECK_FALSE(rational_from_string("a/b").has_value());
  CHECK_FALSE(rational_from_string("1/0").has_value());
  CHECK_FALSE(rational_from_string("1/2/3").has_value());

  for (const char* text : {"0", "7", "-7", "22/7", "-355/113"}) {
    CHECK(rational_to_string(*rational_from_string(text)) == text);
  }
}

TEST_CASE("pow2_neg is the exact dyadic") {
  CHECK(pow2_neg(0) == Rational(1));
  CHECK(pow2_neg(1) == Rational(1, 2));
  CHECK(pow2_neg(10) == Rational(1, 1024));
  CHECK(pow2_neg(5) * Rational(32) == Rational(1));
}

TEST_CASE("the fixed enumeration of the rationals") {
  // Height order |p| + q over reduced p/q, ties by ascending numerator.
  CHECK(enumerate_rational(0) == Rational(0));
  CHECK(enumerate_rational(1) == Rational(-1));
  CHECK(enumerate_rational(2) == Rational(1));
  CHECK(enumerate_rational(3) == Rational(-2));
  CHECK(enumerate_rational(4) == Rational(-1, 2));
  CHECK(enumerate_rational(5) == Rational(1, 2));
  CHECK(enumerate_rational(6) == Rational(2));

  // No repeats in a long prefix: the enumeration is injective.
  std::vector<Rational> seen;
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rational q = enumerate_rational(k);
    for (const Rational& p : seen) CHECK(p != q);
    seen.push_back(q);
  }
}

TEST_CASE("cantor pairing inverts") {
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) {
      auto [x, y] = cantor_unpair(cantor_pair(a, b));
      CHECK(x == a);
      CHECK(y == b);
    }
  // Distinctness over a window.
  for (std::uint64_t z = 0; z < 300; ++z) {
    auto [a, b] = cantor_unpair(z);
    CHECK(cantor_pair(a, b) == z);
  }
}
