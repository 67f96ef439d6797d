#include "bairegames/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdlib>

namespace bairegames {

Rational pow2_neg(std::uint64_t k) {
  Integer den = Integer(1) << static_cast<unsigned>(k);
  return Rational(Integer(1), den);
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> rational_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!valid_int(text)) return std::nullopt;
      return Rational(Integer(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) return std::nullopt;
    Integer d(den);
    if (d == 0) return std::nullopt;
    return Rational(Integer(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Rational enumerate_rational(std::uint64_t index) {
  // Height h enumerates reduced p/q with |p| + q == h, q >= 1, numerators
  // ascending. h=1 yields only 0/1.
  std::uint64_t seen = 0;
  for (Integer h = 1;; ++h) {
    for (Integer p = 1 - h; p <= h - 1; ++p) {
      Integer q = h - abs(p);
      if (q < 1) continue;
      if (gcd(abs(p), q) != 1) continue;
      if (seen == index) return Rational(p, q);
      ++seen;
    }
  }
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // Largest w with w(w+1)/2 <= z, found without floating point.
  std::uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  std::uint64_t t = w * (w + 1) / 2;
  std::uint64_t b = z - t;
  return {w - b, b};
}

}  // namespace bairegames
