#ifndef BAIREGAMES_RATIONAL_HPP
#define BAIREGAMES_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace bairegames {

// All interval arithmetic is exact. cpp_rational keeps values normalized
// (coprime numerator/denominator, positive denominator), which doubles as the
// canonical form required for descriptor equality.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// 2^-k as an exact rational.
Rational pow2_neg(std::uint64_t k);

// Canonical text form "p/q" (plain "p" when q == 1). Round-trips exactly.
std::string rational_to_string(const Rational& r);

// Parses the form produced by rational_to_string; also accepts "p/q" with
// redundant factors. Returns nullopt on malformed input.
std::optional<Rational> rational_from_string(const std::string& text);

// The fixed enumeration of Q used for diagonal strategies and exclusion
// certificates: ordered by height |p| + q over reduced fractions p/q, ties by
// ascending numerator. Starts 0, -1, 1, -2, -1/2, 1/2, 2, ...
Rational enumerate_rational(std::uint64_t index);

// Cantor pairing on unsigned 64-bit values, used by the countable-base
// enumerations. unpair(pair(a, b)) == (a, b).
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

}  // namespace bairegames

#endif
