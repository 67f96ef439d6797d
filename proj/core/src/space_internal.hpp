#ifndef BAIREGAMES_SPACE_INTERNAL_HPP
#define BAIREGAMES_SPACE_INTERNAL_HPP

#include <optional>
#include <string>

#include "bairegames/topology.hpp"

// Interval arithmetic shared by the rational-line space and the
// rationals-with-isolated-points space. Everything operates on open rational
// intervals, with absent endpoints meaning unbounded.

namespace bairegames::topology::detail {

inline bool interval_nonempty(const Interval& i) {
  if (i.lo && i.hi) return *i.lo < *i.hi;
  return true;
}

inline bool interval_member(const Rational& x, const Interval& i) {
  if (i.lo && !(*i.lo < x)) return false;
  if (i.hi && !(x < *i.hi)) return false;
  return true;
}

// inner subset-of outer, exactly, as sets of rationals.
inline bool interval_contains(const Interval& inner, const Interval& outer) {
  if (outer.lo) {
    if (!inner.lo) return false;
    if (*inner.lo < *outer.lo) return false;
  }
  if (outer.hi) {
    if (!inner.hi) return false;
    if (*outer.hi < *inner.hi) return false;
  }
  return true;
}

inline bool interval_disjoint(const Interval& a, const Interval& b) {
  // Nonempty overlap iff max(lo) < min(hi) with unbounded sides ignored.
  if (a.hi && b.lo && !(*b.lo < *a.hi)) return true;
  if (b.hi && a.lo && !(*a.lo < *b.hi)) return true;
  return false;
}

inline std::optional<Interval> interval_intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo && b.lo)
    r.lo = std::max(*a.lo, *b.lo);
  else
    r.lo = a.lo ? a.lo : b.lo;
  if (a.hi && b.hi)
    r.hi = std::min(*a.hi, *b.hi);
  else
    r.hi = a.hi ? a.hi : b.hi;
  if (!interval_nonempty(r)) return std::nullopt;
  return r;
}

// Canonical point: midpoint when bounded, unit step inside a ray, 0 on the
// whole line.
inline Rational interval_pick(const Interval& i) {
  if (i.lo && i.hi) return (*i.lo + *i.hi) / 2;
  if (i.lo) return *i.lo + 1;
  if (i.hi) return *i.hi - 1;
  return Rational(0);
}

// Distance from x to the nearest finite endpoint; 1 when there is none.
inline Rational interval_margin(const Rational& x, const Interval& i) {
  std::optional<Rational> m;
  if (i.lo) m = x - *i.lo;
  if (i.hi) {
    Rational d = *i.hi - x;
    if (!m || d < *m) m = d;
  }
  return m ? *m : Rational(1);
}

// The interval (x - 2^-step * margin, x + 2^-step * margin): contains x, sits
// inside i, and shrinks strictly as step grows.
inline Interval interval_refine(const Rational& x, const Interval& i, std::uint64_t step) {
  Rational delta = interval_margin(x, i) * pow2_neg(step);
  return Interval{x - delta, x + delta};
}

// Evenly spaced interior points, exact.
inline std::vector<Rational> interval_samples(const Interval& i, std::size_t count) {
  if (count == 0) count = 1;
  Interval box = i;
  if (!box.lo || !box.hi) {
    Rational c = interval_pick(i);
    box = Interval{c - 1, c + 1};
  }
  std::vector<Rational> out;
  out.reserve(count);
  Rational width = *box.hi - *box.lo;
  for (std::size_t j = 1; j <= count; ++j) {
    out.push_back(*box.lo + width * Rational(static_cast<long>(j), static_cast<long>(count + 1)));
  }
  return out;
}

// The fixed enumeration of bounded nonempty intervals: pairs of enumerated
// rationals in Cantor order, keeping those with a < b.
Interval enumerate_bounded_interval(std::uint64_t k);

template <class T>
const T* descriptor_as(const BaseDescriptor& d) {
  return std::get_if<T>(&d);
}

template <class T>
const T& descriptor_expect(const BaseElement& e, const char* space_name) {
  const T* p = std::get_if<T>(&e.desc);
  if (!p) throw DomainError(std::string(space_name) + ": foreign base-element descriptor");
  return *p;
}

template <class T>
const T& point_expect(const Point& x, const char* space_name) {
  const T* p = std::get_if<T>(&x.desc);
  if (!p) throw DomainError(std::string(space_name) + ": foreign point descriptor");
  return *p;
}

}  // namespace bairegames::topology::detail

#endif
