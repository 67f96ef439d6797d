#include "space_internal.hpp"

namespace bairegames::topology {

namespace detail {

Interval enumerate_bounded_interval(std::uint64_t k) {
  // Walk Cantor-ordered pairs of enumerated rationals, keeping ordered pairs
  // with a < b. Deterministic; O(k) pairs scanned.
  std::uint64_t seen = 0;
  for (std::uint64_t m = 0;; ++m) {
    auto [i, j] = cantor_unpair(m);
    Rational a = enumerate_rational(i);
    Rational b = enumerate_rational(j);
    if (!(a < b)) continue;
    if (seen == k) return Interval{a, b};
    ++seen;
  }
}

}  // namespace detail

namespace {

using namespace detail;

constexpr const char* kName = "rationals";

class RationalsSpace final : public Space {
 public:
  RationalsSpace() : Space(kName, true, true, false) {}

  BaseElement whole() const override {
    return BaseElement{kName, Interval{std::nullopt, std::nullopt}};
  }

  bool member(const Point& x, const BaseElement& u) const override {
    require_space(x.space, "member");
    require_space(u.space, "member");
    return interval_member(point_expect<RationalPoint>(x, kName).value,
                           descriptor_expect<Interval>(u, kName));
  }

  bool contains(const BaseElement& inner, const BaseElement& outer) const override {
    require_space(inner.space, "contains");
    require_space(outer.space, "contains");
    return interval_contains(descriptor_expect<Interval>(inner, kName),
                             descriptor_expect<Interval>(outer, kName));
  }

  bool disjoint(const BaseElement& u, const BaseElement& v) const override {
    require_space(u.space, "disjoint");
    require_space(v.space, "disjoint");
    return interval_disjoint(descriptor_expect<Interval>(u, kName),
                             descriptor_expect<Interval>(v, kName));
  }

  std::optional<BaseElement> intersect(const BaseElement& u, const BaseElement& v) const override {
    auto r = interval_intersect(descriptor_expect<Interval>(u, kName),
                                descriptor_expect<Interval>(v, kName));
    if (!r) return std::nullopt;
    return BaseElement{kName, *r};
  }

  Point pick_point(const BaseElement& u) const override {
    require_space(u.space, "pick_point");
    return Point{kName, RationalPoint{interval_pick(descriptor_expect<Interval>(u, kName))}};
  }

  BaseElement refine(const Point& x, const BaseElement& u, std::uint64_t step) const override {
    const auto& iv = descriptor_expect<Interval>(u, kName);
    const auto& xp = point_expect<RationalPoint>(x, kName);
    if (!interval_member(xp.value, iv)) {
      throw PreconditionError("refine: point lies outside the element");
    }
    return BaseElement{kName, interval_refine(xp.value, iv, step)};
  }

  BaseElement neighborhood(const Point& x, std::uint64_t k) const override {
    const auto& xp = point_expect<RationalPoint>(x, kName);
    Rational d = pow2_neg(k);
    return BaseElement{kName, Interval{xp.value - d, xp.value + d}};
  }

  std::optional<Point> enumerate_point(std::uint64_t k) const override {
    return Point{kName, RationalPoint{enumerate_rational(k)}};
  }

  std::optional<BaseElement> enumerate_base(std::uint64_t k) const override {
    return BaseElement{kName, enumerate_bounded_interval(k)};
  }

  std::optional<Point> singleton_member(const BaseElement&) const override {
    // Nonempty open intervals of Q are infinite.
    return std::nullopt;
  }

  std::vector<Point> sample_points(const BaseElement& u, std::size_t count) const override {
    std::vector<Point> out;
    for (auto& r : interval_samples(descriptor_expect<Interval>(u, kName), count)) {
      out.push_back(Point{kName, RationalPoint{std::move(r)}});
    }
    return out;
  }
};

}  // namespace

SpacePtr detail_make_rationals() { return std::make_shared<RationalsSpace>(); }

}  // namespace bairegames::topology
