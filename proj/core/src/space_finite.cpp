#include "space_factories.hpp"
#include "space_internal.hpp"

#include <algorithm>
#include <bit>

namespace bairegames::topology {

namespace {

using namespace detail;

// A finite space carries its whole open-set lattice explicitly; the base is
// the set of nonempty opens. Point p is the bit 1 << p of a mask.

class FiniteSpace final : public Space {
 public:
  FiniteSpace(std::uint32_t points, std::vector<std::uint32_t> opens, std::string display)
      : Space(std::move(display), true, true, true),
        points_(points),
        opens_(std::move(opens)) {
    if (points_ == 0 || points_ > 16) {
      throw ConfigError("finite space: point count must be within 1..16");
    }
    std::uint32_t full = full_mask();
    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    bool has_empty = false;
    bool has_full = false;
    for (auto m : opens_) {
      if (m == 0) has_empty = true;
      if (m == full) has_full = true;
      if ((m & ~full) != 0) throw ConfigError("finite space: open set mentions unknown points");
    }
    if (!has_empty || !has_full) {
      throw ConfigError("finite space: lattice must contain the empty set and the whole set");
    }
    for (auto a : opens_) {
      for (auto b : opens_) {
        if (!is_open(a | b) || !is_open(a & b)) {
          throw ConfigError("finite space: open sets not closed under union/intersection");
        }
      }
    }
    min_open_.resize(points_);
    for (std::uint32_t p = 0; p < points_; ++p) {
      std::uint32_t acc = full;
      for (auto m : opens_) {
        if (m & (1u << p)) acc &= m;
      }
      min_open_[p] = acc;  // an open set: intersection of finitely many opens
    }
  }

  std::uint32_t full_mask() const { return (points_ >= 32) ? ~0u : ((1u << points_) - 1); }

  bool is_open(std::uint32_t m) const {
    return std::binary_search(opens_.begin(), opens_.end(), m);
  }

  const std::vector<std::uint32_t>& opens() const { return opens_; }
  std::uint32_t point_count() const { return points_; }
  std::uint32_t minimal_open(std::uint32_t p) const { return min_open_.at(p); }

  std::uint32_t mask_of(const BaseElement& u, const char* what) const {
    require_space(u.space, what);
    std::uint32_t m = descriptor_expect<OpenMask>(u, name().c_str()).bits;
    if (m == 0 || !is_open(m)) {
      throw PreconditionError(std::string(what) + ": mask is not a nonempty open of this lattice");
    }
    return m;
  }

  BaseElement elem(std::uint32_t mask) const { return BaseElement{name(), OpenMask{mask}}; }

  BaseElement whole() const override { return elem(full_mask()); }

  bool member(const Point& x, const BaseElement& u) const override {
    require_space(x.space, "member");
    auto p = point_expect<FinitePoint>(x, name().c_str()).index;
    if (p >= points_) throw DomainError("member: point index outside the space");
    return (mask_of(u, "member") >> p) & 1u;
  }

  bool contains(const BaseElement& inner, const BaseElement& outer) const override {
    std::uint32_t a = mask_of(inner, "contains");
    std::uint32_t b = mask_of(outer, "contains");
    return (a & ~b) == 0;
  }

  bool disjoint(const BaseElement& u, const BaseElement& v) const override {
    return (mask_of(u, "disjoint") & mask_of(v, "disjoint")) == 0;
  }

  std::optional<BaseElement> intersect(const BaseElement& u, const BaseElement& v) const override {
    std::uint32_t m = mask_of(u, "intersect") & mask_of(v, "intersect");
    if (m == 0) return std::nullopt;
    return elem(m);  // lattice closure keeps intersections open
  }

  Point pick_point(const BaseElement& u) const override {
    std::uint32_t m = mask_of(u, "pick_point");
    return Point{name(), FinitePoint{static_cast<std::uint32_t>(std::countr_zero(m))}};
  }

  BaseElement refine(const Point& x, const BaseElement& u, std::uint64_t) const override {
    if (!member(x, u)) throw PreconditionError("refine: point lies outside the element");
    auto p = point_expect<FinitePoint>(x, name().c_str()).index;
    // The minimal open around x is inside every open containing x; there is
    // nothing smaller to offer at any step.
    return elem(min_open_[p]);
  }

  BaseElement neighborhood(const Point& x, std::uint64_t) const override {
    auto p = point_expect<FinitePoint>(x, name().c_str()).index;
    if (p >= points_) throw DomainError("neighborhood: point index outside the space");
    return elem(min_open_[p]);
  }

  std::optional<Point> enumerate_point(std::uint64_t k) const override {
    if (k >= points_) return std::nullopt;
    return Point{name(), FinitePoint{static_cast<std::uint32_t>(k)}};
  }

  std::optional<BaseElement> enumerate_base(std::uint64_t k) const override {
    // Nonempty opens in ascending mask order; opens_[0] is the empty set.
    if (k + 1 >= opens_.size()) return std::nullopt;
    return elem(opens_[k + 1]);
  }

  std::optional<Point> singleton_member(const BaseElement& u) const override {
    std::uint32_t m = mask_of(u, "singleton_member");
    if (std::popcount(m) != 1) return std::nullopt;
    return pick_point(u);
  }

  BaseElement ccc_witness_subopen(const BaseElement& u) const override {
    // Descend to the minimal open around the canonical point.
    return neighborhood(pick_point(u), 0);
  }

  std::vector<Point> sample_points(const BaseElement& u, std::size_t count) const override {
    std::uint32_t m = mask_of(u, "sample_points");
    std::vector<Point> out;
    for (std::uint32_t p = 0; p < points_ && out.size() < std::max<std::size_t>(count, 1); ++p) {
      if ((m >> p) & 1u) out.push_back(Point{name(), FinitePoint{p}});
    }
    return out;
  }

 private:
  std::uint32_t points_;
  std::vector<std::uint32_t> opens_;
  std::vector<std::uint32_t> min_open_;
};

}  // namespace

SpacePtr make_finite_space(std::uint32_t points, std::vector<std::uint32_t> open_masks,
                           std::string display_name) {
  return std::make_shared<FiniteSpace>(points, std::move(open_masks), std::move(display_name));
}

std::vector<SpacePtr> enumerate_topologies(std::uint32_t points) {
  if (points == 0 || points > 4) {
    throw ConfigError("topology enumeration supports 1..4 points");
  }
  std::uint32_t subset_count = 1u << points;      // candidate open sets
  std::uint32_t full = subset_count - 1;          // the whole point set
  std::uint64_t family_count = 1ull << subset_count;
  std::vector<SpacePtr> out;
  for (std::uint64_t fam = 0; fam < family_count; ++fam) {
    // Bit s of fam: subset-mask s is declared open.
    if (!(fam & 1ull)) continue;                  // empty set required
    if (!(fam & (1ull << full))) continue;        // whole set required
    std::vector<std::uint32_t> opens;
    for (std::uint32_t s = 0; s < subset_count; ++s) {
      if ((fam >> s) & 1ull) opens.push_back(s);
    }
    bool closed = true;
    for (std::size_t i = 0; i < opens.size() && closed; ++i) {
      for (std::size_t j = i; j < opens.size(); ++j) {
        std::uint32_t u = opens[i] | opens[j];
        std::uint32_t n = opens[i] & opens[j];
        if (!((fam >> u) & 1ull) || !((fam >> n) & 1ull)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    std::string label = "finite:" + std::to_string(points) + ":#" + std::to_string(fam);
    out.push_back(make_finite_space(points, std::move(opens), std::move(label)));
  }
  return out;
}

}  // namespace bairegames::topology
