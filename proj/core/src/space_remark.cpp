#include "space_factories.hpp"
#include "space_internal.hpp"

#include <algorithm>

namespace bairegames::topology {

namespace {

using namespace detail;

// The rational line with a countable swarm of isolated points d_0, d_1, ...
// attached. A neighborhood of a rational is an interval window plus all but
// finitely many of the isolated points (the excluded ones form a prefix of
// the fixed enumeration); each d_i is itself open. `bound` caps the isolated
// enumeration (0 = unbounded), giving a finite swarm for exhaustive tests.

class RemarkSpace final : public Space {
 public:
  explicit RemarkSpace(std::uint64_t bound)
      : Space("remark-qd:" + std::to_string(bound), true, true, false), bound_(bound) {}

  bool bounded() const { return bound_ != 0; }

  std::uint64_t norm_c(std::uint64_t c) const { return bounded() ? std::min(c, bound_) : c; }

  bool valid_isolated(std::uint64_t i) const { return !bounded() || i < bound_; }

  BaseElement qopen(Interval w, std::uint64_t c) const {
    return BaseElement{name(), EuclideanWithTail{std::move(w), norm_c(c)}};
  }

  BaseElement dsingle(std::uint64_t i) const {
    return BaseElement{name(), IsolatedSingleton{i}};
  }

  void validate(const BaseElement& u, const char* what) const {
    require_space(u.space, what);
    if (const auto* s = descriptor_as<IsolatedSingleton>(u.desc)) {
      if (!valid_isolated(s->index)) {
        throw PreconditionError(std::string(what) + ": isolated index beyond the bound");
      }
      return;
    }
    const auto& q = descriptor_expect<EuclideanWithTail>(u, name().c_str());
    if (!interval_nonempty(q.window)) {
      throw PreconditionError(std::string(what) + ": empty interval window");
    }
  }

  BaseElement whole() const override { return qopen(Interval{std::nullopt, std::nullopt}, 0); }

  bool member(const Point& x, const BaseElement& u) const override {
    require_space(x.space, "member");
    validate(u, "member");
    const auto& xp = point_expect<RemarkPoint>(x, name().c_str());
    if (const auto* s = descriptor_as<IsolatedSingleton>(u.desc)) {
      const auto* i = std::get_if<std::uint64_t>(&xp.at);
      return i && *i == s->index;
    }
    const auto& q = std::get<EuclideanWithTail>(u.desc);
    if (const auto* r = std::get_if<Rational>(&xp.at)) {
      return interval_member(*r, q.window);
    }
    std::uint64_t i = std::get<std::uint64_t>(xp.at);
    return valid_isolated(i) && i >= norm_c(q.excluded_prefix);
  }

  bool contains(const BaseElement& inner, const BaseElement& outer) const override {
    validate(inner, "contains");
    validate(outer, "contains");
    if (const auto* si = descriptor_as<IsolatedSingleton>(inner.desc)) {
      if (const auto* so = descriptor_as<IsolatedSingleton>(outer.desc)) {
        return si->index == so->index;
      }
      const auto& qo = std::get<EuclideanWithTail>(outer.desc);
      return si->index >= norm_c(qo.excluded_prefix);
    }
    const auto& qi = std::get<EuclideanWithTail>(inner.desc);
    if (descriptor_as<IsolatedSingleton>(outer.desc)) {
      return false;  // the window always holds rationals
    }
    const auto& qo = std::get<EuclideanWithTail>(outer.desc);
    if (!interval_contains(qi.window, qo.window)) return false;
    std::uint64_t ci = norm_c(qi.excluded_prefix);
    std::uint64_t co = norm_c(qo.excluded_prefix);
    // Inner's isolated tail must sit inside outer's: a larger excluded prefix
    // (or an empty tail altogether) is fine.
    if (ci >= co) return true;
    return bounded() && ci >= bound_;
  }

  bool disjoint(const BaseElement& u, const BaseElement& v) const override {
    validate(u, "disjoint");
    validate(v, "disjoint");
    const auto* su = descriptor_as<IsolatedSingleton>(u.desc);
    const auto* sv = descriptor_as<IsolatedSingleton>(v.desc);
    if (su && sv) return su->index != sv->index;
    if (su || sv) {
      const auto& s = su ? *su : *sv;
      const auto& q = std::get<EuclideanWithTail>(su ? v.desc : u.desc);
      return s.index < norm_c(q.excluded_prefix);
    }
    const auto& qa = std::get<EuclideanWithTail>(u.desc);
    const auto& qb = std::get<EuclideanWithTail>(v.desc);
    if (!interval_disjoint(qa.window, qb.window)) return false;
    // Both isolated tails survive unless the bound kills the longer exclusion.
    std::uint64_t c = std::max(norm_c(qa.excluded_prefix), norm_c(qb.excluded_prefix));
    return bounded() && c >= bound_;
  }

  std::optional<BaseElement> intersect(const BaseElement& u, const BaseElement& v) const override {
    validate(u, "intersect");
    validate(v, "intersect");
    const auto* su = descriptor_as<IsolatedSingleton>(u.desc);
    const auto* sv = descriptor_as<IsolatedSingleton>(v.desc);
    if (su && sv) {
      if (su->index == sv->index) return u;
      return std::nullopt;
    }
    if (su || sv) {
      const BaseElement& single = su ? u : v;
      const BaseElement& other = su ? v : u;
      Point d{name(), RemarkPoint{std::get<IsolatedSingleton>(single.desc).index}};
      if (member(d, other)) return single;
      return std::nullopt;
    }
    const auto& qa = std::get<EuclideanWithTail>(u.desc);
    const auto& qb = std::get<EuclideanWithTail>(v.desc);
    std::uint64_t c = std::max(norm_c(qa.excluded_prefix), norm_c(qb.excluded_prefix));
    auto w = interval_intersect(qa.window, qb.window);
    if (!w) return std::nullopt;  // a bare isolated tail is not a base element
    return qopen(*w, c);
  }

  Point pick_point(const BaseElement& u) const override {
    validate(u, "pick_point");
    if (const auto* s = descriptor_as<IsolatedSingleton>(u.desc)) {
      return Point{name(), RemarkPoint{s->index}};
    }
    // The rational midpoint: keeps neighborhood intersections representable.
    const auto& q = std::get<EuclideanWithTail>(u.desc);
    return Point{name(), RemarkPoint{interval_pick(q.window)}};
  }

  BaseElement refine(const Point& x, const BaseElement& u, std::uint64_t step) const override {
    if (!member(x, u)) throw PreconditionError("refine: point lies outside the element");
    const auto& xp = point_expect<RemarkPoint>(x, name().c_str());
    if (const auto* i = std::get_if<std::uint64_t>(&xp.at)) {
      return dsingle(*i);  // isolated points bottom out immediately
    }
    const auto& q = std::get<EuclideanWithTail>(u.desc);
    const Rational& r = std::get<Rational>(xp.at);
    // Shrink the window around x and push the excluded prefix out with the
    // step so the chain descends through the neighborhood filter.
    std::uint64_t c = norm_c(q.excluded_prefix);
    return qopen(interval_refine(r, q.window, step), norm_c(std::max(c, step)));
  }

  BaseElement neighborhood(const Point& x, std::uint64_t k) const override {
    const auto& xp = point_expect<RemarkPoint>(x, name().c_str());
    if (const auto* i = std::get_if<std::uint64_t>(&xp.at)) {
      if (!valid_isolated(*i)) throw DomainError("neighborhood: isolated index beyond the bound");
      return dsingle(*i);
    }
    const Rational& r = std::get<Rational>(xp.at);
    Rational d = pow2_neg(k);
    return qopen(Interval{r - d, r + d}, k);
  }

  std::optional<Point> enumerate_point(std::uint64_t k) const override {
    // Interleave rational and isolated enumerations; once a bounded swarm is
    // exhausted, continue with rationals alone.
    if (!bounded() || k < 2 * bound_) {
      if (k % 2 == 0) return Point{name(), RemarkPoint{enumerate_rational(k / 2)}};
      return Point{name(), RemarkPoint{std::uint64_t{(k - 1) / 2}}};
    }
    return Point{name(), RemarkPoint{enumerate_rational(k - bound_)}};
  }

  std::optional<BaseElement> enumerate_base(std::uint64_t k) const override {
    auto nth_qopen = [this](std::uint64_t m) {
      auto [i, c] = cantor_unpair(m);
      return qopen(enumerate_bounded_interval(i), norm_c(c));
    };
    if (!bounded() || k < 2 * bound_) {
      if (k % 2 == 0) return nth_qopen(k / 2);
      return dsingle((k - 1) / 2);
    }
    return nth_qopen(k - bound_);
  }

  std::optional<Point> singleton_member(const BaseElement& u) const override {
    validate(u, "singleton_member");
    if (const auto* s = descriptor_as<IsolatedSingleton>(u.desc)) {
      return Point{name(), RemarkPoint{s->index}};
    }
    return std::nullopt;  // a window always holds infinitely many rationals
  }

  std::vector<Point> sample_points(const BaseElement& u, std::size_t count) const override {
    validate(u, "sample_points");
    std::vector<Point> out;
    if (const auto* s = descriptor_as<IsolatedSingleton>(u.desc)) {
      out.push_back(Point{name(), RemarkPoint{s->index}});
      return out;
    }
    const auto& q = std::get<EuclideanWithTail>(u.desc);
    auto rationals = interval_samples(q.window, std::max<std::size_t>(count / 2, 1));
    std::uint64_t d = norm_c(q.excluded_prefix);
    std::size_t ri = 0;
    while (out.size() < std::max<std::size_t>(count, 1)) {
      if (out.size() % 2 == 0 && valid_isolated(d)) {
        out.push_back(Point{name(), RemarkPoint{d}});
        ++d;
        continue;
      }
      if (ri < rationals.size()) {
        out.push_back(Point{name(), RemarkPoint{rationals[ri++]}});
        continue;
      }
      if (valid_isolated(d)) {
        out.push_back(Point{name(), RemarkPoint{d}});
        ++d;
        continue;
      }
      break;
    }
    return out;
  }

 private:
  std::uint64_t bound_;
};

}  // namespace

SpacePtr detail_make_remark_space(std::uint64_t isolated_bound) {
  return std::make_shared<RemarkSpace>(isolated_bound);
}

}  // namespace bairegames::topology
