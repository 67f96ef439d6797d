#include "space_factories.hpp"
#include "space_internal.hpp"

#include <bit>
#include <charconv>

namespace bairegames::topology {

namespace {

using namespace detail;

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return value;
}

SpacePtr parse_finite(const std::string& spec) {
  if (spec == "point") return make_finite_space(1, {0, 1}, "finite:point");
  if (spec == "sierpinski") return make_finite_space(2, {0, 1, 3}, "finite:sierpinski");
  if (spec == "indiscrete2") return make_finite_space(2, {0, 3}, "finite:indiscrete2");
  if (spec == "discrete2") return make_finite_space(2, {0, 1, 2, 3}, "finite:discrete2");
  if (spec == "discrete3")
    return make_finite_space(3, {0, 1, 2, 3, 4, 5, 6, 7}, "finite:discrete3");

  // Explicit lattice: "<n>:<mask>,<mask>,...".
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("unknown finite space preset '" + spec + "'");
  }
  auto n = parse_u64(spec.substr(0, colon));
  if (!n || *n == 0 || *n > 16) throw ConfigError("finite space: bad point count in '" + spec + "'");
  std::vector<std::uint32_t> masks;
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto m = parse_u64(tok);
    if (!m) throw ConfigError("finite space: bad mask '" + tok + "' in '" + spec + "'");
    masks.push_back(static_cast<std::uint32_t>(*m));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return make_finite_space(static_cast<std::uint32_t>(*n), std::move(masks), "finite:" + spec);
}

}  // namespace

SpacePtr make_space(const std::string& name) {
  if (name == "rationals") return detail_make_rationals();
  if (name == "baire-omega") return detail_make_sequence_space(0);
  if (name == "cantor") return detail_make_sequence_space(2);
  constexpr const char* kFinite = "finite:";
  constexpr const char* kRemark = "remark-qd:";
  if (name.rfind(kFinite, 0) == 0) return parse_finite(name.substr(7));
  if (name.rfind(kRemark, 0) == 0) {
    auto bound = parse_u64(name.substr(10));
    if (!bound) throw ConfigError("bad isolated-point bound in '" + name + "'");
    return detail_make_remark_space(*bound);
  }
  throw ConfigError("unknown space '" + name + "'");
}

std::optional<BaseElement> puncture_element(const Space& space, const BaseElement& u,
                                            const Point& avoid) {
  if (!space.member(avoid, u)) return u;

  if (const auto* iv = descriptor_as<Interval>(u.desc)) {
    const auto& x = point_expect<RationalPoint>(avoid, "puncture").value;
    // Split at the point and keep the wider side (ties go left). Both sides
    // are nonempty open intervals because x is interior.
    Interval left{iv->lo, x};
    Interval right{x, iv->hi};
    auto width = [](const Interval& w) -> std::optional<Rational> {
      if (w.lo && w.hi) return *w.hi - *w.lo;
      return std::nullopt;
    };
    auto lw = width(left);
    auto rw = width(right);
    bool take_left = !lw ? true : (!rw ? false : !(*lw < *rw));
    return BaseElement{u.space, take_left ? left : right};
  }

  if (const auto* cyl = descriptor_as<Cylinder>(u.desc)) {
    const auto& xp = point_expect<SeqPoint>(avoid, "puncture");
    // Branch away from the point one digit past the stem.
    std::size_t k = cyl->prefix.size();
    std::uint32_t digit = k < xp.prefix.size() ? xp.prefix[k] : xp.tail;
    std::uint32_t other = (u.space == "cantor") ? (1u - digit) : digit + 1;
    auto longer = cyl->prefix;
    longer.push_back(other);
    return BaseElement{u.space, Cylinder{std::move(longer)}};
  }

  if (descriptor_as<OpenMask>(u.desc)) {
    // The union of all opens inside u that miss the point; open by lattice
    // closure, and empty exactly when no open separates u from the point.
    std::uint32_t acc = 0;
    for (std::uint64_t k = 0;; ++k) {
      auto cand = space.enumerate_base(k);
      if (!cand) break;
      if (space.contains(*cand, u) && !space.member(avoid, *cand)) {
        acc |= std::get<OpenMask>(cand->desc).bits;
      }
    }
    if (acc == 0) return std::nullopt;
    return BaseElement{u.space, OpenMask{acc}};
  }

  if (descriptor_as<IsolatedSingleton>(u.desc)) {
    return std::nullopt;  // the only member is the point itself
  }

  const auto& q = std::get<EuclideanWithTail>(u.desc);
  const auto& xp = point_expect<RemarkPoint>(avoid, "puncture");
  if (const auto* i = std::get_if<std::uint64_t>(&xp.at)) {
    // Push the excluded prefix past the isolated point.
    return BaseElement{u.space, EuclideanWithTail{q.window, std::max(q.excluded_prefix, *i + 1)}};
  }
  const Rational& x = std::get<Rational>(xp.at);
  Interval left{q.window.lo, x};
  Interval right{x, q.window.hi};
  auto width = [](const Interval& w) -> std::optional<Rational> {
    if (w.lo && w.hi) return *w.hi - *w.lo;
    return std::nullopt;
  };
  auto lw = width(left);
  auto rw = width(right);
  bool take_left = !lw ? true : (!rw ? false : !(*lw < *rw));
  return BaseElement{u.space, EuclideanWithTail{take_left ? left : right, q.excluded_prefix}};
}

std::optional<std::vector<BaseElement>> split_element(const Space& space, const BaseElement& u,
                                                      std::size_t parts) {
  if (parts == 0) return std::nullopt;
  if (const auto* iv = descriptor_as<Interval>(u.desc)) {
    Interval box = *iv;
    if (!box.lo || !box.hi) {
      Rational c = interval_pick(box);
      box = Interval{c - 1, c + 1};
    }
    // Open subintervals between parts+1 evenly spaced cut points; the cut
    // points themselves are dropped, which is fine for disjointness.
    std::vector<BaseElement> out;
    Rational width = *box.hi - *box.lo;
    for (std::size_t j = 0; j < parts; ++j) {
      Rational a = *box.lo + width * Rational(static_cast<long>(j), static_cast<long>(parts));
      Rational b = *box.lo + width * Rational(static_cast<long>(j + 1), static_cast<long>(parts));
      out.push_back(BaseElement{u.space, Interval{a, b}});
    }
    return out;
  }
  if (const auto* cyl = descriptor_as<Cylinder>(u.desc)) {
    bool binary = space.name() == "cantor";
    if (binary && parts > 2) return std::nullopt;
    std::vector<BaseElement> out;
    for (std::size_t j = 0; j < parts; ++j) {
      auto longer = cyl->prefix;
      longer.push_back(static_cast<std::uint32_t>(j));
      out.push_back(BaseElement{u.space, Cylinder{std::move(longer)}});
    }
    return out;
  }
  if (const auto* mask = descriptor_as<OpenMask>(u.desc)) {
    // Pairwise disjoint open subsets exist only if the mask splits into open
    // pieces; offer the singletons that happen to be open.
    std::vector<BaseElement> out;
    for (std::uint32_t p = 0; p < 32 && out.size() < parts; ++p) {
      if (!((mask->bits >> p) & 1u)) continue;
      BaseElement cand{u.space, OpenMask{1u << p}};
      try {
        if (space.contains(cand, u)) out.push_back(cand);
      } catch (const PreconditionError&) {
        // singleton not open in this lattice
      }
    }
    if (out.size() < parts) return std::nullopt;
    return out;
  }
  return std::nullopt;
}

}  // namespace bairegames::topology
