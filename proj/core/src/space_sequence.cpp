#include "space_factories.hpp"
#include "space_internal.hpp"

#include <algorithm>

namespace bairegames::topology {

namespace {

using namespace detail;

// omega^omega when alphabet == 0, otherwise sequences over {0..alphabet-1}.
// Base elements are cylinders over finite prefixes; points carry a finite
// prefix plus a constant tail digit, which keeps every relation decidable.

class SequenceSpace final : public Space {
 public:
  explicit SequenceSpace(std::uint32_t alphabet)
      : Space(alphabet == 0 ? "baire-omega" : (alphabet == 2 ? "cantor" : "seq-" + std::to_string(alphabet)),
              true, true, true),
        alphabet_(alphabet) {}

  BaseElement whole() const override { return BaseElement{name(), Cylinder{{}}}; }

  std::uint32_t digit_at(const SeqPoint& x, std::size_t k) const {
    return k < x.prefix.size() ? x.prefix[k] : x.tail;
  }

  void check_digits(const std::vector<std::uint32_t>& digits, const char* what) const {
    if (alphabet_ == 0) return;
    for (auto d : digits) {
      if (d >= alphabet_) throw PreconditionError(std::string(what) + ": digit exceeds alphabet");
    }
  }

  bool member(const Point& x, const BaseElement& u) const override {
    require_space(x.space, "member");
    require_space(u.space, "member");
    const auto& xp = point_expect<SeqPoint>(x, name().c_str());
    const auto& cyl = descriptor_expect<Cylinder>(u, name().c_str());
    for (std::size_t k = 0; k < cyl.prefix.size(); ++k) {
      if (digit_at(xp, k) != cyl.prefix[k]) return false;
    }
    return true;
  }

  bool contains(const BaseElement& inner, const BaseElement& outer) const override {
    require_space(inner.space, "contains");
    require_space(outer.space, "contains");
    const auto& in = descriptor_expect<Cylinder>(inner, name().c_str()).prefix;
    const auto& out = descriptor_expect<Cylinder>(outer, name().c_str()).prefix;
    // [s] subset-of [t] iff s extends t.
    if (in.size() < out.size()) return false;
    return std::equal(out.begin(), out.end(), in.begin());
  }

  bool disjoint(const BaseElement& u, const BaseElement& v) const override {
    const auto& a = descriptor_expect<Cylinder>(u, name().c_str()).prefix;
    const auto& b = descriptor_expect<Cylinder>(v, name().c_str()).prefix;
    std::size_t m = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < m; ++k) {
      if (a[k] != b[k]) return true;
    }
    return false;
  }

  std::optional<BaseElement> intersect(const BaseElement& u, const BaseElement& v) const override {
    if (disjoint(u, v)) return std::nullopt;
    // Comparable cylinders: the longer prefix wins.
    const auto& a = descriptor_expect<Cylinder>(u, name().c_str()).prefix;
    const auto& b = descriptor_expect<Cylinder>(v, name().c_str()).prefix;
    return a.size() >= b.size() ? u : v;
  }

  Point pick_point(const BaseElement& u) const override {
    require_space(u.space, "pick_point");
    const auto& cyl = descriptor_expect<Cylinder>(u, name().c_str());
    // Canonical member: extend the stem by zeros.
    return Point{name(), canonical_point(cyl.prefix, 0)};
  }

  SeqPoint canonical_point(std::vector<std::uint32_t> prefix, std::uint32_t tail) const {
    while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
    return SeqPoint{std::move(prefix), tail};
  }

  BaseElement refine(const Point& x, const BaseElement& u, std::uint64_t step) const override {
    const auto& xp = point_expect<SeqPoint>(x, name().c_str());
    const auto& cyl = descriptor_expect<Cylinder>(u, name().c_str());
    if (!member(x, u)) throw PreconditionError("refine: point lies outside the element");
    // The cylinder of x's first |prefix| + step digits.
    std::vector<std::uint32_t> longer;
    std::size_t len = cyl.prefix.size() + static_cast<std::size_t>(step);
    longer.reserve(len);
    for (std::size_t k = 0; k < len; ++k) longer.push_back(digit_at(xp, k));
    return BaseElement{name(), Cylinder{std::move(longer)}};
  }

  BaseElement neighborhood(const Point& x, std::uint64_t k) const override {
    const auto& xp = point_expect<SeqPoint>(x, name().c_str());
    std::vector<std::uint32_t> pre;
    pre.reserve(k);
    for (std::uint64_t j = 0; j < k; ++j) pre.push_back(digit_at(xp, j));
    return BaseElement{name(), Cylinder{std::move(pre)}};
  }

  // Finite digit strings in a canonical bijection with the naturals. For the
  // unbounded alphabet, 0 is the empty string and n >= 1 decodes as
  // cons(a, rest) with (a, b) = unpair(n - 1). For a bounded alphabet k the
  // bijective base-k numeral of n is used.
  std::vector<std::uint32_t> decode_string(std::uint64_t n) const {
    std::vector<std::uint32_t> out;
    if (alphabet_ == 0) {
      while (n > 0) {
        auto [a, b] = cantor_unpair(n - 1);
        out.push_back(static_cast<std::uint32_t>(a));
        n = b;
      }
    } else {
      while (n > 0) {
        out.push_back(static_cast<std::uint32_t>((n - 1) % alphabet_));
        n = (n - 1) / alphabet_;
      }
      std::reverse(out.begin(), out.end());
    }
    return out;
  }

  std::optional<Point> enumerate_point(std::uint64_t k) const override {
    // The countable dense set of eventually-zero sequences.
    return Point{name(), canonical_point(decode_string(k), 0)};
  }

  std::optional<BaseElement> enumerate_base(std::uint64_t k) const override {
    return BaseElement{name(), Cylinder{decode_string(k)}};
  }

  std::optional<Point> singleton_member(const BaseElement&) const override {
    // Every cylinder contains continuum many branches.
    return std::nullopt;
  }

  std::vector<Point> sample_points(const BaseElement& u, std::size_t count) const override {
    const auto& cyl = descriptor_expect<Cylinder>(u, name().c_str());
    std::vector<Point> out;
    out.push_back(pick_point(u));
    std::uint32_t limit = alphabet_ == 0 ? static_cast<std::uint32_t>(count) + 1 : alphabet_;
    for (std::uint32_t d = 1; d < limit && out.size() < std::max<std::size_t>(count, 1); ++d) {
      auto ext = cyl.prefix;
      ext.push_back(d);
      out.push_back(Point{name(), canonical_point(std::move(ext), 0)});
    }
    return out;
  }

 private:
  std::uint32_t alphabet_;
};

}  // namespace

SpacePtr detail_make_sequence_space(std::uint32_t alphabet) {
  return std::make_shared<SequenceSpace>(alphabet);
}

}  // namespace bairegames::topology
