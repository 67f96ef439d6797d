#ifndef BAIREGAMES_TOPOLOGY_HPP
#define BAIREGAMES_TOPOLOGY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bairegames/errors.hpp"
#include "bairegames/rational.hpp"

namespace bairegames::topology {

// ---------------------------------------------------------------------------
// Base-element descriptors. One alternative per space family. Descriptors are
// canonical: two of them denote the same open set iff they compare equal.
// ---------------------------------------------------------------------------

// Open rational interval. An absent endpoint means unbounded on that side;
// with both endpoints present the invariant lo < hi holds.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool operator==(const Interval&) const = default;
};

// Basic open [prefix] of a sequence space: all infinite sequences extending
// the finite prefix. The empty prefix denotes the whole space.
struct Cylinder {
  std::vector<std::uint32_t> prefix;

  bool operator==(const Cylinder&) const = default;
};

// An open set of a finite space, as a bitmask over its points.
struct OpenMask {
  std::uint32_t bits = 0;

  bool operator==(const OpenMask&) const = default;
};

// {d_i}: the singleton of the i-th isolated point.
struct IsolatedSingleton {
  std::uint64_t index = 0;

  bool operator==(const IsolatedSingleton&) const = default;
};

// The union of an interval window with all isolated points except the first
// `excluded_prefix` of them: the basic neighborhood of a rational point in
// the isolated-extension space. The window is a nonempty open interval.
struct EuclideanWithTail {
  Interval window;
  std::uint64_t excluded_prefix = 0;

  bool operator==(const EuclideanWithTail&) const = default;
};

using BaseDescriptor =
    std::variant<Interval, Cylinder, OpenMask, IsolatedSingleton, EuclideanWithTail>;

struct BaseElement {
  std::string space;
  BaseDescriptor desc;

  bool operator==(const BaseElement&) const = default;
};

// ---------------------------------------------------------------------------
// Points.
// ---------------------------------------------------------------------------

struct RationalPoint {
  Rational value;

  bool operator==(const RationalPoint&) const = default;
};

// A point of a sequence space given by finite data: explicit prefix, then the
// constant `tail` forever. Canonical form strips trailing entries equal to
// the tail value.
struct SeqPoint {
  std::vector<std::uint32_t> prefix;
  std::uint32_t tail = 0;

  bool operator==(const SeqPoint&) const = default;
};

struct FinitePoint {
  std::uint32_t index = 0;

  bool operator==(const FinitePoint&) const = default;
};

// Either a rational of the Euclidean part or the i-th isolated point.
struct RemarkPoint {
  std::variant<Rational, std::uint64_t> at;

  bool operator==(const RemarkPoint&) const = default;
};

using PointDescriptor = std::variant<RationalPoint, SeqPoint, FinitePoint, RemarkPoint>;

struct Point {
  std::string space;
  PointDescriptor desc;

  bool operator==(const Point&) const = default;
};

// A point together with an open set containing it. make_pointed_open checks
// membership; aggregate construction is possible but every referee revalidates.
struct PointedOpen {
  Point point;
  BaseElement open;

  bool operator==(const PointedOpen&) const = default;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

PointedOpen make_pointed_open(const Space& space, Point point, BaseElement open);

// ---------------------------------------------------------------------------
// Space: a countably based space presented by procedures. All set relations
// (membership, inclusion, disjointness) are decided exactly on descriptors.
// ---------------------------------------------------------------------------

class Space {
 public:
  virtual ~Space() = default;

  const std::string& name() const { return name_; }

  bool first_countable() const { return first_countable_; }
  bool ccc() const { return ccc_; }
  // True when every strictly decreasing chain of base elements with a common
  // point is automatically a neighborhood base at that point.
  bool base_of_countable_order() const { return bco_; }

  virtual BaseElement whole() const = 0;

  virtual bool member(const Point& x, const BaseElement& u) const = 0;

  // Exact inclusion of denoted sets: inner subset-of outer.
  virtual bool contains(const BaseElement& inner, const BaseElement& outer) const = 0;

  virtual bool disjoint(const BaseElement& u, const BaseElement& v) const = 0;

  // Exact intersection when it is again a base element; nullopt when empty
  // or not representable. The swarm spaces have window pairs whose overlap
  // is a bare tail of isolated points, which no single base element denotes;
  // everywhere else a nonempty overlap is representable. What every space
  // does guarantee is the base axiom: around any point of u ∩ v some
  // canonical neighborhood of the point fits inside both, so pinched
  // intersections (a neighborhood of x against an element containing x)
  // never come back empty-handed.
  virtual std::optional<BaseElement> intersect(const BaseElement& u,
                                               const BaseElement& v) const = 0;

  // Deterministic canonical point of a nonempty base element.
  virtual Point pick_point(const BaseElement& u) const = 0;

  // A base element w with x in w, w subset-of u, shrinking as step grows.
  // step 0 gives the widest canonical shrink; larger steps nest inside it.
  virtual BaseElement refine(const Point& x, const BaseElement& u,
                             std::uint64_t step) const = 0;

  // k-th member of the canonical decreasing neighborhood base at x.
  virtual BaseElement neighborhood(const Point& x, std::uint64_t k) const = 0;

  // Countable point enumeration (a dense listing; total for countable spaces).
  // nullopt once the supply is exhausted (finite spaces).
  virtual std::optional<Point> enumerate_point(std::uint64_t k) const = 0;

  // Countable base enumeration. nullopt once exhausted.
  virtual std::optional<BaseElement> enumerate_base(std::uint64_t k) const = 0;

  // The member of u when u denotes a singleton, nullopt otherwise.
  virtual std::optional<Point> singleton_member(const BaseElement& u) const = 0;

  // ccc certificate hook: a base element inside u whose subspace is ccc.
  // Identity for the spaces here, except finite spaces which descend to the
  // minimal open around u's canonical point.
  virtual BaseElement ccc_witness_subopen(const BaseElement& u) const;

  // Deterministic spread of points inside u, for membership spot checks.
  // Returns at least one and at most `count` points.
  virtual std::vector<Point> sample_points(const BaseElement& u, std::size_t count) const = 0;

 protected:
  Space(std::string name, bool first_countable, bool ccc, bool bco)
      : name_(std::move(name)), first_countable_(first_countable), ccc_(ccc), bco_(bco) {}

  void require_space(const std::string& got, const char* what) const;

 private:
  std::string name_;
  bool first_countable_;
  bool ccc_;
  bool bco_;
};

// Named space factory. Recognized names:
//   "rationals"            Q with the interval base
//   "baire-omega"          omega^omega with the cylinder base
//   "cantor"               2^omega with the cylinder base
//   "finite:<spec>"        finite space; <spec> is a preset name
//                          ("point", "sierpinski", "indiscrete2", "discrete2",
//                          "discrete3") or "<n>:<mask>,<mask>,..." listing the
//                          open-set lattice over n points
//   "remark-qd:<n>"        rationals plus isolated points d_0, d_1, ...;
//                          n bounds the isolated enumeration (0 = unbounded)
// Throws ConfigError on unknown names or malformed specs.
SpacePtr make_space(const std::string& name);

// The finite-space factory used directly by lattice enumeration code.
SpacePtr make_finite_space(std::uint32_t points, std::vector<std::uint32_t> open_masks,
                           std::string display_name);

// Every topology on a set of `points` elements (1 <= points <= 4), each as a
// ready-made space. Lattices are produced in a canonical deterministic order.
std::vector<SpacePtr> enumerate_topologies(std::uint32_t points);

// ---------------------------------------------------------------------------
// Convergence-forcing strategies ("W-point" data): a center point and a
// responder mapping each finite run of opponent picks to a base element
// containing the center. The canonical construction answers with the k-th
// neighborhood after k picks, so that successive picks are squeezed along the
// neighborhood base.
// ---------------------------------------------------------------------------

struct WPointStrategy {
  Point center;
  std::function<BaseElement(const std::vector<Point>&)> responder;
};

WPointStrategy gruenhage_w_strategy(const SpacePtr& space, const Point& center);

// ---------------------------------------------------------------------------
// Dense-open data. A dense open set enters the engine as an oracle: a
// procedure refining any nonempty open box U x V to a sub-box inside the set,
// plus an optional exact membership test used by certification.
// ---------------------------------------------------------------------------

class DenseOpenOracle {
 public:
  virtual ~DenseOpenOracle() = default;

  // Position in a schedule, carried for reporting.
  std::size_t schedule_index() const { return schedule_index_; }
  void set_schedule_index(std::size_t i) { schedule_index_ = i; }

  virtual std::string describe() const = 0;

  // Returns (U', V') with U' subset U, V' subset V and U' x V' inside the
  // dense open set. Throws FuelError when no sub-box is found within budget.
  virtual std::pair<BaseElement, BaseElement> refine(const BaseElement& u,
                                                     const BaseElement& v) const = 0;

  // Exact membership test when available.
  virtual std::optional<bool> member(const Point& x, const Point& y) const {
    (void)x;
    (void)y;
    return std::nullopt;
  }

 private:
  std::size_t schedule_index_ = 0;
};

using OraclePtr = std::shared_ptr<const DenseOpenOracle>;

// Everything except finitely many punctured pairs. Refinement splits a factor
// around the punctured coordinate and keeps the larger piece. With an empty
// puncture list this is the trivial dense open (identity refinement).
OraclePtr make_puncture_oracle(SpacePtr x_space, SpacePtr y_space,
                               std::vector<std::pair<Point, Point>> punctures);

// Always throws FuelError from refine; used to exercise fuel-exhaustion paths.
OraclePtr make_failing_oracle();

// Wraps an oracle but returns a deliberately non-nested box on the chosen
// call; used by fault-injection tests to prove the certifiers catch it.
OraclePtr make_faulty_oracle(OraclePtr inner, std::size_t corrupt_call);

// Checked refinement through an oracle: validates the nesting postcondition
// and throws InvariantViolation if the oracle misbehaves.
std::pair<BaseElement, BaseElement> dense_refine(const DenseOpenOracle& oracle,
                                                 const SpacePtr& x_space,
                                                 const SpacePtr& y_space, const BaseElement& u,
                                                 const BaseElement& v);

// ---------------------------------------------------------------------------
// Small helpers shared across modules.
// ---------------------------------------------------------------------------

// A sub-element of u avoiding the given point, when one exists.
std::optional<BaseElement> puncture_element(const Space& space, const BaseElement& u,
                                            const Point& avoid);

// Splits u into `parts` pairwise disjoint nonempty sub-elements when the
// space supports it (intervals and finite spaces do). Used by the
// disjoint-family generators.
std::optional<std::vector<BaseElement>> split_element(const Space& space, const BaseElement& u,
                                                      std::size_t parts);

}  // namespace bairegames::topology

#endif
