#include "bairegames/topology.hpp"

#include "space_internal.hpp"

namespace bairegames::topology {

void Space::require_space(const std::string& got, const char* what) const {
  if (got != name_) {
    throw DomainError(std::string(what) + ": expected space '" + name_ + "', got '" + got + "'");
  }
}

BaseElement Space::ccc_witness_subopen(const BaseElement& u) const {
  require_space(u.space, "ccc_witness_subopen");
  return u;
}

PointedOpen make_pointed_open(const Space& space, Point point, BaseElement open) {
  if (!space.member(point, open)) {
    throw PreconditionError("pointed open: point is not a member of the open set");
  }
  return PointedOpen{std::move(point), std::move(open)};
}

WPointStrategy gruenhage_w_strategy(const SpacePtr& space, const Point& center) {
  if (!space->first_countable()) {
    throw UnsupportedSpaceError("w-point strategy requires a neighborhood base stream");
  }
  WPointStrategy w;
  w.center = center;
  w.responder = [space, center](const std::vector<Point>& picks) {
    // After k picks the responder descends to the k-th base member, so any
    // infinite run of picks is trapped by the whole neighborhood base.
    return space->neighborhood(center, picks.size());
  };
  return w;
}

std::pair<BaseElement, BaseElement> dense_refine(const DenseOpenOracle& oracle,
                                                 const SpacePtr& x_space,
                                                 const SpacePtr& y_space, const BaseElement& u,
                                                 const BaseElement& v) {
  auto [u2, v2] = oracle.refine(u, v);
  if (!x_space->contains(u2, u) || !y_space->contains(v2, v)) {
    throw InvariantViolation("dense oracle " + oracle.describe() +
                             " returned a box not nested in its input");
  }
  return {u2, v2};
}

namespace {

class PunctureOracle final : public DenseOpenOracle {
 public:
  PunctureOracle(SpacePtr xs, SpacePtr ys, std::vector<std::pair<Point, Point>> punctures)
      : xs_(std::move(xs)), ys_(std::move(ys)), punctures_(std::move(punctures)) {}

  std::string describe() const override {
    return "puncture[" + std::to_string(punctures_.size()) + "]";
  }

  std::pair<BaseElement, BaseElement> refine(const BaseElement& u,
                                             const BaseElement& v) const override {
    BaseElement cu = u;
    BaseElement cv = v;
    for (const auto& [px, py] : punctures_) {
      if (!xs_->member(px, cu) || !ys_->member(py, cv)) continue;
      // The pair sits in the current box; cutting the punctured coordinate
      // out of the first factor removes it for good.
      auto cut = puncture_element(*xs_, cu, px);
      if (cut) {
        cu = *cut;
        continue;
      }
      // First factor cannot avoid the point (it is a singleton); try the
      // second factor instead.
      cut = puncture_element(*ys_, cv, py);
      if (!cut) {
        throw FuelError("puncture oracle: box cannot avoid a punctured pair");
      }
      cv = *cut;
    }
    return {cu, cv};
  }

  std::optional<bool> member(const Point& x, const Point& y) const override {
    for (const auto& [px, py] : punctures_) {
      if (x == px && y == py) return false;
    }
    return true;
  }

 private:
  SpacePtr xs_;
  SpacePtr ys_;
  std::vector<std::pair<Point, Point>> punctures_;
};

class FailingOracle final : public DenseOpenOracle {
 public:
  std::string describe() const override { return "failing"; }

  std::pair<BaseElement, BaseElement> refine(const BaseElement&,
                                             const BaseElement&) const override {
    throw FuelError("dense oracle search budget exhausted");
  }
};

class FaultyOracle final : public DenseOpenOracle {
 public:
  FaultyOracle(OraclePtr inner, std::size_t corrupt_call)
      : inner_(std::move(inner)), corrupt_call_(corrupt_call) {}

  std::string describe() const override { return "faulty(" + inner_->describe() + ")"; }

  std::pair<BaseElement, BaseElement> refine(const BaseElement& u,
                                             const BaseElement& v) const override {
    std::size_t call = calls_++;
    auto out = inner_->refine(u, v);
    if (call == corrupt_call_) {
      // Produce a strict superset of the input factor, so the nesting
      // postcondition cannot hold no matter what the inner oracle did.
      out.first = widen(u);
      out.second = v;
    }
    return out;
  }

  static BaseElement widen(const BaseElement& u) {
    BaseElement out = u;
    if (auto* iv = std::get_if<Interval>(&out.desc)) {
      Interval wider = *iv;
      if (wider.lo)
        wider.lo = *wider.lo - 1;
      else if (wider.hi)
        wider.hi = *wider.hi + 1;
      out.desc = wider;
    } else if (auto* cyl = std::get_if<Cylinder>(&out.desc)) {
      if (!cyl->prefix.empty()) {
        Cylinder shorter = *cyl;
        shorter.prefix.pop_back();
        out.desc = shorter;
      }
    } else if (auto* qo = std::get_if<EuclideanWithTail>(&out.desc)) {
      EuclideanWithTail wider = *qo;
      if (wider.window.lo) wider.window.lo = *wider.window.lo - 1;
      out.desc = wider;
    }
    return out;
  }

  std::optional<bool> member(const Point& x, const Point& y) const override {
    return inner_->member(x, y);
  }

 private:
  OraclePtr inner_;
  std::size_t corrupt_call_;
  mutable std::size_t calls_ = 0;
};

}  // namespace

OraclePtr make_puncture_oracle(SpacePtr x_space, SpacePtr y_space,
                               std::vector<std::pair<Point, Point>> punctures) {
  return std::make_shared<PunctureOracle>(std::move(x_space), std::move(y_space),
                                          std::move(punctures));
}

OraclePtr make_failing_oracle() { return std::make_shared<FailingOracle>(); }

OraclePtr make_faulty_oracle(OraclePtr inner, std::size_t corrupt_call) {
  return std::make_shared<FaultyOracle>(std::move(inner), corrupt_call);
}

}  // namespace bairegames::topology
