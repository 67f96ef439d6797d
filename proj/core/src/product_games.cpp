#include "bairegames/product_games.hpp"

#include <algorithm>
#include <sstream>

#include "bairegames/errors.hpp"

namespace bairegames::product {

using krom::DecreasingSeq;
using krom::KromBasicOpen;
using krom::KromPoint;
using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

ProductUniverse::ProductUniverse(std::vector<SpacePtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (!f) throw ConfigError("product universe: null factor");
}

const SpacePtr& ProductUniverse::factor(std::size_t i) const {
  if (i >= factors_.size())
    throw DomainError("product universe: coordinate " + std::to_string(i) + " out of range");
  return factors_[i];
}

void ProductUniverse::require_box(const ProductBox& b) const {
  for (const auto& [i, e] : b.factors) {
    const auto& f = factor(i);
    if (e.space != f->name())
      throw PreconditionError("box factor at coordinate " + std::to_string(i) +
                              " belongs to space '" + e.space + "'");
  }
}

void ProductUniverse::require_box(const KromBox& b) const {
  for (const auto& [i, stem] : b.stems) {
    const auto& f = factor(i);
    if (!stem.space || stem.space->name() != f->name())
      throw PreconditionError("stem at coordinate " + std::to_string(i) +
                              " belongs to the wrong space");
    if (stem.elems.empty())
      throw PreconditionError("stem at coordinate " + std::to_string(i) + " is empty");
    for (std::size_t k = 0; k + 1 < stem.elems.size(); ++k)
      if (!f->contains(stem.elems[k + 1], stem.elems[k]))
        throw PreconditionError("stem at coordinate " + std::to_string(i) +
                                " is not decreasing");
  }
}

bool ProductUniverse::box_subset(const ProductBox& inner, const ProductBox& outer) const {
  for (const auto& [i, e] : outer.factors) {
    auto it = inner.factors.find(i);
    const auto& f = factor(i);
    if (it != inner.factors.end()) {
      if (!f->contains(it->second, e)) return false;
    } else if (!f->contains(f->whole(), e)) {
      return false;  // unconstrained inner coordinate, proper outer constraint
    }
  }
  return true;
}

bool ProductUniverse::box_subset(const KromBox& inner, const KromBox& outer) const {
  for (const auto& [i, stem] : outer.stems) {
    auto it = inner.stems.find(i);
    if (it == inner.stems.end()) return false;  // prefix classes are never whole
    if (!krom::basic_subset(krom::make_basic_open(it->second), krom::make_basic_open(stem)))
      return false;
  }
  return true;
}

bool ProductUniverse::box_member(const std::vector<Point>& xs, const ProductBox& b) const {
  if (xs.size() != arity())
    throw PreconditionError("point tuple arity mismatch: " + std::to_string(xs.size()) +
                            " of " + std::to_string(arity()));
  for (const auto& [i, e] : b.factors)
    if (!factor(i)->member(xs[i], e)) return false;
  return true;
}

ProductBox ProductUniverse::project(const KromBox& b) const {
  ProductBox out;
  for (const auto& [i, stem] : b.stems) out.factors.emplace(i, stem.last());
  return out;
}

namespace {

BaseElement shrink_once(const SpacePtr& space, const BaseElement& e) {
  return space->refine(space->pick_point(e), e, 1);
}

// Lowest coordinate a box leaves unconstrained, if any.
template <typename Box>
std::optional<std::size_t> first_free(const ProductUniverse& u, const Box& b) {
  for (std::size_t i = 0; i < u.arity(); ++i) {
    if constexpr (std::is_same_v<Box, ProductBox>) {
      if (!b.factors.count(i)) return i;
    } else {
      if (!b.stems.count(i)) return i;
    }
  }
  return std::nullopt;
}

}  // namespace

ProductStrategy product_beta_canonical(const ProductUniverse& u) {
  ProductStrategy s;
  s.name = "canonical";
  s.next = [u](const std::vector<ProductBox>& replies) -> ProductBox {
    ProductBox v;
    if (replies.empty()) {
      if (u.arity() > 0) v.factors.emplace(0, shrink_once(u.factor(0), u.factor(0)->whole()));
      return v;
    }
    const ProductBox& last = replies.back();
    for (const auto& [i, e] : last.factors) v.factors.emplace(i, shrink_once(u.factor(i), e));
    if (auto j = first_free(u, last))
      v.factors.emplace(*j, shrink_once(u.factor(*j), u.factor(*j)->whole()));
    return v;
  };
  return s;
}

KromProductStrategy krom_beta_canonical(const ProductUniverse& u) {
  KromProductStrategy s;
  s.name = "canonical";
  s.next = [u](const std::vector<KromBox>& replies) -> KromBox {
    KromBox v;
    if (replies.empty()) {
      if (u.arity() > 0) {
        const auto& f = u.factor(0);
        v.stems.emplace(0, krom::make_decreasing(f, {shrink_once(f, f->whole())}));
      }
      return v;
    }
    const KromBox& last = replies.back();
    for (const auto& [i, stem] : last.stems)
      v.stems.emplace(i, krom::extend(stem, shrink_once(u.factor(i), stem.last())));
    if (auto j = first_free(u, last)) {
      const auto& f = u.factor(*j);
      v.stems.emplace(*j, krom::make_decreasing(f, {shrink_once(f, f->whole())}));
    }
    return v;
  };
  return s;
}

KromProductStrategy krom_lift_beta(const ProductUniverse& u, ProductStrategy sigma) {
  KromProductStrategy out;
  out.name = sigma.name + "+lifted";
  out.next = [u, sigma = std::move(sigma)](const std::vector<KromBox>& star_replies) -> KromBox {
    std::vector<ProductBox> ground;
    ground.reserve(star_replies.size());
    for (const auto& r : star_replies) ground.push_back(u.project(r));

    ProductBox v = sigma.next(ground);
    if (!ground.empty() && !u.box_subset(v, ground.back()))
      throw IllegalStrategyMove("beta", star_replies.size(),
                                "ground strategy left the projected box");

    KromBox lifted;
    const KromBox* prev = star_replies.empty() ? nullptr : &star_replies.back();
    for (const auto& [i, e] : v.factors) {
      if (prev) {
        auto it = prev->stems.find(i);
        if (it != prev->stems.end()) {
          try {
            lifted.stems.emplace(i, krom::extend(it->second, e));
          } catch (const PreconditionError&) {
            throw InvariantViolation("lift: answer does not nest under the stem at coordinate " +
                                     std::to_string(i));
          }
          continue;
        }
      }
      lifted.stems.emplace(i, krom::make_decreasing(u.factor(i), {e}));
    }
    // A coordinate the ground answer dropped (possible only when its
    // constraint was trivial) still needs its stem carried: prefix classes
    // cannot express "whole" once a stem exists.
    if (prev) {
      for (const auto& [i, stem] : prev->stems)
        if (!lifted.stems.count(i)) lifted.stems.emplace(i, stem);
    }
    return lifted;
  };
  return out;
}

namespace {

// The inductive step shared by the lowering strategy and its replay: attach
// a ground reply to the stems of the previous stem-level move.
KromBox attach_ground_reply(const ProductUniverse& u, const KromBox& prev_move,
                            const ProductBox& reply) {
  KromBox star;
  for (const auto& [i, e] : reply.factors) {
    auto it = prev_move.stems.find(i);
    if (it != prev_move.stems.end()) {
      try {
        star.stems.emplace(i, krom::extend(it->second, e));
      } catch (const PreconditionError&) {
        throw PreconditionError("lowering: reply escapes the stem at coordinate " +
                                std::to_string(i));
      }
    } else {
      star.stems.emplace(i, krom::make_decreasing(u.factor(i), {e}));
    }
  }
  for (const auto& [i, stem] : prev_move.stems)
    if (!star.stems.count(i)) star.stems.emplace(i, stem);
  return star;
}

struct LoweredReplay {
  KromPlay star;  // the full stem-level play induced by the ground replies
};

LoweredReplay replay_lowering(const ProductUniverse& u, const KromProductStrategy& sigma_star,
                              const std::vector<ProductBox>& ground_replies) {
  LoweredReplay lr;
  KromBox move = sigma_star.next({});
  lr.star.beta.push_back(move);
  for (std::size_t j = 0; j < ground_replies.size(); ++j) {
    KromBox star_reply = attach_ground_reply(u, move, ground_replies[j]);
    lr.star.alpha.push_back(star_reply);
    move = sigma_star.next(lr.star.alpha);
    if (!u.box_subset(move, star_reply))
      throw IllegalStrategyMove("beta", j + 1, "stem strategy left the attached box");
    lr.star.beta.push_back(move);
  }
  return lr;
}

}  // namespace

ProductStrategy krom_lower_beta(const ProductUniverse& u, KromProductStrategy sigma_star) {
  ProductStrategy out;
  out.name = sigma_star.name + "+lowered";
  out.next = [u, sigma_star = std::move(sigma_star)](
                 const std::vector<ProductBox>& ground_replies) -> ProductBox {
    LoweredReplay lr = replay_lowering(u, sigma_star, ground_replies);
    return u.project(lr.star.beta.back());
  };
  return out;
}

namespace {

template <typename Play>
bool alternation_legal(const ProductUniverse& u, const Play& p, std::string* why) {
  if (p.beta.size() != p.alpha.size() && p.beta.size() != p.alpha.size() + 1) {
    if (why) *why = "move counts are not an alternation";
    return false;
  }
  for (std::size_t j = 0; j < p.beta.size(); ++j) {
    u.require_box(p.beta[j]);
    if (j > 0 && !u.box_subset(p.beta[j], p.alpha[j - 1])) {
      if (why) *why = "beta move " + std::to_string(j) + " escapes the previous reply";
      return false;
    }
  }
  for (std::size_t j = 0; j < p.alpha.size(); ++j) {
    u.require_box(p.alpha[j]);
    if (!u.box_subset(p.alpha[j], p.beta[j])) {
      if (why) *why = "alpha move " + std::to_string(j) + " escapes the beta move";
      return false;
    }
  }
  return true;
}

}  // namespace

bool play_legal(const ProductUniverse& u, const ProductPlay& p, std::string* why) {
  return alternation_legal(u, p, why);
}

bool play_legal(const ProductUniverse& u, const KromPlay& p, std::string* why) {
  return alternation_legal(u, p, why);
}

std::vector<Point> extract_counterplay_lift(const ProductUniverse& u, const KromPlay& play,
                                            std::map<std::size_t, KromPoint> survivors) {
  std::vector<Point> xs;
  xs.reserve(u.arity());
  for (std::size_t i = 0; i < u.arity(); ++i) {
    bool constrained = std::any_of(play.beta.begin(), play.beta.end(),
                                   [i](const KromBox& b) { return b.stems.count(i) > 0; });
    if (!constrained) {
      xs.push_back(u.factor(i)->pick_point(u.factor(i)->whole()));
      continue;
    }
    auto it = survivors.find(i);
    if (it == survivors.end())
      throw PreconditionError("no survivor carried for constrained coordinate " +
                              std::to_string(i));
    for (const KromBox& b : play.beta) {
      auto st = b.stems.find(i);
      if (st != b.stems.end() &&
          !krom::basic_member(it->second, krom::make_basic_open(st->second)))
        throw InvariantViolation("survivor at coordinate " + std::to_string(i) +
                                 " misses a played stem");
    }
    xs.push_back(it->second.witness());
  }
  for (std::size_t j = 0; j < play.beta.size(); ++j) {
    if (!u.box_member(xs, u.project(play.beta[j])))
      throw InvariantViolation("extracted tuple misses projected move " + std::to_string(j));
  }
  return xs;
}

std::map<std::size_t, KromPoint> extract_counterplay_lower(const ProductUniverse& u,
                                                           const KromPlay& star_play,
                                                           const std::vector<Point>& xs) {
  if (xs.size() != u.arity())
    throw PreconditionError("witness tuple arity mismatch");
  std::map<std::size_t, KromPoint> family;
  for (std::size_t i = 0; i < u.arity(); ++i) {
    // Stems only grow along the play, so the deepest one is in the last move
    // that constrains the coordinate.
    const DecreasingSeq* deepest = nullptr;
    for (const KromBox& b : star_play.beta) {
      auto it = b.stems.find(i);
      if (it != b.stems.end()) deepest = &it->second;
    }
    std::optional<KromPoint> f;
    try {
      if (deepest) {
        f.emplace(*deepest, krom::constant_tail(), xs[i]);
      } else {
        const auto& sp = u.factor(i);
        f.emplace(krom::make_decreasing(sp, {sp->whole()}), krom::constant_tail(), xs[i]);
      }
    } catch (const PreconditionError& e) {
      throw InvariantViolation("coordinate " + std::to_string(i) +
                               ": ground witness does not thread the stems (" + e.what() + ")");
    }
    family.emplace(i, std::move(*f));
  }
  for (const KromBox& b : star_play.beta) {
    for (const auto& [i, stem] : b.stems) {
      if (!krom::basic_member(family.at(i), krom::make_basic_open(stem)))
        throw InvariantViolation("glued sequence at coordinate " + std::to_string(i) +
                                 " misses a played stem");
    }
  }
  return family;
}

namespace {

std::vector<BaseElement> lattice_opens(const SpacePtr& space) {
  std::vector<BaseElement> out;
  for (std::uint64_t k = 0;; ++k) {
    auto e = space->enumerate_base(k);
    if (!e) break;
    out.push_back(*e);
    if (out.size() > 256)
      throw UnsupportedSpaceError("reply menus need a finite open lattice; '" +
                                  space->name() + "' enumerates past 256");
  }
  return out;
}

}  // namespace

std::vector<ProductBox> alpha_reply_menu(const ProductUniverse& u, const ProductBox& current) {
  std::vector<ProductBox> out;
  out.push_back(current);  // the stall
  for (const auto& [i, e] : current.factors) {
    const auto& f = u.factor(i);
    for (const BaseElement& w : lattice_opens(f)) {
      if (w == e || !f->contains(w, e)) continue;
      ProductBox next = current;
      next.factors[i] = w;
      out.push_back(std::move(next));
    }
  }
  if (auto j = first_free(u, current)) {
    for (const BaseElement& w : lattice_opens(u.factor(*j))) {
      ProductBox next = current;
      next.factors.emplace(*j, w);
      out.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<KromBox> alpha_reply_menu(const ProductUniverse& u, const KromBox& current) {
  std::vector<KromBox> out;
  out.push_back(current);  // the stall
  for (const auto& [i, stem] : current.stems) {
    const auto& f = u.factor(i);
    for (const BaseElement& w : lattice_opens(f)) {
      if (!f->contains(w, stem.last())) continue;
      KromBox next = current;
      next.stems.at(i) = krom::extend(stem, w);
      out.push_back(std::move(next));
    }
  }
  if (auto j = first_free(u, current)) {
    const auto& f = u.factor(*j);
    for (const BaseElement& w : lattice_opens(f)) {
      KromBox next = current;
      next.stems.emplace(*j, krom::make_decreasing(f, {w}));
      out.push_back(std::move(next));
    }
  }
  return out;
}

namespace {

void lift_walk(const ProductUniverse& u, const KromProductStrategy& sigma_star,
               std::vector<KromBox>& replies, std::vector<KromBox>& betas, std::size_t depth,
               DualityReport& rpt) {
  KromBox move;
  try {
    move = sigma_star.next(replies);
    rpt.lift_moves += 1;
    u.require_box(move);
    if (!replies.empty() && !u.box_subset(move, replies.back()))
      throw InvariantViolation("lifted move escapes the reply");
  } catch (const EngineError& e) {
    rpt.failures.push_back(std::string("lift move: ") + e.what());
    return;
  }
  betas.push_back(move);
  if (replies.size() >= depth) {
    rpt.plays += 1;
    KromPlay play{betas, replies};
    std::map<std::size_t, KromPoint> survivors;
    for (const auto& [i, stem] : betas.back().stems) {
      survivors.emplace(i, KromPoint(stem, krom::constant_tail(),
                                     u.factor(i)->pick_point(stem.last())));
    }
    try {
      extract_counterplay_lift(u, play, std::move(survivors));
      rpt.extraction_checks += 1;
    } catch (const EngineError& e) {
      rpt.failures.push_back(std::string("lift extraction: ") + e.what());
    }
  } else {
    for (const KromBox& reply : alpha_reply_menu(u, move)) {
      replies.push_back(reply);
      lift_walk(u, sigma_star, replies, betas, depth, rpt);
      replies.pop_back();
      if (rpt.failures.size() > 8) break;  // enough evidence, stop flooding
    }
  }
  betas.pop_back();
}

void lower_walk(const ProductUniverse& u, const KromProductStrategy& sigma_star,
                const ProductStrategy& sigma, std::vector<ProductBox>& replies,
                std::vector<ProductBox>& betas, std::size_t depth, DualityReport& rpt) {
  ProductBox move;
  try {
    move = sigma.next(replies);
    rpt.lift_moves += 1;
    u.require_box(move);
    if (!replies.empty() && !u.box_subset(move, replies.back()))
      throw InvariantViolation("lowered move escapes the reply");
  } catch (const EngineError& e) {
    rpt.failures.push_back(std::string("lower move: ") + e.what());
    return;
  }
  betas.push_back(move);
  if (replies.size() >= depth) {
    rpt.plays += 1;
    try {
      LoweredReplay lr = replay_lowering(u, sigma_star, replies);
      std::vector<Point> xs;
      for (std::size_t i = 0; i < u.arity(); ++i) {
        auto it = betas.back().factors.find(i);
        const auto& f = u.factor(i);
        xs.push_back(f->pick_point(it == betas.back().factors.end() ? f->whole() : it->second));
      }
      // The lowered play must carry its own witness tuple before gluing.
      for (const ProductBox& b : betas)
        if (!u.box_member(xs, b)) throw InvariantViolation("tuple misses a lowered move");
      extract_counterplay_lower(u, lr.star, xs);
      rpt.extraction_checks += 1;
    } catch (const EngineError& e) {
      rpt.failures.push_back(std::string("lower extraction: ") + e.what());
    }
  } else {
    for (const ProductBox& reply : alpha_reply_menu(u, move)) {
      replies.push_back(reply);
      lower_walk(u, sigma_star, sigma, replies, betas, depth, rpt);
      replies.pop_back();
      if (rpt.failures.size() > 8) break;
    }
  }
  betas.pop_back();
}

}  // namespace

DualityReport exhaustive_lift_duality(const ProductUniverse& u, std::size_t depth) {
  DualityReport rpt;
  KromProductStrategy sigma_star = krom_lift_beta(u, product_beta_canonical(u));
  std::vector<KromBox> replies;
  std::vector<KromBox> betas;
  lift_walk(u, sigma_star, replies, betas, depth, rpt);
  return rpt;
}

DualityReport exhaustive_lower_duality(const ProductUniverse& u, std::size_t depth) {
  DualityReport rpt;
  KromProductStrategy sigma_star = krom_beta_canonical(u);
  ProductStrategy sigma = krom_lower_beta(u, sigma_star);
  std::vector<ProductBox> replies;
  std::vector<ProductBox> betas;
  lower_walk(u, sigma_star, sigma, replies, betas, depth, rpt);
  return rpt;
}

}  // namespace bairegames::product
