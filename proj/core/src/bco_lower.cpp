#include "bairegames/bco_lower.hpp"

#include <utility>

#include "bairegames/errors.hpp"

namespace bairegames::transfer {

using topology::BaseElement;
using topology::Point;
using topology::PointedOpen;

SeqGameStrategy seq_beta_canonical(const topology::SpacePtr& space) {
  if (!space) throw ConfigError("seq first mover: null space");
  SeqGameStrategy s;
  s.name = "canonical";
  s.next = [space](const std::vector<krom::DecreasingSeq>& replies) -> SeqGameMove {
    if (replies.empty()) {
      Point center = space->pick_point(space->whole());
      return SeqGameMove{krom::canonical_krom_point(space, center), 1};
    }
    const krom::DecreasingSeq& fed = replies.back();
    Point center = space->pick_point(fed.last());
    BaseElement deeper = space->refine(center, fed.last(), 1);
    krom::DecreasingSeq stem = krom::extend(fed, std::move(deeper));
    std::size_t cut = stem.size();
    return SeqGameMove{krom::KromPoint(std::move(stem), krom::refine_tail(), center), cut};
  };
  return s;
}

BcoDescent::BcoDescent(topology::SpacePtr space, SeqGameStrategy sigma_star, std::uint64_t fuel)
    : space_(std::move(space)), sigma_star_(std::move(sigma_star)), fuel_(fuel) {
  if (!space_) throw ConfigError("descent: null space");
  if (!sigma_star_.next) throw ConfigError("descent: upstairs strategy has no chooser");
  if (fuel_ == 0) fuel_ = 1;
}

BaseElement BcoDescent::pick_v(krom::KromPoint& f, std::size_t cut, const Point& x,
                               bool* singleton) const {
  const BaseElement& edge = f.at(cut - 1);
  if (auto only = space_->singleton_member(edge); only.has_value()) {
    *singleton = true;
    return edge;
  }
  *singleton = false;
  for (std::uint64_t step = 1; step <= 8; ++step) {
    BaseElement cand = space_->refine(x, edge, step);
    if (space_->contains(cand, edge) && !space_->contains(edge, cand)) return cand;
  }
  throw UnsupportedSpaceError(
      "descent: no base element strictly below a non-singleton cut element around the point");
}

void BcoDescent::check_upstairs_move(SeqGameMove& move, std::size_t min_cut) {
  if (move.cut < std::max<std::size_t>(1, min_cut))
    throw IllegalStrategyMove(sigma_star_.name, rounds_.size(),
                              "upstairs cut is too shallow for the fed stem");
  if (!fed_.empty()) {
    const krom::DecreasingSeq& fed = fed_.back();
    krom::DecreasingSeq head = move.point.stem(fed.size());
    for (std::size_t p = 0; p < fed.size(); ++p)
      if (!(head.at(p) == fed.at(p)))
        throw IllegalStrategyMove(sigma_star_.name, rounds_.size(),
                                  "upstairs point disagrees with the fed stem");
  }
  // Spot check that the advertised point really hugs its witness.
  krom::k0_certify(move.point, 3, fuel_);
}

PointedOpen BcoDescent::first_move() {
  if (!rounds_.empty()) throw PreconditionError("descent: the opening move was already made");
  SeqGameMove move = sigma_star_.next(fed_);
  check_upstairs_move(move, 1);
  Point x = move.point.witness();
  bool singleton = false;
  BaseElement v = pick_v(move.point, move.cut, x, &singleton);
  rounds_.push_back(Round{std::move(move.point), move.cut, 0, false, x, v, singleton});
  return topology::make_pointed_open(*space_, std::move(x), std::move(v));
}

PointedOpen BcoDescent::next_move(const BaseElement& reply) {
  if (rounds_.empty()) throw PreconditionError("descent: the opening move has not been made");
  Round& prev = rounds_.back();
  if (reply.space != space_->name() || !space_->member(prev.x, reply) ||
      !space_->contains(reply, prev.v))
    throw PreconditionError("descent: reply is not pinched between the point and the open");

  std::size_t probe = prev.cut;
  for (;; ++probe) {
    if (probe - prev.cut >= fuel_)
      throw FuelError(
          "descent: no recorded element entered the reply within fuel; the carried "
          "neighborhood-base evidence is not biting");
    if (space_->contains(prev.point.at(probe), reply)) break;
  }
  prev.probe = probe;
  prev.probed = true;
  fed_.push_back(prev.point.stem(probe + 1));

  SeqGameMove move = sigma_star_.next(fed_);
  check_upstairs_move(move, probe + 1);
  Point x = move.point.witness();
  bool singleton = false;
  BaseElement v = pick_v(move.point, move.cut, x, &singleton);
  rounds_.push_back(Round{std::move(move.point), move.cut, 0, false, x, v, singleton});
  return topology::make_pointed_open(*space_, std::move(x), std::move(v));
}

krom::KromPoint BcoDescent::glue(const Point& survivor) {
  if (rounds_.empty()) throw PreconditionError("descent: nothing to glue");
  for (const Round& r : rounds_)
    if (!space_->member(survivor, r.v))
      throw PreconditionError("descent: the survivor misses a played open");

  std::vector<BaseElement> elems;
  std::size_t filled = 0;
  for (Round& r : rounds_) {
    for (std::size_t p = filled; p < r.cut; ++p) elems.push_back(r.point.at(p));
    filled = r.cut;
  }
  krom::DecreasingSeq glued = krom::make_decreasing(space_, std::move(elems));
  for (Round& r : rounds_)
    for (std::size_t p = 0; p < r.cut; ++p)
      if (!(glued.at(p) == r.point.at(p)))
        throw InvariantViolation("descent: glued sequence disagrees with a round below its cut");

  krom::KromPoint out(std::move(glued), krom::constant_tail(), survivor);
  for (const krom::DecreasingSeq& fed : fed_)
    if (!krom::basic_member(out, krom::make_basic_open(fed)))
      throw InvariantViolation("descent: glued sequence left the class of a fed stem");
  return out;
}

games::Strategy bco_ch_lower(const std::shared_ptr<BcoDescent>& descent) {
  if (!descent) throw ConfigError("descent: null state");
  games::Strategy s;
  s.name = "bco-descent";
  s.kind = games::GameKind::StrongChoquet;
  s.side = games::Side::Beta;
  s.choose = [descent](const games::History& h) -> games::Move {
    if (h.moves.empty()) return descent->first_move();
    return descent->next_move(std::get<BaseElement>(h.moves.back()));
  };
  return s;
}

}  // namespace bairegames::transfer
