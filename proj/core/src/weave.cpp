#include "bairegames/weave.hpp"

#include <algorithm>
#include <sstream>

#include "bairegames/errors.hpp"

namespace bairegames::transfer {

using topology::BaseElement;
using topology::Point;
using topology::PointedOpen;

bool StepReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NodeCheck& c) { return c.ok(); });
}

WeaveScenario::WeaveScenario(WeaveConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.x_space || !cfg_.y_space) throw ConfigError("weave: both spaces are required");
  if (cfg_.start_u.space != cfg_.x_space->name() || cfg_.start_v.space != cfg_.y_space->name())
    throw ConfigError("weave: start box does not match the spaces");
  if (!cfg_.anchor) {
    auto y = cfg_.y_space;
    cfg_.anchor = [y](const BaseElement& v) { return y->pick_point(v); };
  }
  if (!cfg_.w_strategy) {
    auto y = cfg_.y_space;
    cfg_.w_strategy = [y](const Point& center) {
      return topology::gruenhage_w_strategy(y, center);
    };
  }
  if (cfg_.sample_budget == 0) cfg_.sample_budget = 1;
}

bool WeaveScenario::sampled_ok(const topology::DenseOpenOracle& oracle, const BaseElement& u,
                               const BaseElement& v) const {
  std::size_t nx = std::min<std::size_t>(8, cfg_.sample_budget);
  std::size_t ny = std::max<std::size_t>(1, cfg_.sample_budget / nx);
  auto xs = cfg_.x_space->sample_points(u, nx);
  auto ys = cfg_.y_space->sample_points(v, ny);
  for (const Point& x : xs)
    for (const Point& y : ys)
      if (oracle.member(x, y) == std::optional<bool>(false)) return false;
  return true;
}

WeaveScenario::PlusTarget WeaveScenario::plus_target(const tree::TreeNode& t) const {
  auto [s, level_s] = tree::source(t);
  (void)level_s;
  const NodeRecord& src = records_.at(s);
  std::vector<Point> picks;
  picks.reserve(t.back() + 1);
  for (std::uint32_t i = 0; i <= t.back(); ++i) {
    tree::TreeNode fan = s;
    fan.push_back(i);
    picks.push_back(records_.at(fan).y);
  }
  BaseElement nbhd = cfg_.w_strategy(src.y).responder(picks);
  auto target = cfg_.y_space->intersect(src.v, nbhd);
  if (!target)
    throw InvariantViolation("weave: source open and responder output fail to intersect at " +
                             tree::node_label(t));
  return PlusTarget{std::move(nbhd), std::move(*target)};
}

BaseElement WeaveScenario::first_move() {
  if (!x_chain_.empty()) throw PreconditionError("weave: the opening move was already made");
  if (cfg_.schedule.empty()) throw PreconditionError("weave: empty oracle schedule");

  records_.emplace(tree::root(), NodeRecord{cfg_.anchor(cfg_.start_v), cfg_.start_v});

  const auto& oracle = *cfg_.schedule[0];
  StepReport rep;
  rep.step = 0;
  BaseElement u0 = cfg_.start_u;
  BaseElement v_minus = cfg_.start_v;
  try {
    auto refined = topology::dense_refine(oracle, cfg_.x_space, cfg_.y_space, cfg_.start_u,
                                          cfg_.start_v);
    u0 = std::move(refined.first);
    v_minus = std::move(refined.second);
  } catch (const FuelError& e) {
    throw FuelError(std::string("step 0 node () minus side: ") + e.what());
  }
  rep.refinements = 1;
  records_.emplace(tree::TreeNode{0}, NodeRecord{cfg_.anchor(v_minus), v_minus});

  NodeCheck check;
  check.node = tree::root();
  check.minus_exact = cfg_.x_space->contains(u0, cfg_.start_u) &&
                      cfg_.y_space->contains(v_minus, cfg_.start_v);
  check.minus_sampled = sampled_ok(oracle, u0, v_minus);
  rep.checks.push_back(check);
  reports_.push_back(rep);
  if (!rep.all_ok())
    throw InvariantViolation("weave: certification failed at step 0 node ()");

  x_chain_.push_back(u0);
  return u0;
}

BaseElement WeaveScenario::next_move(const BaseElement& reply) {
  if (x_chain_.empty()) throw PreconditionError("weave: the opening move has not been made");
  const std::size_t step = x_chain_.size();
  if (step >= cfg_.schedule.size())
    throw PreconditionError("weave: oracle schedule exhausted at step " + std::to_string(step));
  if (reply.space != cfg_.x_space->name() || !cfg_.x_space->contains(reply, x_chain_.back()))
    throw PreconditionError("weave: reply escapes the previous move at step " +
                            std::to_string(step));
  a_chain_.push_back(reply);

  const auto& oracle = *cfg_.schedule[step];
  const auto nodes = tree::level_nodes(step);
  StepReport rep;
  rep.step = step;

  BaseElement h = reply;
  std::map<tree::TreeNode, BaseElement> minus_of, plus_of;

  for (const auto& t : nodes) {
    const NodeRecord& rec = records_.at(t);
    try {
      auto refined = topology::dense_refine(oracle, cfg_.x_space, cfg_.y_space, h, rec.v);
      h = std::move(refined.first);
      minus_of.emplace(t, std::move(refined.second));
    } catch (const FuelError& e) {
      throw FuelError("step " + std::to_string(step) + " node " + tree::node_label(t) +
                      " minus side: " + e.what());
    }
    rep.refinements += 1;
    tree::TreeNode child = t;
    child.push_back(0);
    const BaseElement& v = minus_of.at(t);
    if (!records_.emplace(child, NodeRecord{cfg_.anchor(v), v}).second)
      throw InvariantViolation("weave: node recorded twice: " + tree::node_label(child));
  }

  for (const auto& t : nodes) {
    PlusTarget plus = plus_target(t);
    try {
      auto refined = topology::dense_refine(oracle, cfg_.x_space, cfg_.y_space, h, plus.target);
      h = std::move(refined.first);
      plus_of.emplace(t, std::move(refined.second));
    } catch (const FuelError& e) {
      throw FuelError("step " + std::to_string(step) + " node " + tree::node_label(t) +
                      " plus side: " + e.what());
    }
    rep.refinements += 1;
    tree::TreeNode child = t;
    child.back() += 1;
    const BaseElement& v = plus_of.at(t);
    if (!records_.emplace(child, NodeRecord{cfg_.anchor(v), v}).second)
      throw InvariantViolation("weave: node recorded twice: " + tree::node_label(child));
  }

  const BaseElement u_step = h;
  for (const auto& t : nodes) {
    NodeCheck check;
    check.node = t;
    check.has_plus = true;
    const NodeRecord& rec = records_.at(t);
    check.minus_exact = cfg_.x_space->contains(u_step, reply) &&
                        cfg_.y_space->contains(minus_of.at(t), rec.v);
    check.minus_sampled = sampled_ok(oracle, u_step, minus_of.at(t));
    PlusTarget plus = plus_target(t);
    auto [s, level_s] = tree::source(t);
    (void)level_s;
    check.plus_exact = cfg_.x_space->contains(u_step, reply) &&
                       cfg_.y_space->contains(plus_of.at(t), records_.at(s).v) &&
                       cfg_.y_space->contains(plus_of.at(t), plus.neighborhood);
    check.plus_sampled = sampled_ok(oracle, u_step, plus_of.at(t));
    rep.checks.push_back(std::move(check));
  }
  reports_.push_back(rep);
  if (!reports_.back().all_ok()) {
    for (const NodeCheck& c : reports_.back().checks)
      if (!c.ok())
        throw InvariantViolation("weave: certification failed at step " + std::to_string(step) +
                                 " node " + tree::node_label(c.node));
  }

  x_chain_.push_back(u_step);
  return u_step;
}

PointedOpen WeaveScenario::y_first_move() {
  if (records_.empty())
    throw PreconditionError("weave: the x side has not run, no records to walk");
  if (y_started_) throw PreconditionError("weave: the y walk already started");
  y_started_ = true;
  y_node_ = tree::root();
  const NodeRecord& rec = records_.at(y_node_);
  y_chain_.push_back(rec.v);
  return topology::make_pointed_open(*cfg_.y_space, rec.y, rec.v);
}

PointedOpen WeaveScenario::y_next_move(const BaseElement& reply) {
  if (!y_started_) throw PreconditionError("weave: the y walk has not started");
  const Point z = records_.at(y_node_).y;
  if (reply.space != cfg_.y_space->name() || !cfg_.y_space->member(z, reply) ||
      !cfg_.y_space->contains(reply, y_chain_.back()))
    throw PreconditionError("weave: y-side reply is not pinched between the point and the open");
  const std::uint64_t round = b_chain_.size();
  b_chain_.push_back(reply);

  for (std::uint64_t k = round;; ++k) {
    if (k - round >= cfg_.fuel)
      throw FuelError("weave: no recorded anchor entered the reply within fuel at round " +
                      std::to_string(round));
    tree::TreeNode node = y_node_;
    node.push_back(static_cast<std::uint32_t>(k));
    auto it = records_.find(node);
    if (it == records_.end())
      throw FuelError("weave: branch records exhausted at " + tree::node_label(node) +
                      "; the x side played too shallow for this walk");
    if (cfg_.y_space->member(it->second.y, reply)) {
      auto w = cfg_.y_space->intersect(reply, it->second.v);
      if (!w)
        throw InvariantViolation("weave: reply and branch open fail to intersect at " +
                                 tree::node_label(node));
      y_node_ = std::move(node);
      branch_.push_back(k);
      y_chain_.push_back(*w);
      return topology::make_pointed_open(*cfg_.y_space, it->second.y, *w);
    }
  }
}

std::vector<ConvergenceCheck> WeaveScenario::certify_convergence() const {
  std::vector<ConvergenceCheck> out;
  for (const auto& [t, rec] : records_) {
    if (t.empty() || t.back() == 0) continue;  // fan checks start at index 1
    tree::TreeNode s(t.begin(), t.end() - 1);
    std::vector<Point> picks;
    for (std::uint32_t i = 0; i < t.back(); ++i) {
      tree::TreeNode fan = s;
      fan.push_back(i);
      picks.push_back(records_.at(fan).y);
    }
    BaseElement nbhd = cfg_.w_strategy(records_.at(s).y).responder(picks);
    out.push_back(ConvergenceCheck{t, cfg_.y_space->member(rec.y, nbhd)});
  }
  return out;
}

WitnessReport WeaveScenario::assemble_witness(const Point& x, std::size_t depth) const {
  if (records_.empty()) throw PreconditionError("weave: nothing recorded yet");
  if (depth > cfg_.schedule.size())
    throw PreconditionError("weave: depth exceeds the oracle schedule");
  if (x_chain_.size() < depth)
    throw PreconditionError("weave: the x side played too shallow for the requested depth");

  WitnessReport report;
  report.x = x;
  report.y = records_.at(y_node_).y;
  if (!y_started_) report.y = records_.at(tree::root()).y;

  report.in_start_box = cfg_.x_space->member(x, cfg_.start_u) &&
                        cfg_.y_space->member(report.y, cfg_.start_v);
  if (!report.in_start_box)
    throw InvariantViolation("weave: assembled pair misses the start box");
  for (const BaseElement& u : x_chain_)
    if (!cfg_.x_space->member(x, u))
      throw InvariantViolation("weave: x witness misses the recorded chain");
  for (const BaseElement& w : y_chain_)
    if (!cfg_.y_space->member(report.y, w))
      throw InvariantViolation("weave: y witness misses the recorded walk");

  for (std::size_t n = 0; n < depth; ++n) {
    OracleCheck check;
    check.level = n;
    auto m = cfg_.schedule[n]->member(x, report.y);
    check.tested = m.has_value();
    check.ok = !m.has_value() || *m;
    if (m == std::optional<bool>(false))
      throw InvariantViolation("weave: assembled pair rejected by the oracle at level " +
                               std::to_string(n));
    report.oracle_checks.push_back(check);
  }
  report.certified = true;
  return report;
}

games::Strategy build_sigma_x(const std::shared_ptr<WeaveScenario>& scenario) {
  if (!scenario) throw ConfigError("weave: null scenario");
  games::Strategy s;
  s.name = "weave-x";
  s.kind = games::GameKind::BanachMazur;
  s.side = games::Side::Beta;
  s.choose = [scenario](const games::History& h) -> games::Move {
    const std::size_t round = h.moves.size() / 2;
    if (scenario->x_chain().size() != round)
      throw PreconditionError("weave: scenario state diverged from the history");
    if (round == 0) return scenario->first_move();
    return scenario->next_move(std::get<BaseElement>(h.moves.back()));
  };
  return s;
}

games::Strategy build_sigma_y(const std::shared_ptr<WeaveScenario>& scenario,
                              const games::Transcript& x_play, const Point& x_witness) {
  if (!scenario) throw ConfigError("weave: null scenario");
  const auto& cfg = scenario->config();
  if (x_play.history.setup.kind != games::GameKind::BanachMazur ||
      !x_play.history.setup.space ||
      x_play.history.setup.space->name() != cfg.x_space->name())
    throw PreconditionError("weave: the x transcript is not a shrink game on the x space");
  std::size_t betas = 0;
  for (std::size_t i = 0; i < x_play.history.moves.size(); i += 2) {
    const auto* e = std::get_if<BaseElement>(&x_play.history.moves[i]);
    if (!e || betas >= scenario->x_chain().size() || !(*e == scenario->x_chain()[betas]))
      throw PreconditionError("weave: the x transcript was not produced by this scenario");
    ++betas;
  }
  if (betas != scenario->x_chain().size())
    throw PreconditionError("weave: the x transcript is shorter than the recorded chain");
  for (const BaseElement* open : games::opens_in_play(x_play.history))
    if (!cfg.x_space->member(x_witness, *open))
      throw PreconditionError("weave: the claimed x witness does not survive the play");

  games::Strategy s;
  s.name = "weave-y";
  s.kind = games::GameKind::StrongChoquet;
  s.side = games::Side::Beta;
  s.choose = [scenario](const games::History& h) -> games::Move {
    if (h.moves.empty()) return scenario->y_first_move();
    return scenario->y_next_move(std::get<BaseElement>(h.moves.back()));
  };
  return s;
}

}  // namespace bairegames::transfer
