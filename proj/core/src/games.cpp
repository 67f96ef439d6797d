#include "bairegames/games.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bairegames/errors.hpp"

namespace bairegames::games {

const char* kind_name(GameKind k) {
  switch (k) {
    case GameKind::BanachMazur: return "banach-mazur";
    case GameKind::StrongChoquet: return "strong-choquet";
    case GameKind::Gruenhage: return "gruenhage";
  }
  return "?";
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Beta: return "beta";
    case Side::Alpha: return "alpha";
    case Side::PlayerOne: return "player-one";
    case Side::PlayerTwo: return "player-two";
  }
  return "?";
}

Side side_at(GameKind kind, std::size_t index) {
  const bool first = index % 2 == 0;
  if (kind == GameKind::Gruenhage) return first ? Side::PlayerOne : Side::PlayerTwo;
  return first ? Side::Beta : Side::Alpha;
}

Side History::side_of_next() const { return side_at(setup.kind, moves.size()); }

namespace {

const BaseElement* as_open(const Move& m) {
  if (const auto* e = std::get_if<BaseElement>(&m)) return e;
  if (const auto* p = std::get_if<PointedOpen>(&m)) return &p->open;
  return nullptr;
}

std::string slot_label(GameKind kind, std::size_t index) {
  std::ostringstream os;
  os << side_name(side_at(kind, index)) << " move " << index / 2;
  return os.str();
}

std::optional<std::string> check_element(const GameSetup& setup, const BaseElement& e) {
  if (e.space != setup.space->name())
    return "open set belongs to space '" + e.space + "', game is over '" +
           setup.space->name() + "'";
  return std::nullopt;
}

std::optional<std::string> check_point(const GameSetup& setup, const Point& p) {
  if (p.space != setup.space->name())
    return "point belongs to space '" + p.space + "', game is over '" +
           setup.space->name() + "'";
  return std::nullopt;
}

std::optional<std::string> banach_mazur_reason(const History& h, const Move& move) {
  const auto* open = std::get_if<BaseElement>(&move);
  if (!open) return std::string("expected an open set");
  if (auto r = check_element(h.setup, *open)) return r;
  if (h.moves.empty()) return std::nullopt;
  const BaseElement* prev = as_open(h.moves.back());
  if (!h.setup.space->contains(*open, *prev))
    return "open set does not refine the previous move";
  return std::nullopt;
}

std::optional<std::string> strong_choquet_reason(const History& h, const Move& move) {
  const auto& space = *h.setup.space;
  if (h.moves.size() % 2 == 0) {
    const auto* po = std::get_if<PointedOpen>(&move);
    if (!po) return std::string("expected a pointed open set");
    if (auto r = check_element(h.setup, po->open)) return r;
    if (auto r = check_point(h.setup, po->point)) return r;
    if (!space.member(po->point, po->open))
      return "proposed point lies outside the proposed open set";
    if (!h.moves.empty()) {
      const BaseElement* prev = as_open(h.moves.back());
      if (!space.contains(po->open, *prev))
        return "proposed open set does not refine the previous answer";
    }
    return std::nullopt;
  }
  const auto* open = std::get_if<BaseElement>(&move);
  if (!open) return std::string("expected an open set");
  if (auto r = check_element(h.setup, *open)) return r;
  const auto& proposal = std::get<PointedOpen>(h.moves.back());
  if (!space.member(proposal.point, *open))
    return "answer does not contain the proposed point";
  if (!space.contains(*open, proposal.open))
    return "answer is not inside the proposed open set";
  return std::nullopt;
}

std::optional<std::string> gruenhage_reason(const History& h, const Move& move) {
  const auto& space = *h.setup.space;
  if (!h.setup.center) return std::string("game has no center point");
  if (h.moves.size() % 2 == 0) {
    const auto* open = std::get_if<BaseElement>(&move);
    if (!open) return std::string("expected an open set");
    if (auto r = check_element(h.setup, *open)) return r;
    if (!space.member(*h.setup.center, *open))
      return "neighborhood does not contain the center";
    return std::nullopt;
  }
  const auto* point = std::get_if<Point>(&move);
  if (!point) return std::string("expected a point");
  if (auto r = check_point(h.setup, *point)) return r;
  const BaseElement* prev = as_open(h.moves.back());
  if (!space.member(*point, *prev))
    return "pick lies outside the offered neighborhood";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> illegal_reason(const History& history, const Move& move) {
  if (!history.setup.space) return std::string("game has no space");
  switch (history.setup.kind) {
    case GameKind::BanachMazur: return banach_mazur_reason(history, move);
    case GameKind::StrongChoquet: return strong_choquet_reason(history, move);
    case GameKind::Gruenhage: return gruenhage_reason(history, move);
  }
  return std::string("unknown game kind");
}

bool legal_move(const History& history, const Move& move) {
  return !illegal_reason(history, move).has_value();
}

void append_checked(History& history, Move move) {
  if (auto why = illegal_reason(history, move)) {
    throw IllegalStrategyMove(side_name(history.side_of_next()), history.round_of_next(),
                              *why);
  }
  history.moves.push_back(std::move(move));
}

std::vector<const BaseElement*> opens_in_play(const History& history) {
  std::vector<const BaseElement*> out;
  for (const Move& m : history.moves)
    if (const BaseElement* e = as_open(m)) out.push_back(e);
  return out;
}

std::vector<Move> opponent_moves(const History& history, Side side) {
  std::vector<Move> out;
  for (std::size_t i = 0; i < history.moves.size(); ++i)
    if (side_at(history.setup.kind, i) != side) out.push_back(history.moves[i]);
  return out;
}

const char* outcome_name(const Outcome& o) {
  if (std::holds_alternative<AlphaCertified>(o)) return "alpha-certified";
  if (std::holds_alternative<BetaCertified>(o)) return "beta-certified";
  return "undecided-at-depth";
}

namespace {

bool in_every_open(const topology::Space& space, const Point& p,
                   const std::vector<const BaseElement*>& opens, std::size_t* bad = nullptr) {
  for (std::size_t i = 0; i < opens.size(); ++i) {
    if (!space.member(p, *opens[i])) {
      if (bad) *bad = i;
      return false;
    }
  }
  return true;
}

std::optional<AlphaCertified> alpha_by_claim(const History& h,
                                             const std::vector<const BaseElement*>& opens,
                                             const Strategy* alpha) {
  if (!alpha || !alpha->witness_claim) return std::nullopt;
  std::optional<Point> claim = alpha->witness_claim(h);
  if (!claim) return std::nullopt;
  std::size_t bad = 0;
  if (claim->space != h.setup.space->name() ||
      !in_every_open(*h.setup.space, *claim, opens, &bad)) {
    std::ostringstream os;
    os << "strategy '" << alpha->name << "' claimed a witness outside the open at slot "
       << bad;
    throw InvariantViolation(os.str());
  }
  return AlphaCertified{*claim};
}

std::optional<AlphaCertified> alpha_by_singleton(const History& h,
                                                 const std::vector<const BaseElement*>& opens) {
  const auto& space = *h.setup.space;
  for (const BaseElement* e : opens) {
    std::optional<Point> only = space.singleton_member(*e);
    if (only && in_every_open(space, *only, opens)) return AlphaCertified{*only};
  }
  return std::nullopt;
}

std::optional<BetaCertified> beta_by_exclusion(const History& h, std::size_t depth,
                                               const std::vector<const BaseElement*>& opens) {
  if (depth == 0) return std::nullopt;
  const auto& space = *h.setup.space;
  BetaCertified cert;
  cert.prefix = depth;
  for (std::uint64_t k = 0; k < depth; ++k) {
    std::optional<Point> p = space.enumerate_point(k);
    if (!p) return std::nullopt;  // enumeration exhausted before the prefix
    bool excluded = false;
    for (std::size_t slot = 0; slot < opens.size() && !excluded; ++slot) {
      if (!space.member(*p, *opens[slot])) {
        cert.exclusions.emplace_back(k, slot);
        excluded = true;
      }
    }
    if (!excluded) return std::nullopt;
  }
  return cert;
}

}  // namespace

Outcome adjudicate(const History& history, std::size_t depth, const Strategy* alpha) {
  if (history.setup.kind == GameKind::Gruenhage || depth == 0) return UndecidedAtDepth{};
  const auto opens = opens_in_play(history);
  if (auto a = alpha_by_claim(history, opens, alpha)) return *a;
  if (auto a = alpha_by_singleton(history, opens)) return *a;
  if (auto b = beta_by_exclusion(history, depth, opens)) return *b;
  return UndecidedAtDepth{};
}

namespace {

// Slot index of the open moves within histories of `opens_in_play` order is
// not one-to-one with move slots for Gruenhage (picks are points), so the
// verifier recomputes the mapping explicitly.
std::vector<const BaseElement*> opens_by_slot(const History& h) {
  std::vector<const BaseElement*> by_slot(h.moves.size(), nullptr);
  for (std::size_t i = 0; i < h.moves.size(); ++i) by_slot[i] = as_open(h.moves[i]);
  return by_slot;
}

ConvergenceDiagnostics gruenhage_diagnostics(const History& h, std::size_t depth) {
  ConvergenceDiagnostics diag;
  const auto& space = *h.setup.space;
  const Point& center = *h.setup.center;
  std::vector<Point> picks;
  for (std::size_t i = 1; i < h.moves.size(); i += 2)
    picks.push_back(std::get<Point>(h.moves[i]));
  for (std::uint64_t k = 0; k < picks.size(); ++k) {
    std::uint64_t best = 0;
    for (std::uint64_t d = 1; d <= depth; ++d) {
      BaseElement nbhd = space.neighborhood(center, d);
      bool all = true;
      for (std::uint64_t j = k; j < picks.size() && all; ++j)
        all = space.member(picks[j], nbhd);
      if (!all) break;
      best = d;
    }
    diag.tail_depth.emplace_back(k, best);
  }
  return diag;
}

void check_strategy_fits(const GameSetup& setup, const Strategy& s, Side expected) {
  if (s.kind != setup.kind)
    throw ConfigError("strategy '" + s.name + "' plays " + kind_name(s.kind) +
                      ", game is " + kind_name(setup.kind));
  if (s.side != expected)
    throw ConfigError("strategy '" + s.name + "' plays " + side_name(s.side) +
                      ", expected " + side_name(expected));
  if (!s.choose) throw ConfigError("strategy '" + s.name + "' has no chooser");
}

}  // namespace

Transcript run_game(const GameSetup& setup, const Strategy& first, const Strategy& second,
                    std::size_t depth, const MoveObserver& observe) {
  if (!setup.space) throw ConfigError("game setup has no space");
  if (setup.kind == GameKind::Gruenhage) {
    if (!setup.center) throw ConfigError("gruenhage game needs a center point");
    if (!setup.space->member(*setup.center, setup.space->whole()))
      throw ConfigError("center point does not belong to the space");
  }
  check_strategy_fits(setup, first, side_at(setup.kind, 0));
  check_strategy_fits(setup, second, side_at(setup.kind, 1));

  Transcript t;
  t.history.setup = setup;
  t.depth = depth;
  for (std::size_t round = 0; round < depth; ++round) {
    for (const Strategy* s : {&first, &second}) {
      Move m = s->choose(t.history);
      append_checked(t.history, std::move(m));
      if (observe) observe(round, s->side, t.history.moves.back());
    }
  }
  const Strategy* alpha = second.side == Side::Alpha ? &second : nullptr;
  t.outcome = adjudicate(t.history, depth, alpha);
  if (setup.kind == GameKind::Gruenhage)
    t.diagnostics = gruenhage_diagnostics(t.history, depth);
  return t;
}

bool replay_legal(const Transcript& t, std::string* why) {
  History fresh;
  fresh.setup = t.history.setup;
  for (std::size_t i = 0; i < t.history.moves.size(); ++i) {
    if (auto r = illegal_reason(fresh, t.history.moves[i])) {
      if (why) *why = slot_label(fresh.setup.kind, i) + ": " + *r;
      return false;
    }
    fresh.moves.push_back(t.history.moves[i]);
  }
  return true;
}

bool verify_certificate(const Transcript& t, std::string* why) {
  const auto& space = *t.history.setup.space;
  const auto opens = opens_in_play(t.history);
  if (const auto* a = std::get_if<AlphaCertified>(&t.outcome)) {
    std::size_t bad = 0;
    if (a->witness.space != space.name() ||
        !in_every_open(space, a->witness, opens, &bad)) {
      if (why) *why = "witness misses the open at slot " + std::to_string(bad);
      return false;
    }
    return true;
  }
  if (const auto* b = std::get_if<BetaCertified>(&t.outcome)) {
    if (b->prefix == 0 || b->prefix < t.depth) {
      if (why) *why = "exclusion prefix shorter than the play depth";
      return false;
    }
    const auto by_slot = opens_by_slot(t.history);
    std::set<std::uint64_t> covered;
    for (const auto& [k, slot] : b->exclusions) {
      if (slot >= by_slot.size() || !by_slot[slot]) {
        if (why) *why = "exclusion cites a slot with no open set";
        return false;
      }
      std::optional<Point> p = space.enumerate_point(k);
      if (!p) {
        if (why) *why = "exclusion cites a point index past the enumeration";
        return false;
      }
      if (space.member(*p, *by_slot[slot])) {
        if (why)
          *why = "point " + std::to_string(k) + " actually lies in the open at slot " +
                 std::to_string(slot);
        return false;
      }
      covered.insert(k);
    }
    for (std::uint64_t k = 0; k < b->prefix; ++k) {
      if (!covered.count(k)) {
        if (why) *why = "no exclusion evidence for point " + std::to_string(k);
        return false;
      }
    }
    return true;
  }
  return true;  // undecided carries no claim
}

Transcript gruenhage_run(const SpacePtr& space, const topology::WPointStrategy& w,
                         const Strategy& replier, std::size_t depth) {
  GameSetup setup;
  setup.kind = GameKind::Gruenhage;
  setup.space = space;
  setup.center = w.center;

  Strategy center_player;
  center_player.name = "w-point-center";
  center_player.kind = GameKind::Gruenhage;
  center_player.side = Side::PlayerOne;
  center_player.choose = [w](const History& h) -> Move {
    std::vector<Point> picks;
    for (std::size_t i = 1; i < h.moves.size(); i += 2)
      picks.push_back(std::get<Point>(h.moves[i]));
    return w.responder(picks);
  };
  return run_game(setup, center_player, replier, depth);
}

bool finite_space_baire_oracle(const SpacePtr& space) {
  std::vector<BaseElement> opens;
  for (std::uint64_t k = 0;; ++k) {
    std::optional<BaseElement> e = space->enumerate_base(k);
    if (!e) break;
    opens.push_back(*e);
    if (k > 1u << 20) throw FuelError("open enumeration did not terminate");
  }
  auto dense = [&](const BaseElement& d) {
    return std::all_of(opens.begin(), opens.end(),
                       [&](const BaseElement& u) { return !space->disjoint(d, u); });
  };
  std::optional<BaseElement> core = space->whole();
  for (const BaseElement& d : opens) {
    if (!dense(d)) continue;
    core = space->intersect(*core, d);
    if (!core) return false;
  }
  return dense(*core);
}

}  // namespace bairegames::games
