#include "bairegames/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "bairegames/bco_lower.hpp"
#include "bairegames/errors.hpp"
#include "bairegames/games.hpp"
#include "bairegames/krom.hpp"
#include "bairegames/product_games.hpp"
#include "bairegames/strategies.hpp"
#include "bairegames/topology.hpp"
#include "bairegames/tree.hpp"
#include "bairegames/weave.hpp"

namespace bairegames::verify {

using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

namespace {

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw CheckFailed(msg);
}

void run_check(SuiteReport& rpt, const std::string& name,
               const std::function<std::string()>& body) {
  CheckResult r;
  r.name = name;
  try {
    r.detail = body();
    r.passed = true;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  rpt.checks.push_back(std::move(r));
}

bool is_full(const SuiteOptions& opts) { return opts.budget == "full"; }

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {
      "rationals", "baire-omega", "cantor", "finite:sierpinski", "finite:discrete3",
      "remark-qd:6"};
  return names;
}

// ------------------------------------------------------------------ topology

std::string space_laws(const SpacePtr& space, std::size_t bases) {
  const BaseElement whole = space->whole();
  require(space->contains(whole, whole), "whole not contained in itself");
  std::size_t seen = 0;
  for (std::uint64_t k = 0; k < bases; ++k) {
    auto u = space->enumerate_base(k);
    if (!u) break;
    ++seen;
    require(space->contains(*u, whole), "enumerated base element escapes the whole space");
    Point x = space->pick_point(*u);
    require(space->member(x, *u), "canonical point misses its element");
    BaseElement r0 = space->refine(x, *u, 0);
    BaseElement r1 = space->refine(x, *u, 1);
    require(space->member(x, r0) && space->member(x, r1), "refinement loses its center");
    require(space->contains(r0, *u), "refinement escapes its element");
    require(space->contains(r1, r0), "deeper refinement fails to nest");
    BaseElement n0 = space->neighborhood(x, 0);
    BaseElement n1 = space->neighborhood(x, 1);
    BaseElement n2 = space->neighborhood(x, 2);
    require(space->member(x, n2), "neighborhood loses its center");
    require(space->contains(n1, n0) && space->contains(n2, n1),
            "neighborhood base fails to decrease");
    for (const Point& s : space->sample_points(*u, 5))
      require(space->member(s, *u), "sample point misses its element");
    if (auto only = space->singleton_member(*u))
      require(space->member(*only, *u), "singleton member misses its element");
  }
  require(seen > 0, "base enumeration is empty");
  std::ostringstream os;
  os << seen << " base elements checked";
  return os.str();
}

// `bare_tails` marks the swarm family, where a pair of interval windows can
// overlap in a bare tail of isolated points that no base element denotes.
// Everywhere else a nonempty overlap must be representable. The base axiom
// is checked regardless: every sampled shared point must admit a canonical
// neighborhood inside both elements.
std::string intersect_laws(const SpacePtr& space, std::size_t bases, bool bare_tails) {
  std::size_t pairs = 0, bare = 0;
  std::vector<BaseElement> elems;
  for (std::uint64_t k = 0; k < bases; ++k) {
    auto u = space->enumerate_base(k);
    if (!u) break;
    elems.push_back(*u);
  }
  for (const BaseElement& u : elems)
    for (const BaseElement& v : elems) {
      ++pairs;
      auto w = space->intersect(u, v);
      bool disj = space->disjoint(u, v);
      if (disj) {
        require(!w.has_value(), "disjoint pair produced an intersection element");
      } else if (w.has_value()) {
        require(space->contains(*w, u) && space->contains(*w, v),
                "intersection escapes an argument");
        Point x = space->pick_point(*w);
        require(space->member(x, u) && space->member(x, v),
                "intersection's point misses an argument");
      } else {
        require(bare_tails, "overlapping pair failed to intersect representably");
        ++bare;
      }
      for (const Point& x : space->sample_points(u, 3)) {
        if (!space->member(x, v)) continue;
        require(!disj, "disjoint pair shares a sampled point");
        if (w) require(space->member(x, *w), "shared sample escapes the intersection");
        bool pinched = false;
        for (std::uint64_t k = 0; k <= 8 && !pinched; ++k) {
          BaseElement n = space->neighborhood(x, k);
          pinched = space->contains(n, u) && space->contains(n, v);
        }
        require(pinched, "no canonical neighborhood fits under the overlap");
      }
    }
  std::ostringstream os;
  os << pairs << " pairs checked";
  if (bare > 0) os << ", " << bare << " bare-tail overlaps";
  return os.str();
}

std::string puncture_oracle_law() {
  SpacePtr q = topology::make_space("rationals");
  Point zero{q->name(), topology::RationalPoint{Rational(0)}};
  auto oracle = topology::make_puncture_oracle(q, q, {{zero, zero}});
  require(oracle->member(zero, zero) == std::optional<bool>(false),
          "punctured pair passes the membership test");
  auto [u, v] = topology::dense_refine(*oracle, q, q, q->whole(), q->whole());
  require(q->contains(u, q->whole()) && q->contains(v, q->whole()),
          "refinement escapes the given box");
  for (const Point& x : q->sample_points(u, 4))
    for (const Point& y : q->sample_points(v, 4))
      require(oracle->member(x, y) == std::optional<bool>(true),
              "refined box still meets the puncture");
  return "refined box avoids the puncture";
}

std::string oracle_fault_paths() {
  SpacePtr q = topology::make_space("rationals");
  auto trivial = topology::make_puncture_oracle(q, q, {});
  auto faulty = topology::make_faulty_oracle(trivial, 0);
  // Bounded boxes: corruption widens an endpoint, and the whole line has
  // none to widen.
  Point zero{q->name(), topology::RationalPoint{Rational(0)}};
  BaseElement box = q->neighborhood(zero, 0);
  bool caught = false;
  try {
    topology::dense_refine(*faulty, q, q, box, box);
  } catch (const InvariantViolation&) {
    caught = true;
  }
  require(caught, "non-nested oracle output went unnoticed");
  auto failing = topology::make_failing_oracle();
  caught = false;
  try {
    topology::dense_refine(*failing, q, q, q->whole(), q->whole());
  } catch (const FuelError&) {
    caught = true;
  }
  require(caught, "fuel exhaustion did not surface");
  return "both fault paths surface";
}

std::string finite_baire_sweep(bool full) {
  std::size_t checked = 0;
  for (const char* preset :
       {"finite:point", "finite:sierpinski", "finite:indiscrete2", "finite:discrete2",
        "finite:discrete3"}) {
    require(games::finite_space_baire_oracle(topology::make_space(preset)),
            std::string("dense intersection came up empty on ") + preset);
    ++checked;
  }
  std::uint32_t points = full ? 3 : 2;
  for (const auto& space : topology::enumerate_topologies(points)) {
    require(games::finite_space_baire_oracle(space),
            "dense intersection came up empty on " + space->name());
    ++checked;
  }
  std::ostringstream os;
  os << checked << " finite spaces swept";
  return os.str();
}

SuiteReport topology_suite(const SuiteOptions& opts) {
  SuiteReport rpt;
  rpt.suite = "topology";
  const std::size_t bases = is_full(opts) ? 24 : 10;
  for (const std::string& name : zoo_names()) {
    SpacePtr space = topology::make_space(name);
    run_check(rpt, "laws:" + name, [&] { return space_laws(space, bases); });
    run_check(rpt, "intersect:" + name, [&] {
      return intersect_laws(space, bases, name.rfind("remark-qd", 0) == 0);
    });
  }
  run_check(rpt, "puncture-oracle", puncture_oracle_law);
  run_check(rpt, "oracle-fault-paths", oracle_fault_paths);
  run_check(rpt, "finite-baire", [&] { return finite_baire_sweep(is_full(opts)); });
  return rpt;
}

// --------------------------------------------------------------------- games

std::string fuzzed_referee(const SuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed * 0x2545f4914f6cdd1dull + 1);
  const std::size_t runs = is_full(opts) ? 400 : 120;
  const std::size_t max_depth = is_full(opts) ? 12 : 8;
  std::size_t alpha_n = 0, beta_n = 0, undecided = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    SpacePtr space = topology::make_space(zoo_names()[rng() % zoo_names().size()]);
    games::GameKind kind = static_cast<games::GameKind>(rng() % 3);
    games::Side first_side, second_side;
    if (kind == games::GameKind::Gruenhage) {
      first_side = games::Side::PlayerOne;
      second_side = games::Side::PlayerTwo;
    } else {
      first_side = games::Side::Beta;
      second_side = games::Side::Alpha;
    }
    strategies::StrategyOptions sopts;
    sopts.seed = rng();
    sopts.fuel = opts.fuel;
    sopts.center = space->pick_point(space->whole());
    auto first_names = strategies::strategy_names(kind, first_side);
    auto second_names = strategies::strategy_names(kind, second_side);
    games::Strategy first = strategies::make_strategy(first_names[rng() % first_names.size()],
                                                      kind, first_side, space, sopts);
    games::Strategy second = strategies::make_strategy(
        second_names[rng() % second_names.size()], kind, second_side, space, sopts);
    games::GameSetup setup{kind, space, std::nullopt};
    if (kind == games::GameKind::Gruenhage) setup.center = sopts.center;
    std::size_t depth = 1 + rng() % max_depth;
    games::Transcript t = games::run_game(setup, first, second, depth);
    std::string why;
    require(games::replay_legal(t, &why), "replay rejected a refereed game: " + why);
    require(games::verify_certificate(t, &why), "certificate failed re-verification: " + why);
    if (std::holds_alternative<games::AlphaCertified>(t.outcome)) ++alpha_n;
    else if (std::holds_alternative<games::BetaCertified>(t.outcome)) ++beta_n;
    else ++undecided;
  }
  std::ostringstream os;
  os << runs << " runs: " << alpha_n << " alpha-certified, " << beta_n << " beta-certified, "
     << undecided << " undecided";
  return os.str();
}

std::string tamper_rejected() {
  SpacePtr q = topology::make_space("rationals");
  games::Strategy beta = strategies::make_strategy("shrink", games::GameKind::BanachMazur,
                                                   games::Side::Beta, q);
  games::Strategy alpha = strategies::make_strategy("shrink", games::GameKind::BanachMazur,
                                                    games::Side::Alpha, q);
  games::GameSetup setup{games::GameKind::BanachMazur, q, std::nullopt};
  games::Transcript t = games::run_game(setup, beta, alpha, 4);
  require(games::replay_legal(t, nullptr), "untampered transcript failed replay");
  games::Transcript bad = t;
  bad.history.moves[3] = bad.history.moves[0];  // widen a later move
  std::string why;
  require(!games::replay_legal(bad, &why), "widened move slipped through replay");
  return "tamper detected: " + why;
}

std::string fake_claim_rejected() {
  SpacePtr q = topology::make_space("rationals");
  games::Strategy beta = strategies::make_strategy("canonical", games::GameKind::StrongChoquet,
                                                   games::Side::Beta, q);
  games::Strategy alpha = strategies::make_strategy("echo", games::GameKind::StrongChoquet,
                                                    games::Side::Alpha, q);
  games::GameSetup setup{games::GameKind::StrongChoquet, q, std::nullopt};
  games::Transcript honest = games::run_game(setup, beta, alpha, 3);

  alpha.witness_claim = [q](const games::History& h) -> std::optional<Point> {
    Rational outside(1000001);
    for (const BaseElement* e : games::opens_in_play(h)) {
      const auto& iv = std::get<topology::Interval>(e->desc);
      if (iv.hi && *iv.hi + 1 > outside) outside = *iv.hi + 1;
    }
    return Point{q->name(), topology::RationalPoint{outside}};
  };
  bool caught = false;
  try {
    games::adjudicate(honest.history, honest.depth, &alpha);
  } catch (const InvariantViolation&) {
    caught = true;
  }
  require(caught, "an out-of-play witness claim was accepted");
  return "bogus claim raised an invariant violation";
}

std::string diagonal_exclusions() {
  SpacePtr q = topology::make_space("rationals");
  games::Strategy beta = strategies::make_strategy("diagonal", games::GameKind::BanachMazur,
                                                   games::Side::Beta, q);
  games::Strategy alpha = strategies::make_strategy("shrink", games::GameKind::BanachMazur,
                                                    games::Side::Alpha, q);
  games::GameSetup setup{games::GameKind::BanachMazur, q, std::nullopt};
  games::Transcript t = games::run_game(setup, beta, alpha, 8);
  const auto* b = std::get_if<games::BetaCertified>(&t.outcome);
  require(b != nullptr, "diagonal play did not produce an exclusion certificate");
  require(b->prefix >= 8, "exclusion certificate covers too little of the enumeration");
  std::string why;
  require(games::verify_certificate(t, &why), "exclusion certificate failed: " + why);
  return "prefix " + std::to_string(b->prefix) + " re-verified";
}

SuiteReport games_suite(const SuiteOptions& opts) {
  SuiteReport rpt;
  rpt.suite = "games";
  run_check(rpt, "fuzzed-referee", [&] { return fuzzed_referee(opts); });
  run_check(rpt, "tamper-rejected", tamper_rejected);
  run_check(rpt, "fake-claim-rejected", fake_claim_rejected);
  run_check(rpt, "diagonal-exclusions", diagonal_exclusions);
  return rpt;
}

// ---------------------------------------------------------------------- tree

SuiteReport tree_suite(const SuiteOptions& opts) {
  SuiteReport rpt;
  rpt.suite = "tree";
  const std::uint64_t max_n = is_full(opts) ? 12 : 10;
  run_check(rpt, "level-sizes", [&] {
    require(tree::level_nodes(0).size() == 1, "level 0 must hold exactly the root");
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      auto nodes = tree::level_nodes(n);
      require(nodes.size() == (std::uint64_t(1) << (n - 1)),
              "level " + std::to_string(n) + " has the wrong size");
      for (const auto& t : nodes) {
        require(tree::level(t) == n, "node reports the wrong level");
        require(tree::in_tree_level(t, n), "node not recognized in its own level");
      }
    }
    return "levels 0.." + std::to_string(max_n) + " sized 2^(n-1)";
  });
  run_check(rpt, "successor-source-inverse", [&] {
    std::size_t seen = 0;
    for (std::uint64_t n = 1; n + 1 <= max_n; ++n) {
      for (const auto& t : tree::level_nodes(n)) {
        auto [minus, plus] = tree::successors(t);
        require(tree::source(minus).first == t, "minus successor forgets its source");
        if (t.size() > 1 || t.back() > 0) {
          // plus successor shares t's own source
          require(tree::source(plus).first == tree::source(t).first,
                  "plus successor changes source");
        }
        require(tree::level(minus) == n + 1 && tree::level(plus) == n + 1,
                "successors leave the next level");
        ++seen;
      }
    }
    return std::to_string(seen) + " nodes replayed";
  });
  run_check(rpt, "labels", [&] {
    require(tree::node_label(tree::root()) == "()", "root label");
    require(tree::node_label({0, 1}) == "(0,1)", "two-digit label");
    return "labels render";
  });
  return rpt;
}

// ---------------------------------------------------------------------- krom

krom::KromPoint random_point(const SpacePtr& space, std::mt19937_64& rng) {
  std::vector<std::uint32_t> prefix(rng() % 4);
  std::uint32_t spread = space->name() == "cantor" ? 2 : 4;
  for (auto& d : prefix) d = static_cast<std::uint32_t>(rng() % spread);
  Point center{space->name(),
               topology::SeqPoint{std::move(prefix), static_cast<std::uint32_t>(rng() % spread)}};
  return krom::canonical_krom_point(space, center);
}

std::string ultrametric_laws(const SuiteOptions& opts) {
  SpacePtr space = topology::make_space("baire-omega");
  std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull + 2);
  std::uint64_t exact_triples = 0;
  const std::uint64_t triples = std::max<std::uint64_t>(1, opts.triples);
  for (std::uint64_t i = 0; i < triples; ++i) {
    krom::KromPoint f = random_point(space, rng);
    krom::KromPoint g = random_point(space, rng);
    krom::KromPoint h = random_point(space, rng);
    auto dff = krom::ultradist(f, f, 64);
    require(dff.exact && dff.value == 0, "self distance must be exactly zero");
    auto dfg = krom::ultradist(f, g, 64);
    auto dgf = krom::ultradist(g, f, 64);
    require(dfg.exact == dgf.exact && dfg.value == dgf.value, "distance is not symmetric");
    auto dgh = krom::ultradist(g, h, 64);
    auto dfh = krom::ultradist(f, h, 64);
    if (dfg.exact && dgh.exact && dfh.exact) {
      ++exact_triples;
      require(dfh.value <= std::max(dfg.value, dgh.value),
              "strong triangle inequality failed");
    }
  }
  std::ostringstream os;
  os << triples << " triples, " << exact_triples << " fully exact";
  return os.str();
}

std::string k0_roundtrip(const SuiteOptions& opts) {
  SpacePtr space = topology::make_space("baire-omega");
  Point center{space->name(), topology::SeqPoint{{1, 2}, 0}};
  krom::KromPoint f = krom::canonical_krom_point(space, center);
  krom::K0Certificate cert = krom::k0_certify(f, 6, opts.fuel);
  require(krom::k0_verify(f, cert, 6), "fresh certificate failed verification");
  krom::K0Certificate broken = cert;
  require(!broken.evidence.empty(), "certificate carries no evidence");
  broken.evidence.back().second = 0;  // breaks strict monotonicity
  require(!krom::k0_verify(f, broken, 6), "doctored certificate passed verification");
  return "certify/verify round trip with tamper detection";
}

std::string splice_shift(const SuiteOptions& opts) {
  SpacePtr space = topology::make_space("baire-omega");
  Point center{space->name(), topology::SeqPoint{{3}, 0}};
  krom::KromPoint g = krom::canonical_krom_point(space, center);
  krom::DecreasingSeq h = krom::make_decreasing(space, {space->whole(), space->whole()});
  krom::KromPoint spliced = krom::splice_below(h, g);
  require(krom::basic_member(spliced, krom::make_basic_open(h)),
          "spliced point left the stem's class");
  krom::K0Certificate cert = krom::k0_certify(spliced, 5, opts.fuel);
  for (const auto& [k, j] : cert.evidence) {
    if (k == 0) continue;  // the wide head can satisfy depth 0 early
    require(j == k + h.size(), "shifted evidence index is off at depth " + std::to_string(k));
  }
  return "evidence shifted by " + std::to_string(h.size());
}

std::string pi_base_projection(const SuiteOptions& opts) {
  SpacePtr space = topology::make_space("rationals");
  krom::DecreasingSeq stem = krom::make_decreasing(space, {space->whole()});
  stem = krom::ccc_pi_base_step(stem);
  krom::KromBasicOpen below = krom::make_basic_open(stem);
  const std::size_t count = is_full(opts) ? 100 : 25;
  auto family = krom::generate_disjoint_family(below, count, opts.seed);
  require(family.size() == count, "family came up short");
  std::string why;
  require(krom::disjoint_family_projection(below, family, &why), why);
  return std::to_string(count) + " disjoint stems project disjointly";
}

SuiteReport krom_suite(const SuiteOptions& opts) {
  SuiteReport rpt;
  rpt.suite = "krom";
  run_check(rpt, "ultrametric-laws", [&] { return ultrametric_laws(opts); });
  run_check(rpt, "k0-roundtrip", [&] { return k0_roundtrip(opts); });
  run_check(rpt, "splice-shift", [&] { return splice_shift(opts); });
  run_check(rpt, "pi-base-projection", [&] { return pi_base_projection(opts); });
  return rpt;
}

// ------------------------------------------------------------------ transfer

transfer::WeaveConfig small_weave(std::size_t depth) {
  SpacePtr q = topology::make_space("rationals");
  transfer::WeaveConfig wc;
  wc.x_space = q;
  wc.y_space = q;
  wc.start_u = q->whole();
  wc.start_v = q->whole();
  for (std::size_t n = 0; n < depth; ++n) {
    Point p{q->name(), topology::RationalPoint{enumerate_rational(n)}};
    wc.schedule.push_back(topology::make_puncture_oracle(q, q, {{p, p}}));
  }
  return wc;
}

std::string weave_counts(const SuiteOptions& opts) {
  const std::size_t depth = is_full(opts) ? 6 : 4;
  transfer::WeaveScenario scn(small_weave(depth));
  BaseElement u = scn.first_move();
  for (std::size_t n = 1; n < depth; ++n) u = scn.next_move(u);
  require(scn.reports().size() == depth, "wrong number of step reports");
  for (std::size_t n = 0; n < depth; ++n) {
    std::size_t expect = n == 0 ? 1 : (std::size_t(1) << n);
    require(scn.reports()[n].refinements == expect,
            "step " + std::to_string(n) + " burned the wrong number of refinements");
    require(scn.reports()[n].all_ok(), "step " + std::to_string(n) + " failed certification");
  }
  for (const auto& c : scn.certify_convergence())
    require(c.ok, "convergence check failed at " + tree::node_label(c.node));
  return std::to_string(depth) + " steps, counts 1,2,4,...";
}

std::string weave_walk_and_witness(const SuiteOptions& opts) {
  const std::size_t depth = 6;
  (void)opts;
  transfer::WeaveScenario scn(small_weave(depth));
  BaseElement u = scn.first_move();
  for (std::size_t n = 1; n < depth; ++n) u = scn.next_move(u);
  topology::PointedOpen po = scn.y_first_move();
  for (int round = 0; round < 3; ++round) po = scn.y_next_move(po.open);
  require(scn.branch_indices() == std::vector<std::uint64_t>({0, 1, 2}),
          "echoed walk took an unexpected branch");
  Point x = scn.config().x_space->pick_point(scn.x_chain().back());
  transfer::WitnessReport report = scn.assemble_witness(x, depth);
  require(report.certified, "witness failed assembly");
  for (const auto& c : report.oracle_checks)
    require(c.tested && c.ok, "oracle check failed at level " + std::to_string(c.level));
  return "walk 0,1,2 and witness through all " + std::to_string(depth) + " oracles";
}

std::string weave_fault_paths() {
  {
    transfer::WeaveConfig wc = small_weave(2);
    wc.schedule[1] = topology::make_faulty_oracle(wc.schedule[1], 0);
    transfer::WeaveScenario scn(wc);
    BaseElement u = scn.first_move();
    bool caught = false;
    try {
      scn.next_move(u);
    } catch (const InvariantViolation&) {
      caught = true;
    }
    require(caught, "a corrupted refinement went unnoticed");
  }
  {
    transfer::WeaveConfig wc = small_weave(1);
    wc.schedule[0] = topology::make_failing_oracle();
    transfer::WeaveScenario scn(wc);
    bool caught = false;
    try {
      scn.first_move();
    } catch (const FuelError& e) {
      caught = std::string(e.what()).find("step 0") != std::string::npos;
    }
    require(caught, "fuel exhaustion lost its step label");
  }
  return "corruption and fuel both surface";
}

std::string duality_sweeps(const SuiteOptions& opts) {
  SpacePtr s = topology::make_space("finite:sierpinski");
  product::ProductUniverse universe({s, s});
  const std::size_t depth = is_full(opts) ? 3 : 2;
  product::DualityReport lift = product::exhaustive_lift_duality(universe, depth);
  require(lift.clean(), lift.failures.empty() ? "?" : lift.failures.front());
  product::DualityReport lower = product::exhaustive_lower_duality(universe, depth);
  require(lower.clean(), lower.failures.empty() ? "?" : lower.failures.front());
  std::ostringstream os;
  os << lift.plays << "+" << lower.plays << " plays clean at depth " << depth;
  return os.str();
}

std::string descent_glue(const SuiteOptions& opts) {
  SpacePtr space = topology::make_space("baire-omega");
  auto descent = std::make_shared<transfer::BcoDescent>(
      space, transfer::seq_beta_canonical(space), opts.fuel);
  games::Strategy beta = transfer::bco_ch_lower(descent);
  games::Strategy alpha = strategies::make_strategy("refiner", games::GameKind::StrongChoquet,
                                                    games::Side::Alpha, space);
  games::GameSetup setup{games::GameKind::StrongChoquet, space, std::nullopt};
  games::Transcript play = games::run_game(setup, beta, alpha, 3);
  auto opens = games::opens_in_play(play.history);
  Point survivor = space->pick_point(*opens.back());
  krom::KromPoint glued = descent->glue(survivor);
  krom::K0Certificate cert = krom::k0_certify(glued, 3, opts.fuel);
  require(krom::k0_verify(glued, cert, 3), "glued certificate failed verification");
  return "glued prefix of " + std::to_string(glued.materialized()) + " certified";
}

SuiteReport transfer_suite(const SuiteOptions& opts) {
  SuiteReport rpt;
  rpt.suite = "transfer";
  run_check(rpt, "weave-counts", [&] { return weave_counts(opts); });
  run_check(rpt, "weave-walk-witness", [&] { return weave_walk_and_witness(opts); });
  run_check(rpt, "weave-fault-paths", weave_fault_paths);
  run_check(rpt, "duality-sweeps", [&] { return duality_sweeps(opts); });
  run_check(rpt, "descent-glue", [&] { return descent_glue(opts); });
  return rpt;
}

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "topology") return topology_suite(opts);
  if (name == "games") return games_suite(opts);
  if (name == "tree") return tree_suite(opts);
  if (name == "krom") return krom_suite(opts);
  if (name == "transfer") return transfer_suite(opts);
  throw ConfigError("verify: unknown suite '" + name +
                    "' (expected topology, games, tree, krom, transfer, or all)");
}

std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& opts) {
  if (name != "all") return {run_suite(name, opts)};
  std::vector<SuiteReport> out;
  for (const char* suite : {"topology", "games", "tree", "krom", "transfer"})
    out.push_back(run_suite(suite, opts));
  return out;
}

}  // namespace bairegames::verify
