#include "bairegames/scenario.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bairegames/bco_lower.hpp"
#include "bairegames/errors.hpp"
#include "bairegames/strategies.hpp"

namespace bairegames::scenario {

using ser::Json;
using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

namespace {

std::string string_at(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError(std::string("scenario: ") + key + " must be a string");
  return j.at(key).get<std::string>();
}

std::uint64_t uint_at(const Json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
    throw ConfigError(std::string("scenario: ") + key + " must be a non-negative integer");
  auto v = j.at(key).get<std::int64_t>();
  if (v < 0) throw ConfigError(std::string("scenario: ") + key + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

std::vector<SpacePtr> spaces_at(const Json& j, const std::vector<std::string>& fallback) {
  std::vector<std::string> names = fallback;
  if (j.contains("spaces")) {
    if (!j.at("spaces").is_array()) throw ConfigError("scenario: spaces must be an array");
    names.clear();
    for (const auto& n : j.at("spaces")) {
      if (!n.is_string()) throw ConfigError("scenario: spaces entries must be strings");
      names.push_back(n.get<std::string>());
    }
  } else if (j.contains("space")) {
    names.assign(uint_at(j, "indices", fallback.size()), string_at(j, "space", fallback[0]));
  }
  if (names.empty()) throw ConfigError("scenario: at least one space is required");
  std::vector<SpacePtr> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(topology::make_space(n));
  return out;
}

Point rational_point(const SpacePtr& space, const std::string& text) {
  auto q = rational_from_string(text);
  if (!q) throw ConfigError("scenario: bad rational literal '" + text + "'");
  return Point{space->name(), topology::RationalPoint{*q}};
}

topology::OraclePtr parse_oracle(const Json& spec, const SpacePtr& x, const SpacePtr& y);

topology::OraclePtr parse_oracle_kind(const std::string& kind, const Json& spec,
                                      const SpacePtr& x, const SpacePtr& y) {
  if (kind == "trivial") return topology::make_puncture_oracle(x, y, {});
  if (kind == "failing") return topology::make_failing_oracle();
  if (kind == "puncture") {
    std::vector<std::pair<Point, Point>> pairs;
    if (spec.is_object() && spec.contains("pairs")) {
      if (x->name() != "rationals" || y->name() != "rationals")
        throw ConfigError("scenario: literal punctures are only supported on rationals");
      for (const auto& p : spec.at("pairs")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
          throw ConfigError("scenario: puncture pairs must be [\"p/q\", \"p/q\"] arrays");
        pairs.emplace_back(rational_point(x, p[0].get<std::string>()),
                           rational_point(y, p[1].get<std::string>()));
      }
    } else {
      std::uint64_t at = spec.is_object() ? uint_at(spec, "at", 0) : 0;
      pairs.emplace_back(x->pick_point(x->neighborhood(x->pick_point(x->whole()), at)),
                         y->pick_point(y->neighborhood(y->pick_point(y->whole()), at)));
    }
    return topology::make_puncture_oracle(x, y, std::move(pairs));
  }
  if (kind == "faulty") {
    if (!spec.is_object() || !spec.contains("inner"))
      throw ConfigError("scenario: faulty oracle needs an inner spec");
    auto inner = parse_oracle(spec.at("inner"), x, y);
    return topology::make_faulty_oracle(std::move(inner), uint_at(spec, "corrupt_call", 0));
  }
  throw ConfigError("scenario: unknown oracle kind '" + kind + "'");
}

topology::OraclePtr parse_oracle(const Json& spec, const SpacePtr& x, const SpacePtr& y) {
  if (spec.is_string()) return parse_oracle_kind(spec.get<std::string>(), spec, x, y);
  if (spec.is_object())
    return parse_oracle_kind(string_at(spec, "kind", "trivial"), spec, x, y);
  throw ConfigError("scenario: oracle spec must be a string or object");
}

// Default schedule: one single-puncture oracle per level on rationals pairs
// (level n punctures the n-th enumerated rational on both axes), trivial
// oracles elsewhere.
std::vector<topology::OraclePtr> default_schedule(const SpacePtr& x, const SpacePtr& y,
                                                  std::size_t depth) {
  std::vector<topology::OraclePtr> out;
  for (std::size_t n = 0; n < depth; ++n) {
    if (x->name() == "rationals" && y->name() == "rationals") {
      Point px{x->name(), topology::RationalPoint{enumerate_rational(n)}};
      Point py{y->name(), topology::RationalPoint{enumerate_rational(n)}};
      out.push_back(topology::make_puncture_oracle(x, y, {{px, py}}));
    } else {
      out.push_back(topology::make_puncture_oracle(x, y, {}));
    }
  }
  return out;
}

// Deepest point-picker walk an x-side run of `depth` steps can feed: the
// walk's n-th stop sits at tree level n(n+1)/2 when every branch search
// lands at its minimum.
std::size_t walk_depth_for(std::size_t depth) {
  std::size_t n = 0;
  while ((n + 1) * (n + 2) / 2 <= depth) ++n;
  return n;
}

ScenarioResult run_weave(const Json& config) {
  auto spaces = spaces_at(config, {"rationals", "rationals"});
  SpacePtr x_space = spaces[0];
  SpacePtr y_space = spaces.size() > 1 ? spaces[1] : spaces[0];
  const std::size_t depth = static_cast<std::size_t>(uint_at(config, "depth", 6));
  if (depth == 0) throw ConfigError("scenario: the weave needs depth >= 1");
  const std::uint64_t fuel = uint_at(config, "fuel", 4096);

  transfer::WeaveConfig wc;
  wc.x_space = x_space;
  wc.y_space = y_space;
  wc.start_u = x_space->whole();
  wc.start_v = y_space->whole();
  wc.fuel = fuel;
  wc.sample_budget = static_cast<std::size_t>(uint_at(config, "sample_budget", 32));
  if (config.contains("oracles")) {
    if (!config.at("oracles").is_array()) throw ConfigError("scenario: oracles must be an array");
    for (const auto& spec : config.at("oracles"))
      wc.schedule.push_back(parse_oracle(spec, x_space, y_space));
  } else {
    wc.schedule = default_schedule(x_space, y_space, depth);
  }
  if (wc.schedule.size() < depth)
    throw ConfigError("scenario: oracle schedule is shorter than the requested depth");

  auto scn = std::make_shared<transfer::WeaveScenario>(wc);
  games::Strategy sigma_x = transfer::build_sigma_x(scn);
  games::Strategy alpha_x = strategies::make_strategy("shrink", games::GameKind::BanachMazur,
                                                      games::Side::Alpha, x_space);
  games::GameSetup x_setup{games::GameKind::BanachMazur, x_space, std::nullopt};
  games::Transcript x_play = games::run_game(x_setup, sigma_x, alpha_x, depth);

  Point x_witness = x_space->pick_point(
      x_play.history.moves.empty()
          ? wc.start_u
          : std::get<BaseElement>(x_play.history.moves.back()));

  games::Strategy sigma_y = transfer::build_sigma_y(scn, x_play, x_witness);
  games::Strategy alpha_y = strategies::make_strategy("echo", games::GameKind::StrongChoquet,
                                                      games::Side::Alpha, y_space);
  games::GameSetup y_setup{games::GameKind::StrongChoquet, y_space, std::nullopt};
  // One round for the opening proposal, then one per branch-walk step.
  games::Transcript y_play =
      games::run_game(y_setup, sigma_y, alpha_y, walk_depth_for(depth) + 1);

  transfer::WitnessReport witness = scn->assemble_witness(x_witness, depth);
  auto convergence = scn->certify_convergence();

  Json report;
  report["theorem"] = "3.2";
  report["x_space"] = x_space->name();
  report["y_space"] = y_space->name();
  report["depth"] = depth;
  bool steps_ok = true;
  Json steps = Json::array();
  for (const auto& r : scn->reports()) {
    steps_ok = steps_ok && r.all_ok();
    steps.push_back(ser::encode(r));
  }
  report["steps"] = steps;
  bool conv_ok = true;
  Json conv = Json::array();
  for (const auto& c : convergence) {
    conv_ok = conv_ok && c.ok;
    conv.push_back(ser::encode(c));
  }
  report["convergence"] = conv;
  report["branch"] = scn->branch_indices();
  report["x_play"] = ser::encode(x_play);
  report["y_play"] = ser::encode(y_play);
  report["witness"] = ser::encode(witness);

  ScenarioResult out;
  out.certified = steps_ok && conv_ok && witness.certified;
  report["certified"] = out.certified;
  out.report = std::move(report);
  return out;
}

ScenarioResult run_pi_base(const Json& config) {
  SpacePtr space = topology::make_space(string_at(config, "space", "rationals"));
  const std::size_t family = static_cast<std::size_t>(uint_at(config, "family", 100));
  const std::uint64_t seed = uint_at(config, "seed", 7);

  krom::DecreasingSeq stem = krom::make_decreasing(space, {space->whole()});
  stem = krom::ccc_pi_base_step(stem);
  krom::KromBasicOpen below = krom::make_basic_open(stem);
  std::vector<krom::KromBasicOpen> opens = krom::generate_disjoint_family(below, family, seed);
  std::string why;
  bool disjoint = krom::disjoint_family_projection(below, opens, &why);

  Json report;
  report["theorem"] = "3.1";
  report["space"] = space->name();
  report["family"] = family;
  report["stem"] = ser::encode(stem);
  report["projection_disjoint"] = disjoint;
  if (!disjoint) report["first_failure"] = why;
  ScenarioResult out;
  out.certified = disjoint;
  report["certified"] = out.certified;
  out.report = std::move(report);
  return out;
}

ScenarioResult run_duality(const Json& config, bool lift) {
  auto spaces = spaces_at(config, {"finite:sierpinski", "finite:sierpinski"});
  product::ProductUniverse universe(spaces);
  const std::size_t depth = static_cast<std::size_t>(uint_at(config, "depth", 3));
  product::DualityReport rpt = lift ? product::exhaustive_lift_duality(universe, depth)
                                    : product::exhaustive_lower_duality(universe, depth);

  Json report;
  report["theorem"] = lift ? "4.1-lift" : "4.1-lower";
  Json names = Json::array();
  for (const auto& s : spaces) names.push_back(s->name());
  report["factors"] = names;
  report["depth"] = depth;
  report["sweep"] = ser::encode(rpt);
  ScenarioResult out;
  out.certified = rpt.clean();
  report["certified"] = out.certified;
  out.report = std::move(report);
  return out;
}

ScenarioResult run_descent(const Json& config) {
  SpacePtr space = topology::make_space(string_at(config, "space", "baire-omega"));
  if (!space->base_of_countable_order())
    throw ConfigError("scenario: the descent needs a space where strictly decreasing chains "
                      "are neighborhood bases");
  const std::size_t depth = static_cast<std::size_t>(uint_at(config, "depth", 5));
  if (depth == 0) throw ConfigError("scenario: descent depth must be at least 1");
  const std::uint64_t fuel = uint_at(config, "fuel", 4096);

  auto descent =
      std::make_shared<transfer::BcoDescent>(space, transfer::seq_beta_canonical(space), fuel);
  games::Strategy beta = transfer::bco_ch_lower(descent);
  games::Strategy alpha = strategies::make_strategy("refiner", games::GameKind::StrongChoquet,
                                                    games::Side::Alpha, space);
  games::GameSetup setup{games::GameKind::StrongChoquet, space, std::nullopt};
  games::Transcript play = games::run_game(setup, beta, alpha, depth);

  auto opens = games::opens_in_play(play.history);
  Point survivor = space->pick_point(opens.empty() ? space->whole() : *opens.back());
  krom::KromPoint glued = descent->glue(survivor);

  // The agreement law is enforced inside glue(); report the shape of the
  // materialized prefix on top of that.
  bool monotone = true;
  for (std::size_t p = 0; p + 1 < glued.materialized(); ++p) {
    const BaseElement& wide = glued.at(p);
    const BaseElement& tight = glued.at(p + 1);
    bool strict = space->contains(tight, wide) && !space->contains(wide, tight);
    bool stable_singleton =
        space->contains(tight, wide) && space->contains(wide, tight) &&
        space->singleton_member(wide).has_value();
    monotone = monotone && (strict || stable_singleton);
  }
  krom::K0Certificate cert = krom::k0_certify(glued, depth, fuel);
  bool cert_ok = krom::k0_verify(glued, cert, depth);

  Json report;
  report["theorem"] = "4.3";
  report["space"] = space->name();
  report["depth"] = depth;
  Json rounds = Json::array();
  for (const auto& r : descent->rounds()) {
    Json one;
    one["cut"] = r.cut;
    if (r.probed) one["probe"] = r.probe;
    one["singleton_branch"] = r.singleton;
    one["open"] = ser::encode(r.v);
    rounds.push_back(one);
  }
  report["rounds"] = rounds;
  report["play"] = ser::encode(play);
  report["glued_prefix"] = glued.materialized();
  report["monotone"] = monotone;
  report["certificate"] = ser::encode(cert);
  report["certificate_verified"] = cert_ok;
  ScenarioResult out;
  out.certified = monotone && cert_ok;
  report["certified"] = out.certified;
  out.report = std::move(report);
  return out;
}

}  // namespace

ScenarioResult run_scenario(const Json& config) {
  if (!config.is_object()) throw ConfigError("scenario: config must be a JSON object");
  const std::string theorem = string_at(config, "theorem", "");
  if (theorem == "3.1") return run_pi_base(config);
  if (theorem == "3.2") return run_weave(config);
  if (theorem == "4.1-lift") return run_duality(config, true);
  if (theorem == "4.1-lower") return run_duality(config, false);
  if (theorem == "4.3") return run_descent(config);
  throw ConfigError("scenario: unknown theorem tag '" + theorem +
                    "' (expected 3.1, 3.2, 4.1-lift, 4.1-lower, or 4.3)");
}

}  // namespace bairegames::scenario
