#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bairegames/errors.hpp"
#include "bairegames/games.hpp"
#include "bairegames/scenario.hpp"
#include "bairegames/serialize.hpp"
#include "bairegames/strategies.hpp"
#include "bairegames/verify.hpp"

namespace bg = bairegames;
using bg::ser::Json;

namespace {

constexpr int kOk = 0;
constexpr int kExpectMismatch = 1;
constexpr int kInvariant = 2;
constexpr int kFuel = 3;
constexpr int kConfig = 4;

std::uint64_t fuel_from_env() {
  if (const char* env = std::getenv("BAIRE_GAMES_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (env[0] == '\0' || !end || *end != '\0' || v == 0)
      throw bg::ConfigError("BAIRE_GAMES_FUEL must be a positive integer");
    return static_cast<std::uint64_t>(v);
  }
  return 4096;
}

// Output sink: a file when --out is given, standard output otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw bg::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bg::ConfigError("cannot open config file '" + path + "'");
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw bg::ConfigError("config file '" + path + "' is not valid JSON");
  return doc;
}

bg::games::GameKind parse_kind(const std::string& token) {
  if (token == "bm") return bg::games::GameKind::BanachMazur;
  if (token == "ch") return bg::games::GameKind::StrongChoquet;
  if (token == "gruenhage") return bg::games::GameKind::Gruenhage;
  throw bg::ConfigError("unknown game '" + token + "' (expected bm, ch, or gruenhage)");
}

// ---------------------------------------------------------------------- play

struct PlayArgs {
  std::string game = "bm";
  std::string space = "rationals";
  std::string first;   // --beta: the first mover
  std::string second;  // --alpha: the second mover
  std::string center;
  std::string expect;
  std::string out;
  std::string human;
  std::string config_path;
  std::uint64_t depth = 8;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 4096;
  bool interactive = false;
};

struct ReplQuit {};

void repl_help(std::ostream& err) {
  err << "  auto          let the stock strategy move for you (empty line works too)\n"
         "  refine [k]    shrink around the canonical point, k extra steps\n"
         "  echo          (choquet answer) return the proposed open unchanged\n"
         "  show          reprint the position\n"
         "  quit          abandon the run\n";
}

void repl_show(const bg::games::History& h, bg::games::Side side, std::ostream& err) {
  err << "--- round " << h.round_of_next() << ", you move as " << bg::games::side_name(side)
      << '\n';
  if (h.moves.empty()) {
    err << "    position: fresh board on " << h.setup.space->name() << '\n';
  } else {
    err << "    opponent played: " << bg::ser::encode(h.moves.back()).dump() << '\n';
  }
}

bg::games::Move repl_build(const bg::games::History& h, const std::string& verb,
                           std::uint64_t step, const bg::topology::SpacePtr& space) {
  using bg::games::GameKind;
  const bool choquet = h.setup.kind == GameKind::StrongChoquet;
  const bool answering = choquet && h.moves.size() % 2 == 1;
  if (verb == "echo") {
    if (!answering) throw bg::ConfigError("echo only makes sense when answering a proposal");
    return std::get<bg::topology::PointedOpen>(h.moves.back()).open;
  }
  // refine
  if (answering) {
    const auto& proposal = std::get<bg::topology::PointedOpen>(h.moves.back());
    return space->refine(proposal.point, proposal.open, step);
  }
  bg::topology::BaseElement cur = space->whole();
  for (const auto* open : bg::games::opens_in_play(h)) cur = *open;
  bg::topology::Point x = space->pick_point(cur);
  bg::topology::BaseElement v = space->refine(x, cur, step);
  if (!choquet) return v;
  return bg::topology::make_pointed_open(*space, space->pick_point(v), v);
}

bg::games::Strategy wrap_human(bg::games::Strategy stock, const bg::topology::SpacePtr& space) {
  bg::games::Strategy s = stock;
  s.name = "human";
  s.choose = [stock, space](const bg::games::History& h) -> bg::games::Move {
    std::ostream& err = std::cerr;
    repl_show(h, h.side_of_next(), err);
    for (;;) {
      err << "> " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) throw ReplQuit{};
      std::istringstream is(line);
      std::string verb;
      is >> verb;
      std::uint64_t step = 1;
      is >> step;
      try {
        if (verb == "quit") throw ReplQuit{};
        if (verb == "help" || verb == "?") {
          repl_help(err);
          continue;
        }
        if (verb == "show") {
          repl_show(h, h.side_of_next(), err);
          continue;
        }
        bg::games::Move move;
        if (verb.empty() || verb == "auto") {
          move = stock.choose(h);
        } else if (verb == "refine" || verb == "echo") {
          move = repl_build(h, verb, step, space);
        } else {
          err << "unknown command '" << verb << "'; try: ";
          repl_help(err);
          continue;
        }
        if (auto why = bg::games::illegal_reason(h, move)) {
          err << "illegal: " << *why << '\n';
          continue;
        }
        err << "played: " << bg::ser::encode(move).dump() << '\n';
        return move;
      } catch (const ReplQuit&) {
        throw;
      } catch (const bg::EngineError& e) {
        err << "rejected: " << e.what() << '\n';
      }
    }
  };
  return s;
}

int cmd_play(const PlayArgs& args) {
  using bg::games::GameKind;
  using bg::games::Side;

  const GameKind kind = parse_kind(args.game);
  bg::topology::SpacePtr space = bg::topology::make_space(args.space);

  bg::strategies::StrategyOptions sopts;
  sopts.seed = args.seed;
  sopts.fuel = args.fuel;
  if (!args.center.empty()) {
    if (space->name() != "rationals")
      throw bg::ConfigError("--center takes a rational and needs --space rationals");
    auto q = bg::rational_from_string(args.center);
    if (!q) throw bg::ConfigError("--center: bad rational '" + args.center + "'");
    sopts.center = bg::topology::Point{space->name(), bg::topology::RationalPoint{*q}};
  } else {
    sopts.center = space->pick_point(space->whole());
  }

  Side first_side = kind == GameKind::Gruenhage ? Side::PlayerOne : Side::Beta;
  Side second_side = kind == GameKind::Gruenhage ? Side::PlayerTwo : Side::Alpha;
  std::string first_name = args.first;
  std::string second_name = args.second;
  if (first_name.empty())
    first_name = kind == GameKind::BanachMazur ? "shrink"
                 : kind == GameKind::StrongChoquet ? "canonical"
                                                   : "wpoint";
  if (second_name.empty())
    second_name = kind == GameKind::BanachMazur ? "shrink"
                  : kind == GameKind::StrongChoquet ? "refiner"
                                                    : "canonical";

  bg::games::Strategy first =
      bg::strategies::make_strategy(first_name, kind, first_side, space, sopts);
  bg::games::Strategy second =
      bg::strategies::make_strategy(second_name, kind, second_side, space, sopts);

  if (args.interactive) {
    if (kind == GameKind::Gruenhage)
      throw bg::ConfigError("interactive mode covers bm and ch");
    if (args.human == "beta") {
      first = wrap_human(first, space);
    } else if (args.human == "alpha") {
      second = wrap_human(second, space);
    } else {
      throw bg::ConfigError("--interactive needs --human beta or --human alpha");
    }
  }

  bg::games::GameSetup setup{kind, space, std::nullopt};
  if (kind == GameKind::Gruenhage) setup.center = sopts.center;

  Sink sink(args.out);
  bg::ser::JsonlWriter trace(sink.stream());
  {
    Json line;
    line["event"] = "setup";
    line["game"] = bg::games::kind_name(kind);
    line["space"] = space->name();
    line["first"] = first.name;
    line["second"] = second.name;
    line["depth"] = args.depth;
    line["seed"] = args.seed;
    trace.line(line);
  }

  bg::games::Transcript t;
  try {
    t = bg::games::run_game(setup, first, second, args.depth,
                            [&](std::size_t round, Side side, const bg::games::Move& m) {
                              Json line;
                              line["event"] = "move";
                              line["round"] = round;
                              line["side"] = bg::games::side_name(side);
                              line["play"] = bg::ser::encode(m);
                              trace.line(line);
                            });
  } catch (const ReplQuit&) {
    Json line;
    line["event"] = "aborted";
    trace.line(line);
    return kOk;
  }

  {
    Json line;
    line["event"] = "outcome";
    line["depth"] = t.depth;
    line["result"] = bg::ser::encode(t.outcome);
    if (t.diagnostics) {
      Json tails = Json::array();
      for (const auto& [k, d] : t.diagnostics->tail_depth)
        tails.push_back(Json::array({k, d}));
      line["tail_depth"] = tails;
    }
    trace.line(line);
  }

  if (!args.expect.empty()) {
    bool match = (args.expect == "alpha" &&
                  std::holds_alternative<bg::games::AlphaCertified>(t.outcome)) ||
                 (args.expect == "beta" &&
                  std::holds_alternative<bg::games::BetaCertified>(t.outcome)) ||
                 (args.expect == "undecided" &&
                  std::holds_alternative<bg::games::UndecidedAtDepth>(t.outcome));
    if (!match) {
      std::cerr << "expected outcome '" << args.expect << "', got '"
                << bg::games::outcome_name(t.outcome) << "'\n";
      return kExpectMismatch;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------- demo

struct DemoArgs {
  std::string token;
  std::string config_path;
  std::string out;
  std::string space;
  std::vector<std::string> spaces;
  std::uint64_t depth = 0;
  std::uint64_t family = 0;
  std::uint64_t indices = 0;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 4096;
  bool depth_set = false, family_set = false, indices_set = false, seed_set = false;
};

int cmd_demo(const DemoArgs& args) {
  Json config = args.config_path.empty() ? Json::object() : load_config_file(args.config_path);

  bool roundtrip = false;
  if (!args.token.empty()) {
    if (args.token == "thm31") config["theorem"] = "3.1";
    else if (args.token == "thm32") config["theorem"] = "3.2";
    else if (args.token == "thm41-lift") config["theorem"] = "4.1-lift";
    else if (args.token == "thm41-lower") config["theorem"] = "4.1-lower";
    else if (args.token == "thm41-roundtrip") roundtrip = true;
    else if (args.token == "thm43") config["theorem"] = "4.3";
    else
      throw bg::ConfigError("unknown demo '" + args.token +
                            "' (expected thm31, thm32, thm41-lift, thm41-lower, "
                            "thm41-roundtrip, or thm43)");
  } else if (!config.contains("theorem")) {
    throw bg::ConfigError("demo needs a scenario name or a --config with a theorem tag");
  }

  if (args.depth_set) config["depth"] = args.depth;
  if (args.family_set) config["family"] = args.family;
  if (args.indices_set) config["indices"] = args.indices;
  if (args.seed_set) config["seed"] = args.seed;
  config["fuel"] = args.fuel;
  if (!args.space.empty()) config["space"] = args.space;
  if (!args.spaces.empty()) config["spaces"] = args.spaces;

  Sink sink(args.out);
  bg::scenario::ScenarioResult result;
  if (roundtrip) {
    Json lift_cfg = config;
    lift_cfg["theorem"] = "4.1-lift";
    Json lower_cfg = config;
    lower_cfg["theorem"] = "4.1-lower";
    auto lift = bg::scenario::run_scenario(lift_cfg);
    auto lower = bg::scenario::run_scenario(lower_cfg);
    result.certified = lift.certified && lower.certified;
    result.report["theorem"] = "4.1-roundtrip";
    result.report["lift"] = lift.report;
    result.report["lower"] = lower.report;
    result.report["certified"] = result.certified;
  } else {
    result = bg::scenario::run_scenario(config);
  }

  sink.stream() << result.report.dump(2) << '\n';
  return result.certified ? kOk : kInvariant;
}

// -------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const bg::verify::SuiteOptions& opts,
               const std::string& out) {
  Sink sink(out);
  bg::ser::JsonlWriter lines(sink.stream());
  std::size_t checks = 0, failed = 0;
  auto reports = bg::verify::run_suites(suite, opts);
  for (const auto& rpt : reports) {
    for (const auto& c : rpt.checks) {
      ++checks;
      if (!c.passed) ++failed;
      Json line;
      line["suite"] = rpt.suite;
      line["check"] = c.name;
      line["passed"] = c.passed;
      line["detail"] = c.detail;
      lines.line(line);
    }
  }
  Json summary;
  summary["event"] = "summary";
  summary["suites"] = reports.size();
  summary["checks"] = checks;
  summary["failed"] = failed;
  lines.line(summary);
  return failed == 0 ? kOk : kInvariant;
}

// -------------------------------------------------------------------- spaces

int cmd_spaces(const std::string& out) {
  Sink sink(out);
  bg::ser::JsonlWriter lines(sink.stream());
  for (const char* name :
       {"rationals", "baire-omega", "cantor", "finite:point", "finite:sierpinski",
        "finite:indiscrete2", "finite:discrete2", "finite:discrete3", "remark-qd:8"}) {
    auto space = bg::topology::make_space(name);
    Json line;
    line["name"] = space->name();
    line["first_countable"] = space->first_countable();
    line["ccc"] = space->ccc();
    line["base_of_countable_order"] = space->base_of_countable_order();
    lines.line(line);
  }
  Json families;
  families["families"] =
      Json::array({"finite:<n>:<mask>,<mask>,...", "remark-qd:<n>"});
  lines.line(families);
  return kOk;
}

// Pulls values out of a play config file for flags the user left untouched.
void merge_play_config(PlayArgs& args, const CLI::App* play) {
  if (args.config_path.empty()) return;
  Json cfg = load_config_file(args.config_path);
  auto absent = [&](const std::string& flag) {
    return play->get_option(flag)->count() == 0;
  };
  if (cfg.contains("game") && absent("--game")) args.game = cfg["game"].get<std::string>();
  if (cfg.contains("space") && absent("--space")) args.space = cfg["space"].get<std::string>();
  if (cfg.contains("beta") && absent("--beta")) args.first = cfg["beta"].get<std::string>();
  if (cfg.contains("alpha") && absent("--alpha")) args.second = cfg["alpha"].get<std::string>();
  if (cfg.contains("center") && absent("--center"))
    args.center = cfg["center"].get<std::string>();
  if (cfg.contains("expect") && absent("--expect"))
    args.expect = cfg["expect"].get<std::string>();
  if (cfg.contains("depth") && absent("--depth")) args.depth = cfg["depth"].get<std::uint64_t>();
  if (cfg.contains("seed") && absent("--seed")) args.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("fuel") && absent("--fuel")) args.fuel = cfg["fuel"].get<std::uint64_t>();
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    const std::uint64_t env_fuel = fuel_from_env();

    CLI::App app{"symbolic referee for shrink and point-open games on countably based spaces"};
    app.require_subcommand(1);

    PlayArgs play_args;
    play_args.fuel = env_fuel;
    CLI::App* play = app.add_subcommand("play", "run one refereed game, JSONL trace out");
    play->add_option("--game", play_args.game, "bm, ch, or gruenhage")->capture_default_str();
    play->add_option("--space", play_args.space, "space name from the zoo")
        ->capture_default_str();
    play->add_option("--beta", play_args.first, "first mover's strategy name");
    play->add_option("--alpha", play_args.second, "second mover's strategy name");
    play->add_option("--depth", play_args.depth, "rounds to play")->capture_default_str();
    play->add_option("--seed", play_args.seed, "seed for randomized strategies")
        ->capture_default_str();
    play->add_option("--fuel", play_args.fuel, "search budget for strategies");
    play->add_option("--center", play_args.center, "gruenhage center (rational)");
    play->add_option("--expect", play_args.expect,
                     "fail with exit 1 unless the outcome is alpha, beta, or undecided");
    play->add_option("--out", play_args.out, "trace file (default: standard output)");
    play->add_option("--config", play_args.config_path, "JSON file with play parameters");
    play->add_flag("--interactive", play_args.interactive, "prompt a human for one side");
    play->add_option("--human", play_args.human, "which side the human plays (beta|alpha)");

    DemoArgs demo_args;
    demo_args.fuel = env_fuel;
    CLI::App* demo = app.add_subcommand("demo", "run a named construction, report JSON out");
    demo->add_option("name", demo_args.token,
                     "thm31, thm32, thm41-lift, thm41-lower, thm41-roundtrip, or thm43");
    auto* demo_depth = demo->add_option("--depth", demo_args.depth, "construction depth");
    auto* demo_family = demo->add_option("--family", demo_args.family,
                                         "family size for the disjoint-projection demo");
    auto* demo_indices =
        demo->add_option("--indices", demo_args.indices, "product arity for the transfer demos");
    auto* demo_seed = demo->add_option("--seed", demo_args.seed, "seed for generated data");
    demo->add_option("--fuel", demo_args.fuel, "search budget");
    demo->add_option("--space", demo_args.space, "space name (single-space demos)");
    demo->add_option("--spaces", demo_args.spaces, "factor space names (product demos)");
    demo->add_option("--out", demo_args.out, "report file (default: standard output)");
    demo->add_option("--config", demo_args.config_path, "scenario config JSON file");

    std::string verify_suite = "all";
    std::string verify_out;
    bg::verify::SuiteOptions verify_opts;
    verify_opts.fuel = env_fuel;
    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("--suite", verify_suite, "topology, games, tree, krom, transfer, or all")
        ->capture_default_str();
    verify->add_option("--budget", verify_opts.budget, "small or full")->capture_default_str();
    verify->add_option("--triples", verify_opts.triples, "ultrametric law sample count")
        ->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "fuzzing seed")->capture_default_str();
    verify->add_option("--fuel", verify_opts.fuel, "search budget");
    verify->add_option("--out", verify_out, "report file (default: standard output)");

    std::string spaces_out;
    CLI::App* spaces = app.add_subcommand("spaces", "list the space zoo with its flags");
    spaces->add_option("--out", spaces_out, "report file (default: standard output)");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? kOk : kConfig;
    }

    if (play->parsed()) {
      merge_play_config(play_args, play);
      return cmd_play(play_args);
    }
    if (demo->parsed()) {
      demo_args.depth_set = demo_depth->count() > 0;
      demo_args.family_set = demo_family->count() > 0;
      demo_args.indices_set = demo_indices->count() > 0;
      demo_args.seed_set = demo_seed->count() > 0;
      return cmd_demo(demo_args);
    }
    if (verify->parsed()) {
      if (verify_opts.budget != "small" && verify_opts.budget != "full")
        throw bg::ConfigError("--budget must be small or full");
      return cmd_verify(verify_suite, verify_opts, verify_out);
    }
    if (spaces->parsed()) return cmd_spaces(spaces_out);
    return kConfig;
  } catch (const bg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const bg::UnsupportedSpaceError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const bg::FuelError& e) {
    std::cerr << "fuel exhausted: " << e.what() << '\n';
    return kFuel;
  } catch (const bg::EngineError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariant;
  }
}
