#ifndef BAIREGAMES_SCENARIO_HPP
#define BAIREGAMES_SCENARIO_HPP

#include "bairegames/serialize.hpp"

namespace bairegames::scenario {

// A finished pipeline run: the full report document plus the one bit the
// exit code cares about.
struct ScenarioResult {
  ser::Json report;
  bool certified = false;
};

// Dispatches on config["theorem"]:
//   "3.1"        disjoint-family projection on a Krom basic open
//   "3.2"        the two-space weave with per-step certification
//   "4.1-lift"   exhaustive product-game transfer, ground to derived
//   "4.1-lower"  exhaustive product-game transfer, derived to ground
//   "4.3"        the sequence-space descent with the glue law
// Missing keys fall back to documented defaults; malformed configs throw
// ConfigError. Pipeline failures (fuel, invariant, illegal move) propagate
// as their own error types so callers can map them to exit codes.
ScenarioResult run_scenario(const ser::Json& config);

}  // namespace bairegames::scenario

#endif
