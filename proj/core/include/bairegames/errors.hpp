#ifndef BAIREGAMES_ERRORS_HPP
#define BAIREGAMES_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bairegames {

// Root of everything the engine can throw on purpose. The subtypes matter:
// the CLI maps them onto distinct exit codes, and tests distinguish a fuel
// timeout (search gave up) from a genuine rule violation.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

// Mixing objects from different spaces, or calling an operation a space does
// not define.
class DomainError : public EngineError {
 public:
  explicit DomainError(const std::string& what) : EngineError(what) {}
};

// A caller handed in data violating a documented precondition.
class PreconditionError : public EngineError {
 public:
  explicit PreconditionError(const std::string& what) : EngineError(what) {}
};

// A bounded search ran out of budget. Deliberately distinct from the
// violation errors: exhausting fuel is "don't know", not "wrong".
class FuelError : public EngineError {
 public:
  explicit FuelError(const std::string& what) : EngineError(what) {}
};

// A strategy produced a move the referee rejects. Carries the offending side
// and round so harnesses can report exactly where a player went off the
// rails.
class IllegalStrategyMove : public EngineError {
 public:
  IllegalStrategyMove(std::string side, std::size_t round, const std::string& reason)
      : EngineError("illegal move by " + side + " at round " + std::to_string(round) + ": " + reason),
        side_(std::move(side)),
        round_(round) {}

  const std::string& side() const { return side_; }
  std::size_t round() const { return round_; }

 private:
  std::string side_;
  std::size_t round_;
};

// A structural invariant that should hold by construction failed a check.
class InvariantViolation : public EngineError {
 public:
  explicit InvariantViolation(const std::string& what) : EngineError(what) {}
};

// The requested operation is meaningless for this space (for example asking
// for a strictly smaller neighborhood in a space that has none).
class UnsupportedSpaceError : public EngineError {
 public:
  explicit UnsupportedSpaceError(const std::string& what) : EngineError(what) {}
};

// Base-evidence search failed at a specific depth. Callers use depth() to
// report which neighborhood index could not be matched.
class NotCertifiedAtDepth : public EngineError {
 public:
  NotCertifiedAtDepth(std::size_t depth, const std::string& what)
      : EngineError("not certified at depth " + std::to_string(depth) + ": " + what), depth_(depth) {}

  std::size_t depth() const { return depth_; }

 private:
  std::size_t depth_;
};

// Malformed CLI arguments or scenario configuration.
class ConfigError : public EngineError {
 public:
  explicit ConfigError(const std::string& what) : EngineError(what) {}
};

}  // namespace bairegames

#endif
