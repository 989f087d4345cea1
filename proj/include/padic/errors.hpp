#pragma once

#include <cstdlib>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace padic {

// User-input errors (CLI exit 1).
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};
struct UnknownVariable : ParseError {
  UnknownVariable(const std::string& name, std::size_t off)
      : ParseError("unknown variable '" + name + "'", off) {}
};

// Invalid mathematical input (CLI exit 2).
struct InvalidCurve : std::runtime_error {
  explicit InvalidCurve(const std::string& reason) : std::runtime_error("invalid curve: " + reason) {}
};
struct InvalidDenominator : std::runtime_error {
  explicit InvalidDenominator(const std::string& reason)
      : std::runtime_error("invalid denominator: " + reason) {}
};
struct NonUnit : std::runtime_error {
  explicit NonUnit(const std::string& what) : std::runtime_error("not a unit: " + what) {}
};
struct NotRepresentable : std::runtime_error {
  explicit NotRepresentable(const std::string& why)
      : std::runtime_error("no digit representation: " + why) {}
};
struct HypothesisViolated : std::runtime_error {
  explicit HypothesisViolated(const std::string& which)
      : std::runtime_error("hypothesis violated: " + which) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& which)
      : std::runtime_error("precondition violated: " + which) {}
};
struct ZeroPolynomial : std::runtime_error {
  ZeroPolynomial() : std::runtime_error("zero polynomial") {}
};
struct UnsupportedFormat : std::runtime_error {
  explicit UnsupportedFormat(const std::string& f) : std::runtime_error("unsupported format: " + f) {}
};
struct BadConfig : std::runtime_error {
  explicit BadConfig(const std::string& why) : std::runtime_error(why) {}
};

// Resource budgets (CLI exit 3).
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& kind)
      : std::runtime_error("budget exceeded: " + kind) {}
};
struct StateBudgetExceeded : BudgetExceeded {
  explicit StateBudgetExceeded(std::size_t cap)
      : BudgetExceeded("state cap " + std::to_string(cap)) {}
};
struct OrbitBudgetExceeded : BudgetExceeded {
  explicit OrbitBudgetExceeded(std::size_t cap)
      : BudgetExceeded("orbit cap " + std::to_string(cap)) {}
};

// Internal invariant violations abort: they indicate a bug, not bad input,
// and must never be reported as a recoverable condition.
[[noreturn]] inline void die(const char* what) {
  std::fprintf(stderr, "internal invariant violation: %s\n", what);
  std::abort();
}
inline void require(bool ok, const char* what) {
  if (!ok) die(what);
}

}  // namespace padic
