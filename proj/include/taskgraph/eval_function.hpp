#pragma once

#include <string>
#include <vector>

#include "taskgraph/checks.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/event_log.hpp"
#include "taskgraph/rational.hpp"

namespace taskgraph {

// One condition inside an evaluation function: a registered check API,
// its literal arguments, and the message reported when it is the first
// to fail.
struct Check {
  std::string api;
  CheckArgs args;
  std::string message;

  friend bool operator==(const Check&, const Check&) = default;
};

// An ordered list of checks; a subtask counts as completed when all pass.
struct EvalFunction {
  std::vector<Check> checks;

  friend bool operator==(const EvalFunction&, const EvalFunction&) = default;
};

// Outcome triple. progress keeps the check count as its denominator:
// failing at the third of four checks reports 2/4, not 1/2.
struct EvalResult {
  bool success = false;
  std::string message;
  Rational progress{0, 1};
};

// Runs the checks in order against the log. The first failure at index i
// yields progress i/len with that check's message; all passing yields 1.
// An unknown API name is a malformed function, not a failed evaluation.
inline EvalResult run_eval_function(const EvalFunction& fn,
                                    const EventLog& log) {
  if (fn.checks.empty()) throw Error("evaluation function has no checks");
  const auto& registry = check_api_registry();
  const auto n = static_cast<std::int64_t>(fn.checks.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const Check& check = fn.checks[i];
    auto it = registry.find(check.api);
    if (it == registry.end())
      throw Error("unknown check api '" + check.api + "'");
    if (!it->second(log, check.args))
      return {false, check.message, Rational(i, n)};
  }
  return {true, "Subtask completed successfully", Rational(n, n)};
}

}  // namespace taskgraph
