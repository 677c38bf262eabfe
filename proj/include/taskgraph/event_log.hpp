#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/action.hpp"

namespace taskgraph {

// Environment state the check APIs can query. Facts are established by
// fixture setup before a run; during a run only actions are appended, so
// check outcomes are monotone as the log grows.
struct EnvironmentFacts {
  std::set<std::string> files;
  std::set<std::string> screen_texts;
  std::set<std::string> control_texts;
  std::optional<std::string> clipboard;
  std::optional<std::string> window_title;

  friend bool operator==(const EnvironmentFacts&, const EnvironmentFacts&) =
      default;
};

// Append-only record of one evaluation run: the agent's actions plus the
// fixture facts they execute against.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(EnvironmentFacts fixture) : facts_(std::move(fixture)) {}

  void append(Action action) {
    validate_action(action);
    actions_.push_back(std::move(action));
  }

  const std::vector<Action>& actions() const { return actions_; }
  const EnvironmentFacts& facts() const { return facts_; }

  // Fixture setup between runs; not part of the in-run mutation surface.
  EnvironmentFacts& fixture() { return facts_; }

  // Concatenation of all keyboard_input texts in order. Keystrokes may be
  // split across actions, so substring queries run over this stream.
  std::string typed_stream() const {
    std::string out;
    for (const auto& a : actions_)
      if (a.kind == ActionKind::KeyboardInput) out += a.text;
    return out;
  }

 private:
  std::vector<Action> actions_;
  EnvironmentFacts facts_;
};

}  // namespace taskgraph
