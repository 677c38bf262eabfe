#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "taskgraph/agents.hpp"
#include "taskgraph/composer.hpp"
#include "taskgraph/evaluator.hpp"
#include "taskgraph/eval_function.hpp"
#include "taskgraph/metrics.hpp"

namespace taskgraph {

// Everything one evaluation run needs besides the agent.
struct TaskRun {
  TaskGraph graph;
  std::map<NodeId, EvalFunction> bindings;
  std::map<NodeId, ActionScript> scripts;
  std::map<NodeId, std::string> app_of;
  EnvironmentFacts fixture;
  int max_steps = kDefaultStepBudget;
};

// Table-driven reference synthesis: the script opens the subtask's
// application and types a marker derived from the subtask id, and the
// evaluation function checks exactly those two signals. Both sides are
// deterministic, mutually consistent, and discriminate between subtasks.
inline ActionScript reference_script(const Subtask& subtask) {
  ActionScript script;
  script.actions.push_back(Action::click(subtask.application));
  script.actions.push_back(Action::keys("do:" + subtask.id));
  return script;
}

inline EvalFunction reference_eval_function(const Subtask& subtask) {
  EvalFunction fn;
  fn.checks.push_back(
      {"check_mouse_clicks",
       CheckArgs{{"text", subtask.application}},
       "Subtask execution failed because agent did not click the '" +
           subtask.application + "' control."});
  fn.checks.push_back(
      {"check_keyboard_types",
       CheckArgs{{"text", "do:" + subtask.id}},
       "Subtask execution failed because the marker for subtask " +
           subtask.id + " was not typed."});
  return fn;
}

inline std::map<NodeId, ActionScript> reference_scripts(
    const TaskGraph& graph, const SubtaskPool& pool) {
  std::map<NodeId, ActionScript> out;
  for (const auto& id : graph.nodes) out[id] = reference_script(pool.at(id));
  return out;
}

inline std::map<NodeId, EvalFunction> reference_bindings(
    const TaskGraph& graph, const SubtaskPool& pool) {
  std::map<NodeId, EvalFunction> out;
  for (const auto& id : graph.nodes)
    out[id] = reference_eval_function(pool.at(id));
  return out;
}

inline TaskRun make_task_run(const TaskGraph& graph, const SubtaskPool& pool,
                             int max_steps = kDefaultStepBudget) {
  TaskRun run;
  run.graph = graph;
  run.bindings = reference_bindings(graph, pool);
  run.scripts = reference_scripts(graph, pool);
  for (const auto& id : graph.nodes) run.app_of[id] = pool.at(id).application;
  run.max_steps = max_steps;
  return run;
}

// The reference trajectory used as the AMS baseline: a perfect agent
// following the first successful topological order.
inline std::vector<Action> reference_trajectory(const TaskRun& setup) {
  std::vector<NodeId> order = setup.graph.successful_topo.empty()
                                  ? kahn_order(setup.graph)
                                  : setup.graph.successful_topo.front();
  std::vector<Action> out;
  for (const auto& id : order) {
    const auto& script = setup.scripts.at(id);
    out.insert(out.end(), script.actions.begin(), script.actions.end());
  }
  return out;
}

// Drives the evaluator with the agent's planned actions (inert filler once
// the plan runs out) until the run terminates, then assembles the metrics.
inline MetricsReport run_task(const ScriptedAgent& agent, const TaskRun& setup) {
  if (setup.graph.nodes.empty()) throw Error("run_task: task has no nodes");
  for (const auto& id : setup.graph.nodes) {
    if (!setup.bindings.count(id))
      throw Error("run_task: no evaluation function bound for node '" + id +
                  "'");
    if (!setup.scripts.count(id))
      throw Error("run_task: no action script for node '" + id + "'");
  }
  EvaluationRun run(setup.graph, setup.bindings, setup.max_steps);
  EventLog log(setup.fixture);
  const std::vector<Action> planned = agent.plan(setup.graph, setup.scripts);
  std::size_t next = 0;
  while (!run.terminated()) {
    const Action& a = next < planned.size() ? planned[next] : inert_action();
    if (next < planned.size()) ++next;
    run.step(a, log);
  }

  MetricsReport report;
  report.cr = coverage_rate(setup.graph, run.completed());
  report.lc =
      logical_consistency(setup.graph, run.completion_order(), setup.app_of);
  report.sr = run.succeeded();
  report.ams = action_match_score(log.actions(), reference_trajectory(setup));
  report.steps_used = run.steps_used();
  report.failure_reason = run.failure_reason();
  return report;
}

// Pluggable synthesizer contracts for the cross-verification loop. Each
// candidate generation sees the accumulated failure feedback.
using TrajectorySynth = std::function<std::vector<Action>(
    const Subtask&, const std::vector<std::string>&)>;
using EvalFunctionSynth =
    std::function<EvalFunction(const Subtask&, const std::vector<std::string>&)>;

inline TrajectorySynth reference_trajectory_synth() {
  return [](const Subtask& s, const std::vector<std::string>&) {
    return reference_script(s).actions;
  };
}

inline EvalFunctionSynth reference_eval_synth() {
  return [](const Subtask& s, const std::vector<std::string>&) {
    return reference_eval_function(s);
  };
}

enum class VerificationStatus { Verified, Exhausted };

inline const char* verification_status_name(VerificationStatus s) {
  return s == VerificationStatus::Verified ? "verified" : "exhausted";
}

struct VerificationOutcome {
  int iterations = 0;
  VerificationStatus status = VerificationStatus::Exhausted;
  std::vector<std::string> transcript;  // failure message per iteration
  std::vector<Action> trajectory;       // last candidates
  EvalFunction eval_function;
};

// Alternates trajectory and evaluation-function synthesis, replaying each
// candidate trajectory in a fresh log and running the candidate function on
// it. A mismatch feeds the failure message back to both synthesizers; the
// loop stops at the first verified pair or after max_iters. Malformed
// candidates (invalid actions, unknown APIs, empty functions) raise Error
// rather than counting as failed verification.
inline VerificationOutcome cross_verify(const TrajectorySynth& traj_synth,
                                        const EvalFunctionSynth& eval_synth,
                                        const Subtask& subtask, int max_iters,
                                        const EnvironmentFacts& fixture = {}) {
  if (max_iters < 1) throw Error("cross_verify: max_iters must be positive");
  VerificationOutcome outcome;
  for (int iter = 1; iter <= max_iters; ++iter) {
    outcome.iterations = iter;
    outcome.trajectory = traj_synth(subtask, outcome.transcript);
    outcome.eval_function = eval_synth(subtask, outcome.transcript);
    EventLog log(fixture);
    for (const auto& a : outcome.trajectory) log.append(a);
    EvalResult result = run_eval_function(outcome.eval_function, log);
    if (result.success) {
      outcome.status = VerificationStatus::Verified;
      return outcome;
    }
    outcome.transcript.push_back(result.message);
  }
  outcome.status = VerificationStatus::Exhausted;
  return outcome;
}

// An evaluation function keeps discriminatory power iff it rejects the
// trajectories of unrelated tasks; at least three foreign logs are required.
inline bool discriminative_check(const EvalFunction& fn,
                                 const std::vector<EventLog>& foreign_logs) {
  if (foreign_logs.size() < 3)
    throw Error("discriminative_check needs at least 3 foreign trajectories");
  for (const auto& log : foreign_logs)
    if (run_eval_function(fn, log).success) return false;
  return true;
}

}  // namespace taskgraph
