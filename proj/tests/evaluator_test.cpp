#include "taskgraph/evaluator.hpp"

#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "taskgraph/agents.hpp"
#include "taskgraph/metrics.hpp"

namespace taskgraph {
namespace {

TaskGraph diamond() {
  return TaskGraph::make({"A", "B", "C", "D"},
                         {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
}

// Bindings completed by typing "done:<id>".
std::map<NodeId, EvalFunction> marker_bindings(const TaskGraph& g) {
  std::map<NodeId, EvalFunction> bindings;
  for (const auto& id : g.nodes) {
    EvalFunction fn;
    fn.checks.push_back({"check_keyboard_types",
                         {{"text", "done:" + id + ";"}},
                         "Subtask execution failed because the marker for " +
                             id + " was not typed."});
    bindings[id] = fn;
  }
  return bindings;
}

Action complete(const NodeId& id) { return Action::keys("done:" + id + ";"); }

TEST(EvaluationRun, FreshDiamondHasRootEvaluating) {
  EvaluationRun run(diamond(), marker_bindings(diamond()));
  EXPECT_EQ(run.evaluating(), (std::set<NodeId>{"A"}));
  EXPECT_EQ(run.states().at("B"), NodeState::Waiting);
  EXPECT_EQ(run.states().at("C"), NodeState::Waiting);
  EXPECT_EQ(run.states().at("D"), NodeState::Waiting);
}

TEST(EvaluationRun, CompletionPromotesSuccessors) {
  EvaluationRun run(diamond(), marker_bindings(diamond()));
  EventLog log;
  run.step(complete("A"), log);
  EXPECT_EQ(run.states().at("A"), NodeState::Completed);
  EXPECT_EQ(run.evaluating(), (std::set<NodeId>{"B", "C"}));
  EXPECT_EQ(run.completion_order(), std::vector<NodeId>{"A"});
}

TEST(EvaluationRun, StepBudgetExhaustionFailsTheRun) {
  EvaluationRun run(diamond(), marker_bindings(diamond()), 3);
  EventLog log;
  for (int i = 0; i < 3; ++i) run.step(Action::click("nothing"), log);
  EXPECT_TRUE(run.terminated());
  EXPECT_FALSE(run.succeeded());
  ASSERT_TRUE(run.failure_reason().has_value());
  EXPECT_EQ(*run.failure_reason(), "step budget exhausted");
  EXPECT_THROW(run.step(Action::click("more"), log), Error);
}

TEST(EvaluationRun, BudgetResetsOnCompletion) {
  EvaluationRun run(diamond(), marker_bindings(diamond()), 3);
  EventLog log;
  run.step(Action::click("noop"), log);
  run.step(Action::click("noop"), log);
  run.step(complete("A"), log);  // resets the stall counter
  EXPECT_FALSE(run.terminated());
  EXPECT_EQ(run.steps_since_last_completion(), 0);
}

TEST(EvaluationRun, FullRunCompletesInTopologicalOrder) {
  EvaluationRun run(diamond(), marker_bindings(diamond()));
  EventLog log;
  run.step(complete("A"), log);
  run.step(complete("C"), log);
  run.step(complete("B"), log);
  run.step(complete("D"), log);
  EXPECT_TRUE(run.succeeded());
  EXPECT_EQ(run.completion_order(),
            (std::vector<NodeId>{"A", "C", "B", "D"}));
  EXPECT_TRUE(is_topological_order(run.graph(), run.completion_order()));
}

TEST(EvaluationRun, SimultaneousCompletionsOrderedById) {
  TaskGraph g = TaskGraph::make({"x", "y"}, {});
  std::map<NodeId, EvalFunction> bindings;
  for (const auto& id : g.nodes) {
    EvalFunction fn;
    fn.checks.push_back({"check_mouse_clicks", {{"text", "go"}}, "no"});
    bindings[id] = fn;
  }
  EvaluationRun run(g, bindings);
  EventLog log;
  run.step(Action::click("go"), log);
  EXPECT_EQ(run.completion_order(), (std::vector<NodeId>{"x", "y"}));
  EXPECT_TRUE(run.succeeded());
}

TEST(EvaluationRun, CascadeCompletesEnabledSuccessorsSameStep) {
  // B's marker is typed before B is evaluating; once A completes, the
  // fixpoint pass picks B up on the same action.
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  EvaluationRun run(g, marker_bindings(g));
  EventLog log;
  run.step(complete("B"), log);
  EXPECT_EQ(run.completion_order(), std::vector<NodeId>{});
  run.step(complete("A"), log);
  EXPECT_EQ(run.completion_order(), (std::vector<NodeId>{"A", "B"}));
  EXPECT_TRUE(run.succeeded());
}

TEST(EvaluationRun, MissingBindingThrowsUpFront) {
  TaskGraph g = diamond();
  auto bindings = marker_bindings(g);
  bindings.erase("C");
  EXPECT_THROW(EvaluationRun(g, bindings), Error);
}

TEST(EvaluationRun, FrontierMatchesBruteForceOnRandomSchedules) {
  std::mt19937_64 rng(20250808);
  for (int trial = 0; trial < 150; ++trial) {
    TaskGraph g = oracles::random_dag(rng, 1 + trial % 8, 0.35);
    EvaluationRun run(g, marker_bindings(g), 1000);
    EventLog log;
    std::vector<NodeId> schedule =
        ScriptedAgent::random_topological_order(g, rng());
    std::uniform_int_distribution<int> noop(0, 2);
    for (const auto& id : schedule) {
      if (noop(rng) == 0 && !run.terminated())
        run.step(Action::click("noop"), log);
      if (run.terminated()) break;
      run.step(complete(id), log);
      EXPECT_EQ(run.evaluating(), oracles::brute_evaluating(g, run.completed()))
          << "after completing " << id;
    }
    EXPECT_TRUE(run.succeeded());
  }
}

}  // namespace
}  // namespace taskgraph
