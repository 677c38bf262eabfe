#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/error.hpp"
#include "taskgraph/eval_function.hpp"
#include "taskgraph/event_log.hpp"
#include "taskgraph/graph.hpp"

namespace taskgraph {

enum class NodeState { Waiting, Evaluating, Completed };

inline const char* node_state_name(NodeState s) {
  switch (s) {
    case NodeState::Waiting: return "Waiting";
    case NodeState::Evaluating: return "Evaluating";
    default: return "Completed";
  }
}

// Per-task step budget when none is configured: this many consecutive
// actions without a completion fail the run.
inline constexpr int kDefaultStepBudget = 15;

// The graph-based evaluation state machine. Every node starts Waiting
// except the in-degree-0 frontier, which starts Evaluating. After each
// action, all Evaluating nodes are re-checked against the log; completions
// promote newly-enabled successors, cascading within the same step until a
// fixpoint. A run fails once `max_steps` actions pass without any
// completion, and succeeds when every node is Completed.
class EvaluationRun {
 public:
  EvaluationRun(TaskGraph graph, std::map<NodeId, EvalFunction> bindings,
                int max_steps = kDefaultStepBudget)
      : graph_(std::move(graph)),
        bindings_(std::move(bindings)),
        max_steps_(max_steps) {
    if (max_steps_ < 1) throw Error("step budget must be positive");
    auto report = validate_graph(graph_);
    if (!report.empty())
      throw Error("evaluation over invalid graph: " + report.front());
    for (const auto& id : graph_.nodes)
      if (!bindings_.count(id))
        throw Error("no evaluation function bound for node '" + id + "'");
    preds_ = predecessor_map(graph_);
    for (const auto& id : graph_.nodes)
      states_[id] =
          preds_.at(id).empty() ? NodeState::Evaluating : NodeState::Waiting;
    if (graph_.nodes.empty()) terminated_ = true;  // vacuous success
  }

  void step(const Action& action, EventLog& log) {
    if (terminated_) throw Error("stepping a terminated run");
    log.append(action);
    ++steps_used_;

    bool any_completed = false;
    while (true) {
      std::vector<NodeId> wave;
      for (const auto& [id, state] : states_) {
        if (state != NodeState::Evaluating) continue;
        if (run_eval_function(bindings_.at(id), log).success)
          wave.push_back(id);  // id order via map iteration
      }
      if (wave.empty()) break;
      any_completed = true;
      for (const auto& id : wave) {
        states_[id] = NodeState::Completed;
        completion_order_.push_back(id);
      }
      for (const auto& [id, state] : states_) {
        if (state != NodeState::Waiting) continue;
        bool enabled = true;
        for (const auto& p : preds_.at(id))
          if (states_.at(p) != NodeState::Completed) enabled = false;
        if (enabled) states_[id] = NodeState::Evaluating;
      }
    }

    if (any_completed)
      steps_since_last_completion_ = 0;
    else
      ++steps_since_last_completion_;

    if (completion_order_.size() == graph_.nodes.size()) {
      terminated_ = true;
    } else if (steps_since_last_completion_ >= max_steps_) {
      terminated_ = true;
      failure_reason_ = "step budget exhausted";
    }
  }

  bool terminated() const { return terminated_; }
  bool succeeded() const {
    return terminated_ && completion_order_.size() == graph_.nodes.size();
  }
  const TaskGraph& graph() const { return graph_; }
  const std::map<NodeId, NodeState>& states() const { return states_; }
  const std::vector<NodeId>& completion_order() const {
    return completion_order_;
  }
  int steps_used() const { return steps_used_; }
  int steps_since_last_completion() const {
    return steps_since_last_completion_;
  }
  int max_steps() const { return max_steps_; }
  const std::optional<std::string>& failure_reason() const {
    return failure_reason_;
  }

  std::set<NodeId> evaluating() const {
    std::set<NodeId> out;
    for (const auto& [id, state] : states_)
      if (state == NodeState::Evaluating) out.insert(id);
    return out;
  }
  std::set<NodeId> completed() const {
    return {completion_order_.begin(), completion_order_.end()};
  }

 private:
  TaskGraph graph_;
  std::map<NodeId, EvalFunction> bindings_;
  std::map<NodeId, std::vector<NodeId>> preds_;
  std::map<NodeId, NodeState> states_;
  std::vector<NodeId> completion_order_;
  int max_steps_;
  int steps_used_ = 0;
  int steps_since_last_completion_ = 0;
  bool terminated_ = false;
  std::optional<std::string> failure_reason_;
};

}  // namespace taskgraph
