#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/action.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/graph.hpp"

namespace taskgraph {

// The minimal action list that satisfies one subtask's evaluation function.
struct ActionScript {
  std::vector<Action> actions;
};

// Control text of the filler action an agent emits when it has nothing
// useful left to do; no reference evaluation function ever queries it.
inline const char* kInertControlText = "[stall]";

inline Action inert_action() { return Action::click(kInertControlText); }

// Deterministic scripted agents standing in for model-driven baselines.
class ScriptedAgent {
 public:
  enum class Policy { Perfect, Noisy, Shuffled, Stall };

  // Plays the per-subtask scripts along the given order, which must be one
  // of the graph's successful topological orders.
  static ScriptedAgent perfect(std::vector<NodeId> order) {
    ScriptedAgent a;
    a.policy_ = Policy::Perfect;
    a.order_ = std::move(order);
    return a;
  }

  // Like perfect over the first successful order, but each action is
  // emitted with a wrong control text with probability p_fail.
  static ScriptedAgent noisy(double p_fail, std::uint64_t seed) {
    if (p_fail < 0 || p_fail > 1) throw Error("p_fail outside [0,1]");
    ScriptedAgent a;
    a.policy_ = Policy::Noisy;
    a.p_fail_ = p_fail;
    a.seed_ = seed;
    return a;
  }

  // Plays the scripts along a seeded random topological order.
  static ScriptedAgent shuffled(std::uint64_t seed) {
    ScriptedAgent a;
    a.policy_ = Policy::Shuffled;
    a.seed_ = seed;
    return a;
  }

  // Never completes anything.
  static ScriptedAgent stall() {
    ScriptedAgent a;
    a.policy_ = Policy::Stall;
    return a;
  }

  Policy policy() const { return policy_; }

  // The planned action stream for this task.
  std::vector<Action> plan(const TaskGraph& graph,
                           const std::map<NodeId, ActionScript>& scripts) const {
    switch (policy_) {
      case Policy::Stall:
        return {};
      case Policy::Perfect:
        return concatenate(validated_order(graph), scripts);
      case Policy::Shuffled:
        return concatenate(random_topological_order(graph, seed_), scripts);
      case Policy::Noisy: {
        std::vector<NodeId> order = graph.successful_topo.empty()
                                        ? kahn_order(graph)
                                        : graph.successful_topo.front();
        std::vector<Action> actions = concatenate(order, scripts);
        std::mt19937_64 rng(seed_);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (Action& a : actions) {
          if (uniform(rng) < p_fail_ && a.control_text)
            a.control_text = "[missed] " + *a.control_text;
        }
        return actions;
      }
    }
    return {};
  }

  // Seeded uniform choice among ready nodes at every step of Kahn's
  // algorithm; always a valid topological order.
  static std::vector<NodeId> random_topological_order(const TaskGraph& graph,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<NodeId, int> indeg;
    for (const auto& id : graph.nodes) indeg[id] = 0;
    for (const auto& [from, succ] : graph.edges)
      for (const auto& to : succ) ++indeg[to];
    std::vector<NodeId> ready;
    for (const auto& [id, d] : indeg)
      if (d == 0) ready.push_back(id);
    std::vector<NodeId> order;
    while (!ready.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      std::size_t i = pick(rng);
      NodeId id = ready[i];
      ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
      order.push_back(id);
      auto it = graph.edges.find(id);
      if (it == graph.edges.end()) continue;
      for (const auto& to : it->second)
        if (--indeg[to] == 0) ready.push_back(to);
    }
    if (order.size() != graph.nodes.size())
      throw Error("random_topological_order: graph has a cycle");
    return order;
  }

 private:
  std::vector<NodeId> validated_order(const TaskGraph& graph) const {
    if (!graph.successful_topo.empty()) {
      for (const auto& topo : graph.successful_topo)
        if (topo == order_) return order_;
      throw Error("perfect agent order is not in successful_topo");
    }
    if (!is_topological_order(graph, order_))
      throw Error("perfect agent order is not a topological order");
    return order_;
  }

  static std::vector<Action> concatenate(
      const std::vector<NodeId>& order,
      const std::map<NodeId, ActionScript>& scripts) {
    std::vector<Action> out;
    for (const auto& id : order) {
      auto it = scripts.find(id);
      if (it == scripts.end())
        throw Error("no action script for node '" + id + "'");
      out.insert(out.end(), it->second.actions.begin(),
                 it->second.actions.end());
    }
    return out;
  }

  Policy policy_ = Policy::Stall;
  std::vector<NodeId> order_;
  double p_fail_ = 0.0;
  std::uint64_t seed_ = 0;
};

}  // namespace taskgraph
