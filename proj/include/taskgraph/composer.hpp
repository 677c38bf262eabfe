#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/complexity.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/graph.hpp"
#include "taskgraph/instruction.hpp"
#include "taskgraph/subtask.hpp"

namespace taskgraph {

// Resource categories that pre-exist in the environment (e.g. a file that
// is already on disk); inputs in this set need no producing subtask.
struct EnvironmentManifest {
  std::set<std::string> provided;
};

// Read-only collection of verified subtasks plus the category -> producers
// index used for wiring.
class SubtaskPool {
 public:
  SubtaskPool() = default;

  void add(Subtask subtask) {
    auto report = validate_subtask(subtask);
    if (!report.empty()) throw Error("invalid subtask: " + report.front());
    auto [it, inserted] = subtasks_.emplace(subtask.id, std::move(subtask));
    if (!inserted) throw Error("duplicate subtask id '" + it->first + "'");
    for (const auto& cat : it->second.output_resources)
      producers_[cat].push_back(it->first);
    for (auto& [cat, ids] : producers_) std::sort(ids.begin(), ids.end());
  }

  const Subtask& at(const NodeId& id) const {
    auto it = subtasks_.find(id);
    if (it == subtasks_.end()) throw Error("unknown subtask id '" + id + "'");
    return it->second;
  }

  bool contains(const NodeId& id) const { return subtasks_.count(id) > 0; }
  std::size_t size() const { return subtasks_.size(); }
  const std::map<NodeId, Subtask>& subtasks() const { return subtasks_; }

  // ids producing the category, ascending
  std::vector<NodeId> producers_of(const std::string& category) const {
    auto it = producers_.find(category);
    return it == producers_.end() ? std::vector<NodeId>{} : it->second;
  }

  std::map<NodeId, std::string> applications() const {
    std::map<NodeId, std::string> out;
    for (const auto& [id, s] : subtasks_) out[id] = s.application;
    return out;
  }

  friend bool operator==(const SubtaskPool& a, const SubtaskPool& b) {
    return a.subtasks_ == b.subtasks_;
  }

 private:
  std::map<NodeId, Subtask> subtasks_;
  std::map<std::string, std::vector<NodeId>> producers_;
};

struct IntentGroup {
  std::string intent;
  std::vector<NodeId> members;
};

// Composition search parameters: required complexity levels (any subset of
// the five dimensions), node-count bounds, and the deterministic seed and
// candidate budget of the subset search.
struct CompositionConstraint {
  std::map<Dimension, Level> required_levels;
  int min_nodes = 1;
  int max_nodes = kTopoEnumerationCap;
  std::uint64_t seed = 0;
  int budget = 10000;

  void validate() const {
    if (min_nodes < 1 || max_nodes < min_nodes)
      throw Error("composition constraint bounds are inconsistent");
  }

  bool satisfied_by(const ComplexityProfile& profile) const {
    for (const auto& [dim, level] : required_levels)
      if (profile[dim].level != level) return false;
    return true;
  }

  int violations(const ComplexityProfile& profile) const {
    int v = 0;
    for (const auto& [dim, level] : required_levels)
      if (profile[dim].level != level) ++v;
    return v;
  }
};

// Raised when the subset search exhausts its budget without a graph whose
// profile meets every required level; carries the closest profile found.
class InfeasibleConstraintError : public Error {
 public:
  InfeasibleConstraintError(const std::string& what,
                            std::optional<ComplexityProfile> closest)
      : Error(what), closest_profile(std::move(closest)) {}
  std::optional<ComplexityProfile> closest_profile;
};

// Wires dependency edges by resource matching. For each member input
// category, the edge comes from the lowest-id member producing it; a
// category nobody produces must be environment-provided. The result is
// acyclic or an error naming the cycle.
inline std::vector<Edge> wire_edges(const std::vector<Subtask>& members,
                                    const EnvironmentManifest& env = {}) {
  std::set<NodeId> ids;
  for (const auto& m : members)
    if (!ids.insert(m.id).second)
      throw Error("duplicate member id '" + m.id + "'");

  std::map<std::string, std::vector<NodeId>> producers;
  for (const auto& m : members)
    for (const auto& cat : m.output_resources) producers[cat].push_back(m.id);
  for (auto& [cat, list] : producers) std::sort(list.begin(), list.end());

  std::vector<Edge> edges;
  for (const auto& m : members) {
    for (const auto& cat : m.input_resources) {
      auto it = producers.find(cat);
      NodeId provider;
      for (const auto& candidate :
           it == producers.end() ? std::vector<NodeId>{} : it->second) {
        if (candidate == m.id) continue;  // no self-provision
        provider = candidate;
        break;  // lowest id wins
      }
      if (provider.empty()) {
        if (env.provided.count(cat)) continue;
        throw Error("unsatisfied input '" + cat + "' of subtask " + m.id);
      }
      edges.emplace_back(provider, m.id);
    }
  }

  std::vector<NodeId> node_ids(ids.begin(), ids.end());
  TaskGraph probe = TaskGraph::make(node_ids, edges);
  if (!is_acyclic(probe)) {
    // surface the cycle: nodes Kahn never releases
    auto order = kahn_order(probe);
    std::set<NodeId> released(order.begin(), order.end());
    std::string cycle;
    for (const auto& id : node_ids)
      if (!released.count(id)) cycle += (cycle.empty() ? "" : ", ") + id;
    throw Error("resource wiring creates a cycle among: " + cycle);
  }
  return probe.edge_list();
}

// Instantiated instruction text per node; defaults to each subtask's first
// parameter set when no explicit choice is given.
inline NodeTexts node_texts(
    const TaskGraph& graph, const SubtaskPool& pool,
    const std::map<NodeId, ParameterSet>& choice = {}) {
  NodeTexts texts;
  for (const auto& id : graph.nodes) {
    const Subtask& s = pool.at(id);
    const ParameterSet* params = nullptr;
    auto it = choice.find(id);
    if (it != choice.end())
      params = &it->second;
    else if (!s.available_parameters.empty())
      params = &s.available_parameters.front();
    static const ParameterSet kEmpty;
    texts[id] =
        instantiate_template(s.instruction_template, params ? *params : kEmpty,
                             id);
  }
  return texts;
}

namespace detail {

// k-subsets of [0, n) in lexicographic order, at most `limit` of them.
inline std::vector<std::vector<int>> k_subsets(int n, int k, int limit) {
  std::vector<std::vector<int>> out;
  if (k > n || k <= 0 || limit <= 0) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    if (static_cast<int>(out.size()) >= limit) break;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

// Bottom-up composition: searches subsets of the intent group in increasing
// size (seed-shuffled within each size, bounded by the candidate budget) for
// a wiring whose complexity profile meets the constraint. The returned graph
// is validated, carries the group intent, a rendered instruction, and its
// successful topological orders (all of them up to the enumeration cap, one
// witness beyond it).
inline TaskGraph compose(const SubtaskPool& pool, const IntentGroup& group,
                         const CompositionConstraint& constraint,
                         const AppCategoryRegistry& registry = default_registry(),
                         const EnvironmentManifest& env = {},
                         const ThresholdTable& thresholds = default_thresholds()) {
  constraint.validate();
  std::vector<NodeId> members = group.members;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const auto& id : members)
    if (!pool.contains(id))
      throw Error("intent group member '" + id + "' is not in the pool");

  const int n = static_cast<int>(members.size());
  int remaining = constraint.budget;
  std::optional<ComplexityProfile> closest;
  int closest_violations = -1;

  for (int k = std::max(1, constraint.min_nodes);
       k <= std::min(n, constraint.max_nodes) && remaining > 0; ++k) {
    auto subsets = detail::k_subsets(n, k, remaining);
    std::mt19937_64 rng(constraint.seed ^ (0x9e3779b97f4a7c15ULL * k));
    std::shuffle(subsets.begin(), subsets.end(), rng);
    for (const auto& subset : subsets) {
      if (remaining-- <= 0) break;
      std::vector<Subtask> chosen;
      for (int i : subset) chosen.push_back(pool.at(members[i]));
      std::vector<Edge> edges;
      try {
        edges = wire_edges(chosen, env);
      } catch (const Error&) {
        continue;  // unsatisfiable or cyclic wiring; try the next subset
      }
      std::vector<NodeId> ids;
      for (const auto& s : chosen) ids.push_back(s.id);
      TaskGraph graph = TaskGraph::make(ids, edges, group.intent);
      ComplexityProfile profile =
          classify(graph, pool.applications(), registry, thresholds);
      int violations = constraint.violations(profile);
      if (closest_violations < 0 || violations < closest_violations) {
        closest_violations = violations;
        closest = profile;
      }
      if (violations > 0) continue;
      if (static_cast<int>(graph.nodes.size()) <= kTopoEnumerationCap)
        graph.successful_topo = all_topological_orders(graph);
      else
        graph.successful_topo = {kahn_order(graph)};
      graph.instruction = render_instruction(graph, node_texts(graph, pool));
      auto report = validate_graph(graph);
      if (!report.empty())
        throw Error("composed graph failed validation: " + report.front());
      return graph;
    }
  }
  throw InfeasibleConstraintError(
      "infeasible constraint: no subset of intent group '" + group.intent +
          "' satisfies the required complexity levels within the budget",
      closest);
}

// Contract for external intent extraction. The reference implementation
// groups subtasks that share a resource chain: members connected (in either
// direction) through produced/consumed categories form one intent.
class IntentExtractor {
 public:
  virtual ~IntentExtractor() = default;
  virtual std::vector<IntentGroup> extract(const SubtaskPool& pool) const = 0;
};

class ResourceChainExtractor final : public IntentExtractor {
 public:
  std::vector<IntentGroup> extract(const SubtaskPool& pool) const override {
    // union-find over subtasks joined by shared categories
    std::map<NodeId, NodeId> parent;
    for (const auto& [id, s] : pool.subtasks()) parent[id] = id;
    std::function<NodeId(NodeId)> find = [&](NodeId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::map<std::string, std::vector<NodeId>> touches;
    for (const auto& [id, s] : pool.subtasks()) {
      for (const auto& cat : s.input_resources) touches[cat].push_back(id);
      for (const auto& cat : s.output_resources) touches[cat].push_back(id);
    }
    for (const auto& [cat, ids] : touches)
      for (std::size_t i = 1; i < ids.size(); ++i)
        parent[find(ids[i])] = find(ids[0]);

    std::map<NodeId, std::vector<NodeId>> groups;
    for (const auto& [id, s] : pool.subtasks()) groups[find(id)].push_back(id);
    std::vector<IntentGroup> out;
    for (auto& [root, ids] : groups) {
      std::sort(ids.begin(), ids.end());
      std::set<std::string> apps;
      for (const auto& id : ids) apps.insert(pool.at(id).application);
      std::string intent = "Workflow across";
      for (const auto& app : apps) intent += " " + app + ",";
      intent.back() = ' ';
      intent += "(" + std::to_string(ids.size()) + " subtasks)";
      out.push_back({intent, std::move(ids)});
    }
    return out;
  }
};

}  // namespace taskgraph
