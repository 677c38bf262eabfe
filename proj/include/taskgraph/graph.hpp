#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taskgraph/error.hpp"

namespace taskgraph {

using NodeId = std::string;
using Edge = std::pair<NodeId, NodeId>;

// Default ceiling for exhaustive linear-extension enumeration; above it the
// metrics module switches to the subset DP.
inline constexpr int kTopoEnumerationCap = 12;

// A DAG of subtask nodes. Values are treated as immutable once built;
// adjacency is id-sorted so every traversal and report is reproducible.
struct TaskGraph {
  std::vector<NodeId> nodes;                 // sorted, unique
  std::map<NodeId, std::vector<NodeId>> edges;  // id -> sorted successor ids
  std::string intent;
  std::string instruction;
  std::vector<std::vector<NodeId>> successful_topo;

  // Canonical constructor: sorts nodes, collapses duplicate edges, keeps
  // every node keyed in the adjacency map.
  static TaskGraph make(std::vector<NodeId> node_ids,
                        const std::vector<Edge>& edge_list,
                        std::string intent = "", std::string instruction = "") {
    TaskGraph g;
    std::sort(node_ids.begin(), node_ids.end());
    node_ids.erase(std::unique(node_ids.begin(), node_ids.end()),
                   node_ids.end());
    g.nodes = std::move(node_ids);
    for (const auto& id : g.nodes) g.edges[id];
    for (const auto& [from, to] : edge_list) {
      auto& succ = g.edges[from];
      if (std::find(succ.begin(), succ.end(), to) == succ.end())
        succ.push_back(to);
    }
    for (auto& [id, succ] : g.edges) std::sort(succ.begin(), succ.end());
    g.intent = std::move(intent);
    g.instruction = std::move(instruction);
    return g;
  }

  bool has_node(const NodeId& id) const {
    return std::binary_search(nodes.begin(), nodes.end(), id);
  }

  std::vector<Edge> edge_list() const {
    std::vector<Edge> out;
    for (const auto& [from, succ] : edges)
      for (const auto& to : succ) out.emplace_back(from, to);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& [from, succ] : edges) n += succ.size();
    return n;
  }

  friend bool operator==(const TaskGraph&, const TaskGraph&) = default;
};

// Predecessor adjacency, id-sorted like the successor map.
inline std::map<NodeId, std::vector<NodeId>> predecessor_map(
    const TaskGraph& g) {
  std::map<NodeId, std::vector<NodeId>> preds;
  for (const auto& id : g.nodes) preds[id];
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ) preds[to].push_back(from);
  for (auto& [id, ps] : preds) std::sort(ps.begin(), ps.end());
  return preds;
}

// Kahn order over known nodes; smallest id first among the ready set.
// Returns nodes in topological order, shorter than |nodes| iff a cycle
// exists among the remaining nodes.
inline std::vector<NodeId> kahn_order(const TaskGraph& g) {
  std::map<NodeId, int> indeg;
  for (const auto& id : g.nodes) indeg[id] = 0;
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ)
      if (indeg.count(to) && indeg.count(from)) ++indeg[to];
  std::set<NodeId> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.insert(id);
  std::vector<NodeId> order;
  while (!ready.empty()) {
    NodeId id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    auto it = g.edges.find(id);
    if (it == g.edges.end()) continue;
    for (const auto& to : it->second) {
      auto dit = indeg.find(to);
      if (dit != indeg.end() && --dit->second == 0) ready.insert(to);
    }
  }
  return order;
}

inline bool is_acyclic(const TaskGraph& g) {
  return kahn_order(g).size() == g.nodes.size();
}

// True iff seq is a permutation of all nodes respecting every edge.
inline bool is_topological_order(const TaskGraph& g,
                                 const std::vector<NodeId>& seq) {
  if (seq.size() != g.nodes.size()) return false;
  std::map<NodeId, std::size_t> position;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!g.has_node(seq[i])) return false;
    if (!position.emplace(seq[i], i).second) return false;
  }
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ)
      if (position.at(from) >= position.at(to)) return false;
  return true;
}

// Report-style structural validation; never throws. An empty report means
// the graph is well-formed.
inline std::vector<std::string> validate_graph(const TaskGraph& g) {
  std::vector<std::string> report;
  for (const auto& [from, succ] : g.edges) {
    if (!g.has_node(from))
      report.push_back("edge from unknown node '" + from + "'");
    for (const auto& to : succ) {
      if (!g.has_node(to))
        report.push_back("edge to unknown node '" + to + "' from '" + from +
                         "'");
      if (from == to) report.push_back("self-loop at node '" + from + "'");
    }
  }
  if (!report.empty()) return report;  // topology checks need sane endpoints
  if (!is_acyclic(g)) report.push_back("cycle detected in edge relation");
  if (report.empty()) {
    for (std::size_t i = 0; i < g.successful_topo.size(); ++i) {
      if (!is_topological_order(g, g.successful_topo[i]))
        report.push_back("successful_topo[" + std::to_string(i) +
                         "] is not a topological order");
    }
  }
  return report;
}

// Longest-path depths for all nodes: roots have depth 1, every edge (u,v)
// forces depth(v) >= depth(u)+1.
inline std::map<NodeId, int> depth_map(const TaskGraph& g) {
  std::map<NodeId, int> depth;
  const auto order = kahn_order(g);
  for (const auto& id : order) depth[id] = 1;
  for (const auto& id : order) {
    auto it = g.edges.find(id);
    if (it == g.edges.end()) continue;
    for (const auto& to : it->second)
      depth[to] = std::max(depth[to], depth[id] + 1);
  }
  return depth;
}

inline int node_depth(const TaskGraph& g, const NodeId& node) {
  if (!g.has_node(node)) throw Error("unknown node id '" + node + "'");
  return depth_map(g).at(node);
}

// Width = the maximum number of nodes sharing one depth level.
inline int graph_width(const TaskGraph& g) {
  if (g.nodes.empty()) throw Error("graph_width of empty graph");
  std::map<int, int> per_level;
  for (const auto& [id, d] : depth_map(g)) ++per_level[d];
  int width = 0;
  for (const auto& [d, count] : per_level) width = std::max(width, count);
  return width;
}

inline int graph_depth(const TaskGraph& g) {
  if (g.nodes.empty()) throw Error("graph_depth of empty graph");
  int depth = 0;
  for (const auto& [id, d] : depth_map(g)) depth = std::max(depth, d);
  return depth;
}

namespace detail {

inline void enumerate_orders(const TaskGraph& g,
                             std::map<NodeId, int>& indeg,
                             std::vector<NodeId>& prefix,
                             std::vector<std::vector<NodeId>>& out) {
  if (prefix.size() == g.nodes.size()) {
    out.push_back(prefix);
    return;
  }
  // candidates visited in ascending id order -> lexicographic output
  for (auto& [id, d] : indeg) {
    if (d != 0) continue;
    d = -1;  // taken
    prefix.push_back(id);
    auto it = g.edges.find(id);
    if (it != g.edges.end())
      for (const auto& to : it->second) --indeg[to];
    enumerate_orders(g, indeg, prefix, out);
    if (it != g.edges.end())
      for (const auto& to : it->second) ++indeg[to];
    prefix.pop_back();
    d = 0;
  }
}

}  // namespace detail

// Every linear extension, exactly once, lexicographically by node id.
// Bounded by `cap` nodes; larger graphs must use the DP path in metrics.
inline std::vector<std::vector<NodeId>> all_topological_orders(
    const TaskGraph& g, int cap = kTopoEnumerationCap) {
  if (static_cast<int>(g.nodes.size()) > cap)
    throw Error("all_topological_orders: " + std::to_string(g.nodes.size()) +
                " nodes exceeds enumeration cap " + std::to_string(cap));
  if (!is_acyclic(g)) throw Error("all_topological_orders: graph has a cycle");
  std::map<NodeId, int> indeg;
  for (const auto& id : g.nodes) indeg[id] = 0;
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ) ++indeg[to];
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> prefix;
  detail::enumerate_orders(g, indeg, prefix, out);
  return out;
}

}  // namespace taskgraph
