#pragma once

// Brute-force reference implementations used to check the library. These
// deliberately take the slow, obviously-correct route and share no code
// with the implementation paths they verify.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/graph.hpp"
#include "taskgraph/rational.hpp"

namespace oracles {

using taskgraph::Edge;
using taskgraph::NodeId;
using taskgraph::Rational;
using taskgraph::TaskGraph;

// All topological orders by filtering every permutation. Usable to n ~ 8.
inline std::vector<std::vector<NodeId>> permutation_topological_orders(
    const TaskGraph& g) {
  std::vector<NodeId> perm = g.nodes;
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<NodeId>> out;
  do {
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
    bool ok = true;
    for (const auto& [from, succ] : g.edges)
      for (const auto& to : succ)
        if (pos.at(from) >= pos.at(to)) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Longest predecessor path by enumerating every path into the node.
inline int brute_depth(const TaskGraph& g, const NodeId& node) {
  std::map<NodeId, std::vector<NodeId>> preds;
  for (const auto& id : g.nodes) preds[id];
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ) preds[to].push_back(from);
  struct Walker {
    const std::map<NodeId, std::vector<NodeId>>& preds;
    int walk(const NodeId& id) const {
      int longest = 0;
      for (const auto& p : preds.at(id))
        longest = std::max(longest, walk(p));
      return longest + 1;
    }
  } walker{preds};
  return walker.walk(node);
}

// The Evaluating frontier recomputed from scratch: nodes not yet completed
// whose predecessors are all completed.
inline std::set<NodeId> brute_evaluating(const TaskGraph& g,
                                         const std::set<NodeId>& completed) {
  std::map<NodeId, std::vector<NodeId>> preds;
  for (const auto& id : g.nodes) preds[id];
  for (const auto& [from, succ] : g.edges)
    for (const auto& to : succ) preds[to].push_back(from);
  std::set<NodeId> out;
  for (const auto& id : g.nodes) {
    if (completed.count(id)) continue;
    bool ready = true;
    for (const auto& p : preds.at(id))
      if (!completed.count(p)) ready = false;
    if (ready) out.insert(id);
  }
  return out;
}

// The depth-weighted coverage formula evaluated literally: per-node weights
// w(i) = d(i)/sum(d), then sum of completed weights over sum of all weights.
inline Rational brute_coverage(const TaskGraph& g,
                               const std::set<NodeId>& completed) {
  std::int64_t total = 0;
  for (const auto& id : g.nodes) total += brute_depth(g, id);
  Rational covered(0, 1), all(0, 1);
  for (const auto& id : g.nodes) {
    Rational w(brute_depth(g, id), total);
    all = all + w;
    if (completed.count(id)) covered = covered + w;
  }
  return covered / all;
}

// Max coherency by scoring every topological order.
inline int brute_max_coherency(const TaskGraph& g,
                               const std::map<NodeId, std::string>& app_of) {
  int best = 0;
  for (const auto& order : permutation_topological_orders(g)) {
    int score = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if (app_of.at(order[i]) == app_of.at(order[i + 1])) ++score;
    best = std::max(best, score);
  }
  return best;
}

// Random DAG on n nodes: edges only from lower to higher rank in a shuffled
// ordering, kept with probability `edge_prob`.
inline TaskGraph random_dag(std::mt19937_64& rng, int n, double edge_prob) {
  std::vector<NodeId> ids;
  for (int i = 0; i < n; ++i)
    ids.push_back("n" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  std::vector<NodeId> rank = ids;
  std::shuffle(rank.begin(), rank.end(), rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform(rng) < edge_prob) edges.emplace_back(rank[i], rank[j]);
  return TaskGraph::make(ids, edges);
}

// Random node -> application assignment over `napps` application names.
inline std::map<NodeId, std::string> random_apps(std::mt19937_64& rng,
                                                 const TaskGraph& g,
                                                 int napps) {
  std::uniform_int_distribution<int> pick(0, napps - 1);
  std::map<NodeId, std::string> out;
  for (const auto& id : g.nodes)
    out[id] = "app" + std::to_string(pick(rng));
  return out;
}

}  // namespace oracles
