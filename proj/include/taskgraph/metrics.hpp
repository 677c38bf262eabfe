#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/action.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/graph.hpp"
#include "taskgraph/rational.hpp"

namespace taskgraph {

// Hard ceiling of the subset DP for the maximum coherency score.
inline constexpr int kCoherencyDpCap = 20;

// Depth-weighted completion fraction. With weights w(i) = d(i)/sum(d), the
// normalization cancels, so CR is exactly sum of completed depths over the
// total depth, kept as an exact rational.
inline Rational coverage_rate(const TaskGraph& graph,
                              const std::set<NodeId>& completed) {
  if (graph.nodes.empty()) throw Error("coverage_rate of empty graph");
  for (const auto& id : completed)
    if (!graph.has_node(id))
      throw Error("coverage_rate: unknown node id '" + id + "'");
  const auto depths = depth_map(graph);
  std::int64_t num = 0, den = 0;
  for (const auto& [id, d] : depths) {
    den += d;
    if (completed.count(id)) num += d;
  }
  return Rational(num, den);
}

// Number of adjacent pairs sharing an application.
inline int coherency_score(const std::vector<NodeId>& sequence,
                           const std::map<NodeId, std::string>& app_of) {
  std::set<NodeId> seen;
  for (const auto& id : sequence)
    if (!seen.insert(id).second)
      throw Error("coherency_score: duplicate node '" + id + "' in sequence");
  int score = 0;
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    auto a = app_of.find(sequence[i]);
    auto b = app_of.find(sequence[i + 1]);
    if (a == app_of.end() || b == app_of.end())
      throw Error("coherency_score: no application for node '" +
                  (a == app_of.end() ? sequence[i] : sequence[i + 1]) + "'");
    if (a->second == b->second) ++score;
  }
  return score;
}

// Maximum coherency over all linear extensions, by direct enumeration.
inline int max_coherency_exhaustive(const TaskGraph& graph,
                                    const std::map<NodeId, std::string>& app_of,
                                    int cap = kTopoEnumerationCap) {
  int best = 0;
  for (const auto& order : all_topological_orders(graph, cap))
    best = std::max(best, coherency_score(order, app_of));
  return best;
}

// Maximum coherency via DP over (completed subset, last node).
inline int max_coherency_dp(const TaskGraph& graph,
                            const std::map<NodeId, std::string>& app_of) {
  const int n = static_cast<int>(graph.nodes.size());
  if (n > kCoherencyDpCap)
    throw Error("max_coherency: " + std::to_string(n) +
                " nodes exceeds the DP limit of " +
                std::to_string(kCoherencyDpCap));
  if (n <= 1) return 0;

  std::map<NodeId, int> index;
  for (int i = 0; i < n; ++i) index[graph.nodes[i]] = i;
  std::vector<std::uint32_t> pred_mask(n, 0);
  for (const auto& [from, succ] : graph.edges)
    for (const auto& to : succ) pred_mask[index.at(to)] |= 1u << index.at(from);
  std::vector<int> app(n);
  {
    std::map<std::string, int> app_index;
    for (int i = 0; i < n; ++i) {
      auto it = app_of.find(graph.nodes[i]);
      if (it == app_of.end())
        throw Error("max_coherency: no application for node '" +
                    graph.nodes[i] + "'");
      app[i] = app_index.emplace(it->second, (int)app_index.size())
                   .first->second;
    }
  }

  const std::size_t full = std::size_t{1} << n;
  std::vector<std::int8_t> dp(full * n, -1);
  for (int v = 0; v < n; ++v)
    if (pred_mask[v] == 0) dp[(std::size_t{1} << v) * n + v] = 0;
  int best = -1;
  for (std::size_t s = 1; s < full; ++s) {
    for (int last = 0; last < n; ++last) {
      std::int8_t cur = dp[s * n + last];
      if (cur < 0 || !(s >> last & 1)) continue;
      if (s + 1 == full) {
        best = std::max(best, static_cast<int>(cur));
        continue;
      }
      for (int v = 0; v < n; ++v) {
        if (s >> v & 1) continue;
        if ((pred_mask[v] & ~s) != 0) continue;  // some predecessor missing
        std::int8_t next =
            static_cast<std::int8_t>(cur + (app[last] == app[v] ? 1 : 0));
        auto& slot = dp[(s | std::size_t{1} << v) * n + v];
        if (next > slot) slot = next;
      }
    }
  }
  if (best < 0) throw Error("max_coherency: graph has a cycle");
  return best;
}

// Dispatches on size: enumeration up to the cap, subset DP up to 20 nodes.
inline int max_coherency(const TaskGraph& graph,
                         const std::map<NodeId, std::string>& app_of,
                         int enum_cap = kTopoEnumerationCap) {
  if (static_cast<int>(graph.nodes.size()) <= enum_cap)
    return max_coherency_exhaustive(graph, app_of, enum_cap);
  return max_coherency_dp(graph, app_of);
}

// LC = CS(agent sequence) / max CS, with LC = 1 when the maximum is zero
// (every node in its own application; no order can be incoherent). The
// agent sequence must be a topological prefix: every predecessor of an
// element appears earlier in the sequence.
inline Rational logical_consistency(const TaskGraph& graph,
                                    const std::vector<NodeId>& agent_sequence,
                                    const std::map<NodeId, std::string>& app_of,
                                    int enum_cap = kTopoEnumerationCap) {
  const auto preds = predecessor_map(graph);
  std::set<NodeId> before;
  for (const auto& id : agent_sequence) {
    if (!graph.has_node(id))
      throw Error("logical_consistency: unknown node '" + id + "'");
    auto it = preds.find(id);
    for (const auto& p : it->second)
      if (!before.count(p))
        throw Error("logical_consistency: sequence violates topology at '" +
                    id + "'");
    before.insert(id);
  }
  const int cs_max = max_coherency(graph, app_of, enum_cap);
  if (cs_max == 0) return Rational(1, 1);
  return Rational(coherency_score(agent_sequence, app_of), cs_max);
}

// Canonical token of an action for sequence comparison: kind, principal
// argument, and the targeted control text.
inline std::string action_token(const Action& a) {
  std::string principal;
  switch (a.kind) {
    case ActionKind::ClickInput:
      principal = a.button + (a.double_click ? ":double" : ":single");
      break;
    case ActionKind::WheelMouseInput:
      principal = std::to_string(a.dx) + "," + std::to_string(a.dy);
      break;
    case ActionKind::KeyboardInput:
      principal = a.text;
      break;
  }
  return std::string(action_kind_name(a.kind)) + "|" + principal + "|" +
         a.control_text.value_or("");
}

// 1 minus the edit distance between the token sequences, normalized by the
// longer length. Two empty sequences match perfectly.
inline Rational action_match_score(const std::vector<Action>& predicted,
                                   const std::vector<Action>& reference) {
  std::vector<std::string> p, r;
  for (const auto& a : predicted) p.push_back(action_token(a));
  for (const auto& a : reference) r.push_back(action_token(a));
  const std::size_t n = p.size(), m = r.size();
  if (n == 0 && m == 0) return Rational(1, 1);
  std::vector<std::int64_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::int64_t sub = prev[j - 1] + (p[i - 1] == r[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  const std::int64_t dist = prev[m];
  const std::int64_t longest = static_cast<std::int64_t>(std::max(n, m));
  return Rational(longest - dist, longest);
}

// Population standard deviation of per-reordering scores.
inline double sensitivity(const std::vector<double>& scores) {
  if (scores.empty()) throw Error("sensitivity of empty score list");
  double mean = 0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());
  return std::sqrt(var);
}

// Final metrics of one evaluation run.
struct MetricsReport {
  Rational cr{0, 1};
  Rational lc{1, 1};
  bool sr = false;
  std::optional<Rational> ams;  // needs a reference trajectory
  int steps_used = 0;
  std::optional<std::string> failure_reason;
};

}  // namespace taskgraph
