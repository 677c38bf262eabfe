#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/error.hpp"
#include "taskgraph/graph.hpp"

namespace taskgraph {

using EdgeSet = std::set<Edge>;
using NodeTexts = std::map<NodeId, std::string>;

// Fixed connective grammar tying a task instruction to its DAG.
//
// Nodes are emitted level by level (level = longest-path depth), id-sorted
// within a level. ", then " separates consecutive levels, "; meanwhile, "
// separates nodes inside one level, and the text ends with ".". A node whose
// predecessors are exactly the whole previous level needs no annotation;
// any other predecessor set is spelled out as "(after step 2 and step 4)"
// in front of the node text, steps numbered in emission order. This makes
// the DAG recoverable from the text: rendering and inference are exact
// inverses on the edge set.

namespace detail {

inline std::string step_list_clause(const std::vector<int>& steps) {
  std::string out = "(after ";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += (i + 1 == steps.size()) ? " and " : ", ";
    out += "step " + std::to_string(steps[i]);
  }
  out += ") ";
  return out;
}

// Levels of the graph: nodes grouped by depth, id-sorted inside each level.
inline std::vector<std::vector<NodeId>> level_groups(const TaskGraph& g) {
  std::map<int, std::vector<NodeId>> by_depth;
  for (const auto& [id, d] : depth_map(g)) by_depth[d].push_back(id);
  std::vector<std::vector<NodeId>> levels;
  for (auto& [d, ids] : by_depth) {
    std::sort(ids.begin(), ids.end());
    levels.push_back(std::move(ids));
  }
  return levels;
}

}  // namespace detail

// Renders the node texts into the connective grammar above.
inline std::string render_instruction(const TaskGraph& graph,
                                      const NodeTexts& texts) {
  if (graph.nodes.empty()) return "";
  const auto levels = detail::level_groups(graph);
  const auto preds = predecessor_map(graph);

  std::map<NodeId, int> step_of;
  int step = 0;
  for (const auto& level : levels)
    for (const auto& id : level) step_of[id] = ++step;

  std::string out;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    for (std::size_t ni = 0; ni < levels[li].size(); ++ni) {
      if (li > 0 && ni == 0)
        out += ", then ";
      else if (ni > 0)
        out += "; meanwhile, ";
      const NodeId& id = levels[li][ni];
      if (li > 0) {
        const std::vector<NodeId>& previous_level = levels[li - 1];
        const std::vector<NodeId>& node_preds = preds.at(id);
        if (node_preds != previous_level) {
          std::vector<int> steps;
          for (const auto& p : node_preds) steps.push_back(step_of.at(p));
          std::sort(steps.begin(), steps.end());
          out += detail::step_list_clause(steps);
        }
      }
      auto it = texts.find(id);
      if (it == texts.end()) throw Error("no text for node '" + id + "'");
      out += it->second;
    }
  }
  out += ".";
  return out;
}

// Renders one topological order of the graph as a plain chain (every join
// a "then"), discarding any parallel structure. Used to probe the
// consistency validator: for graphs of width >= 2 the chain's edge set can
// never match the original.
inline std::string render_instruction_linearized(const TaskGraph& graph,
                                                 const NodeTexts& texts) {
  const auto order = kahn_order(graph);
  std::vector<Edge> chain;
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    chain.emplace_back(order[i], order[i + 1]);
  TaskGraph path = TaskGraph::make(order, chain);
  return render_instruction(path, texts);
}

struct ParsedInstruction {
  std::vector<NodeId> order;  // emission order
  EdgeSet edges;
};

// Parses an instruction produced by the grammar, anchored on the known node
// texts. Node identity is resolved by matching texts (longest match first;
// equal texts consume ids in ascending order). Throws Error on text that
// does not follow the grammar.
inline ParsedInstruction parse_instruction(const std::string& instruction,
                                           const NodeTexts& texts) {
  ParsedInstruction result;
  if (instruction.empty()) return result;

  // text -> unclaimed ids, ascending
  std::map<std::string, std::vector<NodeId>> claims;
  for (const auto& [id, text] : texts) claims[text].push_back(id);

  struct Step {
    NodeId id;
    std::optional<std::vector<int>> explicit_preds;  // 1-based step numbers
    std::size_t level;
  };
  std::vector<Step> steps;
  std::size_t level = 0;
  std::size_t pos = 0;

  auto starts_with = [&](const char* prefix) {
    return instruction.compare(pos, std::string::traits_type::length(prefix),
                               prefix) == 0;
  };

  while (true) {
    std::optional<std::vector<int>> qualifier;
    if (starts_with("(after step ") || starts_with("(after steps ")) {
      std::size_t q = instruction.find(") ", pos);
      if (q == std::string::npos)
        throw Error("unterminated step qualifier at offset " +
                    std::to_string(pos));
      std::string clause = instruction.substr(pos + 7, q - pos - 7);
      std::vector<int> nums;
      std::size_t i = 0;
      while (i < clause.size()) {
        if (!std::isdigit(static_cast<unsigned char>(clause[i]))) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < clause.size() &&
               std::isdigit(static_cast<unsigned char>(clause[j])))
          ++j;
        nums.push_back(std::stoi(clause.substr(i, j - i)));
        i = j;
      }
      if (nums.empty())
        throw Error("empty step qualifier at offset " + std::to_string(pos));
      qualifier = std::move(nums);
      pos = q + 2;
    }

    // longest node text starting here with an unclaimed id
    std::string best;
    for (const auto& [text, ids] : claims) {
      if (ids.empty() || text.empty() || text.size() < best.size()) continue;
      if (instruction.compare(pos, text.size(), text) == 0 &&
          text.size() > best.size())
        best = text;
    }
    if (best.empty())
      throw Error("no node text matches instruction at offset " +
                  std::to_string(pos));
    auto& ids = claims[best];
    NodeId id = ids.front();
    ids.erase(ids.begin());
    steps.push_back({id, std::move(qualifier), level});
    result.order.push_back(id);
    pos += best.size();

    if (starts_with(", then ")) {
      pos += 7;
      ++level;
    } else if (starts_with("; meanwhile, ")) {
      pos += 13;
    } else if (pos + 1 == instruction.size() && instruction[pos] == '.') {
      break;
    } else {
      throw Error("expected connective at offset " + std::to_string(pos));
    }
  }

  // predecessor resolution: explicit step lists, else the whole previous level
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const Step& step = steps[s];
    if (step.explicit_preds) {
      for (int n : *step.explicit_preds) {
        if (n < 1 || static_cast<std::size_t>(n) > s ||
            steps[n - 1].level >= step.level)
          throw Error("step qualifier references step " + std::to_string(n) +
                      " from step " + std::to_string(s + 1));
        result.edges.emplace(steps[n - 1].id, step.id);
      }
    } else if (step.level > 0) {
      for (const Step& other : steps)
        if (other.level + 1 == step.level)
          result.edges.emplace(other.id, step.id);
    }
  }
  return result;
}

// Contracts for external engines standing in for the render/infer pair.
// The grammar implementations below are the deterministic references; an
// external summarizer must produce text whose inferred structure matches the
// graph, which the consistency validator checks after the fact.
class InstructionSummarizer {
 public:
  virtual ~InstructionSummarizer() = default;
  virtual std::string summarize(const TaskGraph& graph,
                                const NodeTexts& texts) const = 0;
};

class GrammarSummarizer final : public InstructionSummarizer {
 public:
  std::string summarize(const TaskGraph& graph,
                        const NodeTexts& texts) const override {
    return render_instruction(graph, texts);
  }
};

class DependencyInferencer {
 public:
  virtual ~DependencyInferencer() = default;
  virtual ParsedInstruction infer(const std::string& instruction,
                                  const NodeTexts& texts) const = 0;
};

class GrammarInferencer final : public DependencyInferencer {
 public:
  ParsedInstruction infer(const std::string& instruction,
                          const NodeTexts& texts) const override {
    return parse_instruction(instruction, texts);
  }
};

inline const DependencyInferencer& reference_inferencer() {
  static const GrammarInferencer inferencer;
  return inferencer;
}

inline EdgeSet infer_dependencies(const std::string& instruction,
                                  const NodeTexts& texts) {
  return parse_instruction(instruction, texts).edges;
}

struct ConsistencyReport {
  bool consistent = false;
  std::vector<Edge> missing_edges;  // in graph, absent from instruction
  std::vector<Edge> extra_edges;    // inferred, absent from graph
  std::vector<NodeId> missing_nodes;
  std::string parse_error;

  std::string summary() const {
    if (consistent) return "consistent";
    std::string out = "inconsistent:";
    if (!parse_error.empty()) out += " parse error: " + parse_error;
    for (const auto& [a, b] : missing_edges)
      out += " missing edge " + a + "->" + b + ";";
    for (const auto& [a, b] : extra_edges)
      out += " extra edge " + a + "->" + b + ";";
    for (const auto& id : missing_nodes) out += " missing node " + id + ";";
    return out;
  }
};

// True iff the instruction's inferred structure equals the graph: same node
// coverage and identical edge sets. Mismatches are itemized in the report.
inline ConsistencyReport validate_consistency(
    const TaskGraph& graph, const std::string& instruction,
    const NodeTexts& texts,
    const DependencyInferencer& engine = reference_inferencer()) {
  ConsistencyReport report;
  ParsedInstruction parsed;
  try {
    parsed = engine.infer(instruction, texts);
  } catch (const Error& e) {
    report.parse_error = e.what();
    for (const auto& edge : graph.edge_list())
      report.missing_edges.push_back(edge);
    for (const auto& id : graph.nodes) report.missing_nodes.push_back(id);
    return report;
  }
  EdgeSet graph_edges;
  for (const auto& edge : graph.edge_list()) graph_edges.insert(edge);
  for (const auto& edge : graph_edges)
    if (!parsed.edges.count(edge)) report.missing_edges.push_back(edge);
  for (const auto& edge : parsed.edges)
    if (!graph_edges.count(edge)) report.extra_edges.push_back(edge);
  std::set<NodeId> seen(parsed.order.begin(), parsed.order.end());
  for (const auto& id : graph.nodes)
    if (!seen.count(id)) report.missing_nodes.push_back(id);
  report.consistent = report.missing_edges.empty() &&
                      report.extra_edges.empty() &&
                      report.missing_nodes.empty() &&
                      seen.size() == graph.nodes.size();
  return report;
}

}  // namespace taskgraph
