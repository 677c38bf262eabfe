#pragma once

#include <array>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "taskgraph/app_registry.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/graph.hpp"

namespace taskgraph {

enum class Level { Easy, Medium, Hard };

inline const char* level_name(Level l) {
  switch (l) {
    case Level::Easy: return "Easy";
    case Level::Medium: return "Medium";
    default: return "Hard";
  }
}

inline Level level_from_name(const std::string& name) {
  if (name == "Easy" || name == "easy") return Level::Easy;
  if (name == "Medium" || name == "medium") return Level::Medium;
  if (name == "Hard" || name == "hard") return Level::Hard;
  throw Error("unknown complexity level '" + name + "'");
}

enum class Dimension { Dependency, Instruction, Knowledge, Hierarchy, Branch };

inline constexpr std::array<Dimension, 5> kAllDimensions = {
    Dimension::Dependency, Dimension::Instruction, Dimension::Knowledge,
    Dimension::Hierarchy, Dimension::Branch};

inline const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Dependency: return "dependency";
    case Dimension::Instruction: return "instruction";
    case Dimension::Knowledge: return "knowledge";
    case Dimension::Hierarchy: return "hierarchy";
    default: return "branch";
  }
}

inline Dimension dimension_from_name(const std::string& name) {
  for (Dimension d : kAllDimensions)
    if (name == dimension_name(d)) return d;
  throw Error("unknown complexity dimension '" + name + "'");
}

// Per-dimension level cutoffs: count <= easy_max is Easy, count <= medium_max
// is Medium, anything larger is Hard. The cutoffs partition the naturals, so
// exactly one level matches any count.
struct ThresholdTable {
  struct Cutoffs {
    int easy_max;
    int medium_max;
  };
  std::map<Dimension, Cutoffs> cutoffs;

  Level level_of(Dimension d, int count) const {
    const Cutoffs& c = cutoffs.at(d);
    if (count <= c.easy_max) return Level::Easy;
    if (count <= c.medium_max) return Level::Medium;
    return Level::Hard;
  }
};

// The built-in table: edges <=1 / 2-3 / >=4; nodes <=2 / 3-4 / >=5;
// app categories <=1 / 2-3 / >=4; depth <=2 / 3-4 / >=5; width <=2 / 3-4 / >=5.
inline const ThresholdTable& default_thresholds() {
  static const ThresholdTable table = {{
      {Dimension::Dependency, {1, 3}},
      {Dimension::Instruction, {2, 4}},
      {Dimension::Knowledge, {1, 3}},
      {Dimension::Hierarchy, {2, 4}},
      {Dimension::Branch, {2, 4}},
  }};
  return table;
}

struct DimensionScore {
  int count = 0;
  Level level = Level::Easy;
};

struct ComplexityProfile {
  DimensionScore dependency;
  DimensionScore instruction;
  DimensionScore knowledge;
  DimensionScore hierarchy;
  DimensionScore branch;

  DimensionScore& operator[](Dimension d) {
    switch (d) {
      case Dimension::Dependency: return dependency;
      case Dimension::Instruction: return instruction;
      case Dimension::Knowledge: return knowledge;
      case Dimension::Hierarchy: return hierarchy;
      default: return branch;
    }
  }
  const DimensionScore& operator[](Dimension d) const {
    return (*const_cast<ComplexityProfile*>(this))[d];
  }
};

// Five structural counts of the task graph, each classified by the table.
// `app_of` supplies each node's owning application (the graph itself stores
// only subtask ids).
inline ComplexityProfile classify(
    const TaskGraph& graph, const std::map<NodeId, std::string>& app_of,
    const AppCategoryRegistry& registry = default_registry(),
    const ThresholdTable& thresholds = default_thresholds()) {
  ComplexityProfile p;
  p.dependency.count = static_cast<int>(graph.edge_count());
  p.instruction.count = static_cast<int>(graph.nodes.size());
  std::set<std::string> categories;
  for (const auto& id : graph.nodes) {
    auto it = app_of.find(id);
    if (it == app_of.end())
      throw Error("no application known for node '" + id + "'");
    categories.insert(registry.category_of(it->second));
  }
  p.knowledge.count = static_cast<int>(categories.size());
  p.hierarchy.count = graph_depth(graph);
  p.branch.count = graph_width(graph);
  for (Dimension d : kAllDimensions)
    p[d].level = thresholds.level_of(d, p[d].count);
  return p;
}

// A capability test-set definition: the dimensions it constrains and the
// exact level each must sit at; unconstrained dimensions are absent.
struct CapabilitySpec {
  std::string name;
  std::map<Dimension, Level> constraints;
};

inline bool matches_capability(const ComplexityProfile& profile,
                               const CapabilitySpec& spec) {
  for (const auto& [dim, level] : spec.constraints)
    if (profile[dim].level != level) return false;
  return true;
}

// The ten built-in capability test sets, as a data table.
inline const std::vector<CapabilitySpec>& builtin_capabilities() {
  static const std::vector<CapabilitySpec> specs = {
      {"parallel-planning",
       {{Dimension::Dependency, Level::Hard}, {Dimension::Branch, Level::Hard}}},
      {"long-range-planning",
       {{Dimension::Dependency, Level::Hard},
        {Dimension::Hierarchy, Level::Hard}}},
      {"long-sequence-reasoning",
       {{Dimension::Instruction, Level::Hard},
        {Dimension::Hierarchy, Level::Hard}}},
      {"long-instruction-following",
       {{Dimension::Hierarchy, Level::Easy}, {Dimension::Branch, Level::Hard}}},
      {"sequential-decision-making",
       {{Dimension::Hierarchy, Level::Hard}, {Dimension::Branch, Level::Hard}}},
      {"cross-domain-decision-making",
       {{Dimension::Branch, Level::Hard}, {Dimension::Knowledge, Level::Hard}}},
      {"subtask-identification",
       {{Dimension::Dependency, Level::Easy},
        {Dimension::Instruction, Level::Hard}}},
      {"dependency-identification",
       {{Dimension::Dependency, Level::Hard},
        {Dimension::Instruction, Level::Easy}}},
      {"cross-domain-knowledge",
       {{Dimension::Instruction, Level::Hard},
        {Dimension::Knowledge, Level::Hard}}},
      {"domain-specific-knowledge",
       {{Dimension::Instruction, Level::Hard},
        {Dimension::Knowledge, Level::Easy}}},
  };
  return specs;
}

inline const CapabilitySpec& capability_by_name(const std::string& name) {
  for (const auto& spec : builtin_capabilities())
    if (spec.name == name) return spec;
  throw Error("unknown capability '" + name + "'");
}

// Filters tasks whose profile matches the spec, preserving input order.
// `app_of_task` resolves each task's node->application map.
inline std::vector<TaskGraph> build_capability_suite(
    const std::vector<TaskGraph>& tasks,
    const std::function<std::map<NodeId, std::string>(const TaskGraph&)>&
        app_of_task,
    const CapabilitySpec& spec,
    const AppCategoryRegistry& registry = default_registry(),
    const ThresholdTable& thresholds = default_thresholds()) {
  std::vector<TaskGraph> suite;
  for (const auto& task : tasks) {
    ComplexityProfile profile =
        classify(task, app_of_task(task), registry, thresholds);
    if (matches_capability(profile, spec)) suite.push_back(task);
  }
  return suite;
}

// Loads thresholds and capability specs from the key-value config format:
//   threshold <dimension> <easy_max> <medium_max>
//   capability <name> [<dimension>=<level> ...]
// Blank lines and lines starting with '#' are ignored. Omitted thresholds
// keep their built-in cutoffs.
struct ComplexityConfig {
  ThresholdTable thresholds = default_thresholds();
  std::vector<CapabilitySpec> capabilities;
};

inline ComplexityConfig load_complexity_config(std::istream& in) {
  ComplexityConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "threshold") {
      std::string dim;
      int easy_max, medium_max;
      if (!(ls >> dim >> easy_max >> medium_max))
        throw Error("config line " + std::to_string(lineno) +
                    ": expected 'threshold <dimension> <easy_max> "
                    "<medium_max>'");
      config.thresholds.cutoffs[dimension_from_name(dim)] = {easy_max,
                                                             medium_max};
    } else if (word == "capability") {
      CapabilitySpec spec;
      if (!(ls >> spec.name))
        throw Error("config line " + std::to_string(lineno) +
                    ": capability needs a name");
      std::string pair;
      while (ls >> pair) {
        auto eq = pair.find('=');
        if (eq == std::string::npos)
          throw Error("config line " + std::to_string(lineno) +
                      ": expected <dimension>=<level>, got '" + pair + "'");
        spec.constraints[dimension_from_name(pair.substr(0, eq))] =
            level_from_name(pair.substr(eq + 1));
      }
      config.capabilities.push_back(std::move(spec));
    } else {
      throw Error("config line " + std::to_string(lineno) +
                  ": unknown directive '" + word + "'");
    }
  }
  return config;
}

}  // namespace taskgraph
