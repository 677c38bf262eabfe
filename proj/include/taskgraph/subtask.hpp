#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/error.hpp"
#include "taskgraph/resource.hpp"

namespace taskgraph {

using ParameterSet = std::map<std::string, std::string>;

// A subtask: the atomic, independently evaluable unit. Instruction templates
// carry {placeholder} slots that parameter sets instantiate; input/output
// resource lists (category names) drive dependency wiring.
struct Subtask {
  std::string id;
  std::string instruction_template;
  std::string application;
  std::vector<ParameterSet> available_parameters;
  std::string os;
  std::vector<std::string> input_resources;
  std::vector<std::string> output_resources;

  friend bool operator==(const Subtask&, const Subtask&) = default;
};

// Extracts the {placeholder} names from a template, left to right.
inline std::vector<std::string> template_placeholders(const std::string& tpl) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while ((pos = tpl.find('{', pos)) != std::string::npos) {
    std::size_t end = tpl.find('}', pos + 1);
    if (end == std::string::npos) break;
    names.push_back(tpl.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return names;
}

// Fills every {placeholder} in the template from the parameter set.
// Throws if a placeholder has no value.
inline std::string instantiate_template(const std::string& tpl,
                                        const ParameterSet& params,
                                        const std::string& owner_id = "") {
  std::string out;
  out.reserve(tpl.size());
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    if (tpl[pos] == '{') {
      std::size_t end = tpl.find('}', pos + 1);
      if (end != std::string::npos) {
        std::string name = tpl.substr(pos + 1, end - pos - 1);
        auto it = params.find(name);
        if (it == params.end()) {
          throw Error("missing parameter '" + name + "'" +
                      (owner_id.empty() ? "" : " for node " + owner_id));
        }
        out += it->second;
        pos = end + 1;
        continue;
      }
    }
    out += tpl[pos++];
  }
  return out;
}

// Structural checks on one subtask: nonempty distinct resource lists and
// parameter sets covering every placeholder.
inline std::vector<std::string> validate_subtask(const Subtask& s) {
  std::vector<std::string> report;
  if (s.id.empty()) report.push_back("subtask id is empty");
  auto check_dupes = [&](const std::vector<std::string>& cats,
                         const char* which) {
    std::set<std::string> seen;
    for (const auto& c : cats) {
      try {
        Resource::validate_category(c);
      } catch (const Error& e) {
        report.push_back(std::string(e.what()) + " in " + which);
        continue;
      }
      if (!seen.insert(c).second)
        report.push_back("duplicate " + std::string(which) + " category '" +
                         c + "' in subtask " + s.id);
    }
  };
  check_dupes(s.input_resources, "input_resources");
  check_dupes(s.output_resources, "output_resources");
  for (const auto& name : template_placeholders(s.instruction_template)) {
    for (std::size_t i = 0; i < s.available_parameters.size(); ++i) {
      if (!s.available_parameters[i].count(name))
        report.push_back("placeholder '" + name +
                         "' missing from parameter set " + std::to_string(i) +
                         " of subtask " + s.id);
    }
  }
  return report;
}

}  // namespace taskgraph
