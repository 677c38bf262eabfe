#pragma once

#include <cctype>
#include <optional>
#include <string>

#include "taskgraph/error.hpp"

namespace taskgraph {

// An environmental resource: a category name (e.g. "xlsx_path") plus an
// optional concrete parameter instantiating it (e.g. an actual file path).
// Dependency wiring looks only at categories; parameters never affect
// matching.
struct Resource {
  std::string category;
  std::optional<std::string> parameter;

  Resource() = default;
  explicit Resource(std::string cat, std::optional<std::string> param = {})
      : category(std::move(cat)), parameter(std::move(param)) {
    validate_category(category);
  }

  static void validate_category(const std::string& cat) {
    if (cat.empty()) throw Error("resource category is empty");
    for (char c : cat) {
      if (std::isspace(static_cast<unsigned char>(c)))
        throw Error("resource category contains whitespace: '" + cat + "'");
    }
  }

  friend bool matches(const Resource& a, const Resource& b) {
    return a.category == b.category;
  }
};

}  // namespace taskgraph
