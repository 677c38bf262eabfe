#pragma once

#include <stdexcept>
#include <string>

namespace taskgraph {

// Domain error for invalid inputs, broken references, malformed artifacts.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace taskgraph
