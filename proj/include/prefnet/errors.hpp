#pragma once

#include <stdexcept>
#include <string>

namespace prefnet {

// Invalid parameters, grids or documents (CLI exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files (config syntax, results rows, edge lists).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace prefnet
