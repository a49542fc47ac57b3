#pragma once

#include <stdexcept>
#include <string>

namespace torec {

// Error taxonomy mirrors the CLI exit codes: parameter 2, numerical 3, io 4.
struct ParameterError : std::invalid_argument {
  explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace torec
