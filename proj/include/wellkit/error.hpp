#pragma once

#include <stdexcept>
#include <string>

namespace wellkit {

// Error categories map onto CLI exit codes: parse 2, non-generic 3, size 4.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonGenericError : std::runtime_error {
  explicit NonGenericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wellkit
