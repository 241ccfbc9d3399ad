#pragma once

#include <stdexcept>
#include <string>

namespace fixpar {

// Base for all library-raised failures so callers can catch one type.
struct FixparError : std::runtime_error {
  explicit FixparError(const std::string& what) : std::runtime_error(what) {}
};

// Graph-file syntax problem; carries the 1-based line number it was found on.
struct ParseError : FixparError {
  int line;
  ParseError(int line_, const std::string& what)
      : FixparError("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// An exhaustive enumeration was requested beyond the configured cap.
// Callers that have a sampling fallback catch this and switch to it.
struct CapExceeded : FixparError {
  using FixparError::FixparError;
};

}  // namespace fixpar
