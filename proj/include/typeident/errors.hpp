#pragma once

#include <stdexcept>
#include <string>

namespace typeident {

// Invalid model or malformed input. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Problem size exceeds an enumeration/permanent cap. CLI exit code 3.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Observed data inconsistent with the model (e.g. shares outside the
// column span). CLI exit code 4.
class InconsistentDataError : public std::runtime_error {
 public:
  explicit InconsistentDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace typeident
