#pragma once
#include <stdexcept>
#include <string>

namespace skein {

struct NotDivisible : std::runtime_error {
  explicit NotDivisible(const std::string& m) : std::runtime_error(m) {}
};

struct GeneralPositionFailure : std::runtime_error {
  explicit GeneralPositionFailure(const std::string& m) : std::runtime_error(m) {}
};

struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& m) : std::runtime_error(m) {}
};

struct InsufficientValuation : std::runtime_error {
  explicit InsufficientValuation(const std::string& m) : std::runtime_error(m) {}
};

struct StabilizationFailure : std::runtime_error {
  explicit StabilizationFailure(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace skein
