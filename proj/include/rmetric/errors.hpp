#pragma once

#include <stdexcept>
#include <string>

namespace rmetric {

// Precondition on the mathematical input failed (bad r, mismatched params,
// a graph outside the class an operation is defined on).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A search or enumeration would exceed its configured budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// The injection f has no case that applies to this (valid) input.
class UnsupportedInstance : public DomainError {
 public:
  explicit UnsupportedInstance(const std::string& what) : DomainError(what) {}
};

}  // namespace rmetric
