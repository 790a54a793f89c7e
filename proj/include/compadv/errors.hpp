#pragma once

#include <stdexcept>
#include <string>

namespace compadv {

// Argument outside the mathematical domain of an operation (nonpositive
// efficiency, negative cost, eta outside (0, 2), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A search space or sample is too large or too small for the requested
// operation (enumeration cap exceeded, tail too short, ...).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed composite value: an assignment missing a job, an unknown id.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace compadv
