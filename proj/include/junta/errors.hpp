#pragma once

#include <stdexcept>
#include <string>

namespace junta {

// A caller broke a documented precondition (dimension mismatch, bad index).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exhaustive computation was asked to enumerate more than its cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A function, distribution or experiment record could not be parsed or is
// malformed.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace junta
