#pragma once

#include <stdexcept>

namespace logichart {

// An operation was invoked in a state its contract does not allow.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A Prolog runtime error (instantiation, type, evaluation, permission).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace logichart
