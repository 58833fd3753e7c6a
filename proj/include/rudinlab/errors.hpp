#pragma once

#include <stdexcept>
#include <string>

namespace rudinlab {

/// Caller violated an operation's precondition (bad parameter, bad range).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature grid is coarser than the operation requires.
class resolution_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// A grid undersamples a polynomial while alias-free evaluation was demanded.
class alias_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// Work or memory budget would be exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An asserted mathematical invariant failed on computed data.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rudinlab
