#pragma once

#include <stdexcept>
#include <string>

namespace levinf {

/// Malformed input: parse failures, inconsistent dimensions, bad arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input is well-formed but violates a mathematical requirement
/// (Jacobi identity, semisimplicity, schedule bounds, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant the algorithm guarantees was found broken at run time.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace levinf
