#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

// Malformed input: unparsable text, wrong shape, out-of-range indices.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates an operation's precondition
// (non-hyperbolic matrix, perfect-square radicand, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An embedded cross-check disagreed with the primary computation.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace ncg
