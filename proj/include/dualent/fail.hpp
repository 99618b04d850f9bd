// Error types shared by all dualent modules.

#ifndef DUALENT_FAIL_HPP_
#define DUALENT_FAIL_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualent {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands built over different group shapes.
struct ShapeError : Error {
  using Error::Error;
};

// Map data that fails an automorphism / group-law invariant.
struct InvalidStructure : Error {
  using Error::Error;
};

// Iterative numerics gave up (root finder, eigen-decomposition).
struct ConvergenceError : Error {
  using Error::Error;
};

// A set-valued computation outgrew its element budget.
struct CapExceeded : Error {
  CapExceeded(const std::string& what, std::size_t lower_bound)
    : Error(what), size_lower_bound(lower_bound) {}
  std::size_t size_lower_bound;
};

// The rank search ran out of supports inside its radius / size budget.
struct SearchExhausted : Error {
  using Error::Error;
};

// Unrecoverable internal inconsistency (should never fire).
struct InternalFault : Error {
  using Error::Error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

} // namespace dualent

#endif // DUALENT_FAIL_HPP_
