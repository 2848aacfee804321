#pragma once

#include <stdexcept>

namespace slab {

// Bad user-supplied values: out-of-range ids, malformed files, invalid
// parameters.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented size guard tripped (transitive closure, augmentation set or
// chain decomposition asked to run beyond desk scale).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition violated by the caller, e.g. cyclic input to a DAG-only
// routine.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace slab
