#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cpa {

/// Index of an element in a GroupTable. Index 0 is always the identity.
using ElementIndex = std::uint32_t;

inline constexpr ElementIndex kIdentity = 0;

/// Default hard cap on group order accepted by GroupTable.
inline constexpr std::size_t kDefaultMaxOrder = 4096;

// Error taxonomy. The CLI maps these onto exit codes.

/// Malformed input: bad syntax, bad indices, wrong group order.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An object violates a structural contract (non-normal quotient,
/// group-axiom failure, incomplete coset table).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resource limit was hit (coset limit, table size cap).
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result contradicts a prediction or a proven identity.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpa
