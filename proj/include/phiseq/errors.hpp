#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phiseq {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// p failed validation: not a prime, below 5, or at/above the 2^31 cap.
struct InvalidPrime : Error { using Error::Error; };

struct ZeroInverse : Error { using Error::Error; };
struct ZeroOrderInput : Error { using Error::Error; };
struct ZeroBase : Error { using Error::Error; };

struct LengthMismatch : Error { using Error::Error; };
struct NotPeriodic : Error { using Error::Error; };
struct BadInitial : Error { using Error::Error; };
struct BadKappa : Error { using Error::Error; };
struct BadExponent : Error { using Error::Error; };
struct NotPrimitiveRoot : Error { using Error::Error; };
struct WrongRootCount : Error { using Error::Error; };

/// The k scan reached p-2 without finding a nonempty index set. Existence is
/// guaranteed for root pairs of the cubic, so this signals an upstream bug.
struct NoNonemptyIndexSet : Error { using Error::Error; };

/// A search state space exceeds the caller-supplied budget.
struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& msg, std::uint64_t required)
      : Error(msg), required_states(required) {}
  std::uint64_t required_states;
};

}  // namespace phiseq
