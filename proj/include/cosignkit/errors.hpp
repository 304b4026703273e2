#pragma once

#include <stdexcept>
#include <string>

namespace cosignkit {

// Operational failures surface as exceptions; domain verdicts (violations,
// infeasibility) are ordinary return values.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityExceeded : Error {
  using Error::Error;
};
struct EmptyGround : Error {
  using Error::Error;
};
struct NotCrossing : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct Inconsistent : Error {
  using Error::Error;
};
struct GenerationFailed : Error {
  using Error::Error;
};
struct InvalidInstance : Error {
  using Error::Error;
};
struct NotProper : Error {
  using Error::Error;
};
struct NotPlanar : Error {
  using Error::Error;
};
struct NotSuperProper : Error {
  using Error::Error;
};
struct NoSuchDicut : Error {
  using Error::Error;
};
struct ConfigurationAbsent : Error {
  using Error::Error;
};
struct Infeasible : Error {
  using Error::Error;
};

// Raised when a provably unbreakable algorithm invariant breaks anyway.
struct InternalInvariantBreach : Error {
  using Error::Error;
};

// An element forced to both signs in one scan; must never fire on
// condition-satisfying crossing families.
struct ConflictError : Error {
  explicit ConflictError(int element)
      : Error("forcing conflict at element " + std::to_string(element)), element(element) {}
  int element;
};

}  // namespace cosignkit
