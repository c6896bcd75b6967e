#pragma once

#include <stdexcept>
#include <string>

namespace dtrace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, malformed files, invalid traces.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (disconnected host, false
/// verdict handed to a constructor, inapplicable surgery).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The search could not finish inside its configured limits. Never a verdict.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A construction step that must succeed for a positive verdict did not. Carries a reproducer.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtrace
