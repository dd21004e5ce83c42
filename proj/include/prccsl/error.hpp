#pragma once

#include <stdexcept>
#include <string>

namespace prccsl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Clock alphabet problems: duplicate or malformed clock names.
class DeclarationError : public Error {
 public:
  using Error::Error;
};

/// Reference to an undeclared clock or an out-of-range step.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its domain (zero period, threshold above 1, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace prccsl
