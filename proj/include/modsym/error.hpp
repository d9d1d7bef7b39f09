#pragma once

#include <stdexcept>
#include <string>

namespace modsym {

// Base class for every error raised by the library. The CLI maps subclasses
// onto exit codes: ParseError -> 1, MathError -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Violations of a mathematical precondition of an operation.
class MathError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public MathError {
 public:
  using MathError::MathError;
};

class DegenerateInputError : public MathError {
 public:
  using MathError::MathError;
};

class PreconditionError : public MathError {
 public:
  using MathError::MathError;
};

class RankError : public MathError {
 public:
  using MathError::MathError;
};

class IsotropyError : public MathError {
 public:
  IsotropyError(const std::string& what, int i, int j)
      : MathError(what), first_(i), second_(j) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_;
  int second_;
};

class GenericityError : public MathError {
 public:
  using MathError::MathError;
};

class CycleError : public MathError {
 public:
  using MathError::MathError;
};

// Something that the algorithms guarantee cannot happen did happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace modsym
