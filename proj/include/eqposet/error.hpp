#pragma once

#include <stdexcept>
#include <string>

namespace eqp {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EQP_DECLARE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

EQP_DECLARE_ERROR(DivisionByZero);
EQP_DECLARE_ERROR(WrongCase);
EQP_DECLARE_ERROR(AxiomViolation);
EQP_DECLARE_ERROR(NameClash);
EQP_DECLARE_ERROR(NotOneDimensional);
EQP_DECLARE_ERROR(ShapeMismatch);
EQP_DECLARE_ERROR(NotInvertible);
EQP_DECLARE_ERROR(ModeMismatch);
EQP_DECLARE_ERROR(InvalidRepresentation);
EQP_DECLARE_ERROR(KindMismatch);
EQP_DECLARE_ERROR(DegreeViolation);
EQP_DECLARE_ERROR(DomainMismatch);
EQP_DECLARE_ERROR(NotInU);
EQP_DECLARE_ERROR(HypothesisFailure);
EQP_DECLARE_ERROR(NonAssociative);

#undef EQP_DECLARE_ERROR

// Parse error carrying the 1-based line of the offending input.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace eqp
