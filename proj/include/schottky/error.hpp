#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

enum class ErrorKind {
  NumericalDegeneracy,
  DegenerateQuadruple,
  NotReduced,
  IndexOutOfRange,
  BudgetExceeded,
  NotInSet,
  NoArcInAmbient,
  NotContained,
  NotWholeSphere,
  DomainEscape,
  IllConditioned,
  SingularJacobian,
  PoleEncountered,
  EmptyNet,
  ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace schottky
