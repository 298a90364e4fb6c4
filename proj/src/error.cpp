#include "schottky/error.hpp"

namespace schottky {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotInSet: return "NotInSet";
    case ErrorKind::NoArcInAmbient: return "NoArcInAmbient";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotWholeSphere: return "NotWholeSphere";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::EmptyNet: return "EmptyNet";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace schottky
