#include "latmon/error.hpp"

namespace latmon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::TrivialLattice: return "TrivialLattice";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotOrderPreserving: return "NotOrderPreserving";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::MismatchedCarrier: return "MismatchedCarrier";
    case ErrorKind::MismatchedLattice: return "MismatchedLattice";
    case ErrorKind::MismatchedAlphabet: return "MismatchedAlphabet";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::IncompleteAutomaton: return "IncompleteAutomaton";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotARecognizer: return "NotARecognizer";
    case ErrorKind::BadFraction: return "BadFraction";
    case ErrorKind::RowSumNotOne: return "RowSumNotOne";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NoErgodicClass: return "NoErgodicClass";
    case ErrorKind::NoInitial: return "NoInitial";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::BadDecomposition: return "BadDecomposition";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

nlohmann::json Error::to_json() const {
  return {{"error",
           {{"kind", std::string(to_string(kind_))},
            {"message", what()},
            {"witness", witness_}}}};
}

}  // namespace latmon
