#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace latmon {

enum class ErrorKind {
  NotAntisymmetric,
  NotALattice,
  TrivialLattice,
  SizeOutOfRange,
  SizeCapExceeded,
  UnknownElement,
  NotOrderPreserving,
  NotAssociative,
  NoIdentity,
  NotCompatible,
  NotAMorphism,
  MismatchedCarrier,
  MismatchedLattice,
  MismatchedAlphabet,
  UnknownLetter,
  IncompleteAutomaton,
  InternalInconsistency,
  NotARecognizer,
  BadFraction,
  RowSumNotOne,
  NegativeEntry,
  NoErgodicClass,
  NoInitial,
  SingularSystem,
  BadDecomposition,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries a kind and a JSON witness so callers (and the
// CLI) can report something replayable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, nlohmann::json witness = nullptr)
      : std::runtime_error(std::move(message)),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

  nlohmann::json to_json() const;

 private:
  ErrorKind kind_;
  nlohmann::json witness_;
};

}  // namespace latmon
