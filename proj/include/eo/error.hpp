#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eo {

/// Every failure the engine can report to a caller. The names are part of the
/// wire contract (server payloads, CLI output), see `to_string`.
enum class Errc {
  // bsl lexing / parsing
  NonMonotonicIndent,
  EmptyHead,
  UnknownKeyword,
  OrphanRestriction,
  DuplicateRestrictionKind,
  UnknownControlType,
  // validation
  UnresolvedReference,
  RangeViolation,
  TypeMismatch,
  AmendmentTargetMissing,
  DuplicateDeclaration,
  ConflictingAmendment,
  ValidationError,
  // expressions
  SyntaxError,
  QueryNoMatch,
  QueryAmbiguous,
  DerefOfNonRef,
  CoercionFailure,
  // event graph
  UnknownIndividual,
  UnknownProperty,
  DanglingCause,
  DuplicateIndividual,
  SchemaMismatch,
  NonMonotoneSeq,
  // engine
  ImmutableViolation,
  ConditionNotMet,
  ValueConditionViolation,
  UnknownSlot,
  CascadeBudgetExceeded,
  // bt / harness
  TickBudgetExceeded,
  ScenarioStalled,
  InvalidScenario,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace eo
