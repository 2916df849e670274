#include "eo/error.hpp"

namespace eo {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonMonotonicIndent: return "NonMonotonicIndent";
    case Errc::EmptyHead: return "EmptyHead";
    case Errc::UnknownKeyword: return "UnknownKeyword";
    case Errc::OrphanRestriction: return "OrphanRestriction";
    case Errc::DuplicateRestrictionKind: return "DuplicateRestrictionKind";
    case Errc::UnknownControlType: return "UnknownControlType";
    case Errc::UnresolvedReference: return "UnresolvedReference";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::AmendmentTargetMissing: return "AmendmentTargetMissing";
    case Errc::DuplicateDeclaration: return "DuplicateDeclaration";
    case Errc::ConflictingAmendment: return "ConflictingAmendment";
    case Errc::ValidationError: return "ValidationError";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::QueryNoMatch: return "QueryNoMatch";
    case Errc::QueryAmbiguous: return "QueryAmbiguous";
    case Errc::DerefOfNonRef: return "DerefOfNonRef";
    case Errc::CoercionFailure: return "CoercionFailure";
    case Errc::UnknownIndividual: return "UnknownIndividual";
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::DanglingCause: return "DanglingCause";
    case Errc::DuplicateIndividual: return "DuplicateIndividual";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::NonMonotoneSeq: return "NonMonotoneSeq";
    case Errc::ImmutableViolation: return "ImmutableViolation";
    case Errc::ConditionNotMet: return "ConditionNotMet";
    case Errc::ValueConditionViolation: return "ValueConditionViolation";
    case Errc::UnknownSlot: return "UnknownSlot";
    case Errc::CascadeBudgetExceeded: return "CascadeBudgetExceeded";
    case Errc::TickBudgetExceeded: return "TickBudgetExceeded";
    case Errc::ScenarioStalled: return "ScenarioStalled";
    case Errc::InvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

}  // namespace eo
