#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ljoyal {

/// Failure categories surfaced by the library. Validation kinds map to CLI
/// exit code 65; budget exhaustion is reported as an unknown verdict.
enum class ErrorKind {
    // simplicial sets
    SimplicialIdentityViolation,
    DanglingFace,
    BadNormalForm,
    DuplicateId,
    CapExceeded,
    SearchBudgetExceeded,
    NotSimplicial,
    // categories
    UndecidedWordProblem,
    EndpointMismatch,
    AssociativityViolation,
    // quasi-categories
    NotAQuasicategory,
    NotCoskeletal,
    TargetNotNerve,
    // sites
    TopologyAxiomViolation,
    FunctorialityViolation,
    NotSectionwiseQuasicategory,
    OracleDisagreement,
    // hda
    CubicalIdentityViolation,
    DanglingBoundary,
    DimensionUnsupported,
    // plumbing
    InvalidArgument,
    Parse,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that indicate malformed input rather than a limit or a bug.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, nlohmann::json detail = nullptr)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind), detail_(std::move(detail)) {}

    ErrorKind kind() const { return kind_; }
    const nlohmann::json& detail() const { return detail_; }

private:
    ErrorKind kind_;
    nlohmann::json detail_;
};

} // namespace ljoyal
