#include "ljoyal/decision.hpp"
#include "ljoyal/error.hpp"
#include "ljoyal/parallel.hpp"

namespace ljoyal {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SimplicialIdentityViolation: return "SimplicialIdentityViolation";
    case ErrorKind::DanglingFace: return "DanglingFace";
    case ErrorKind::BadNormalForm: return "BadNormalForm";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::UndecidedWordProblem: return "UndecidedWordProblem";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::NotAQuasicategory: return "NotAQuasicategory";
    case ErrorKind::NotCoskeletal: return "NotCoskeletal";
    case ErrorKind::TargetNotNerve: return "TargetNotNerve";
    case ErrorKind::TopologyAxiomViolation: return "TopologyAxiomViolation";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::NotSectionwiseQuasicategory: return "NotSectionwiseQuasicategory";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
    case ErrorKind::CubicalIdentityViolation: return "CubicalIdentityViolation";
    case ErrorKind::DanglingBoundary: return "DanglingBoundary";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SearchBudgetExceeded:
    case ErrorKind::UndecidedWordProblem:
    case ErrorKind::OracleDisagreement:
        return false;
    default:
        return true;
    }
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

nlohmann::ordered_json Decision::to_json() const {
    nlohmann::ordered_json j;
    j["verdict"] = std::string(to_string(value));
    if (!reason.empty())
        j["reason"] = reason;
    if (!certificate.is_null())
        j["certificate"] = certificate;
    return j;
}

void DecisionAccumulator::add(const Decision& d) {
    if (d.is_no() && !first_no_)
        first_no_ = d;
    else if (d.is_unknown() && !first_unknown_)
        first_unknown_ = d;
}

Decision DecisionAccumulator::result(nlohmann::json yes_certificate) const {
    if (first_no_)
        return *first_no_;
    if (first_unknown_)
        return *first_unknown_;
    return Decision::yes(std::move(yes_certificate));
}

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) { g_threads = n == 0 ? 1 : n; }
unsigned thread_count() { return g_threads; }

namespace detail {
bool& inside_worker() {
    thread_local bool flag = false;
    return flag;
}
} // namespace detail

} // namespace ljoyal
