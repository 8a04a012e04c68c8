#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ljoyal {

enum class Verdict { yes, no, unknown };

std::string_view to_string(Verdict v);

/// Three-valued answer. `no` carries a witness and `unknown` carries a
/// machine-readable reason ("budget", "dimension-bound", ...).
struct Decision {
    Verdict value = Verdict::unknown;
    std::string reason;
    nlohmann::json certificate;

    static Decision yes(nlohmann::json certificate = nullptr) {
        return {Verdict::yes, {}, std::move(certificate)};
    }
    static Decision no(std::string reason, nlohmann::json witness = nullptr) {
        return {Verdict::no, std::move(reason), std::move(witness)};
    }
    static Decision unknown(std::string reason, nlohmann::json detail = nullptr) {
        return {Verdict::unknown, std::move(reason), std::move(detail)};
    }

    bool is_yes() const { return value == Verdict::yes; }
    bool is_no() const { return value == Verdict::no; }
    bool is_unknown() const { return value == Verdict::unknown; }

    nlohmann::ordered_json to_json() const;
};

/// Conjunction: any `no` wins, then any `unknown`, else `yes`.
/// The first `no` (resp. `unknown`) in argument order is kept.
class DecisionAccumulator {
public:
    void add(const Decision& d);
    Decision result(nlohmann::json yes_certificate = nullptr) const;
    bool decided_no() const { return first_no_.has_value(); }

private:
    std::optional<Decision> first_no_;
    std::optional<Decision> first_unknown_;
};

} // namespace ljoyal
