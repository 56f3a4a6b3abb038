#pragma once

#include "sumprod/big_count.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sumprod {

enum class Status {
    pass,
    fail,
    constraint_failed,  ///< a characteristic-p hypothesis did not hold; lemma not tested
    degenerate,         ///< pipeline produced an empty set it needed
    skipped,            ///< part of the check exceeded its work budget
};

std::string_view status_name(Status s) noexcept;
Status parse_status(std::string_view text);

/// Everything needed to re-check one dyadic pigeonhole extraction.
struct DyadicRecord {
    std::string name;
    double k = 2;
    std::uint64_t support = 0;         ///< |D|
    std::uint64_t level = 1;           ///< t
    unsigned bucket = 0;               ///< i, with t = 2^i
    std::uint64_t max_multiplicity = 1;
    std::uint64_t bucket_bound = 1;    ///< ceil(log2 M) + 1
    double product = 0;                ///< |D| t^k
    double energy = 0;                 ///< E_k
    bool certificate = false;          ///< bucket_bound * |D| t^k >= E_k
    bool scaled_certificate = false;   ///< bucket_bound * 2^k * |D| t^k >= E_k

    friend bool operator==(const DyadicRecord&, const DyadicRecord&) = default;
};

/// One characteristic-p hypothesis "product ≪ budget", enforced as
/// 4 * product <= budget.
struct ConstraintCheck {
    std::string id;
    std::string description;
    BigCount product;
    BigCount budget;
    double margin = 0;  ///< budget / product
    bool satisfied = true;

    friend bool operator==(const ConstraintCheck&, const ConstraintCheck&) = default;
};

/// Result of checking one inequality on concrete sets.
///
/// For pass/fail reports, pass holds exactly when lhs <= slack * rhs_shape,
/// with the integer quantities behind both sides kept in `exact` as decimal
/// strings. fitted_constant is lhs / rhs_shape.
struct VerificationReport {
    std::string lemma;
    nlohmann::json inputs = nlohmann::json::object();
    std::map<std::string, std::string> exact;
    double lhs = 0;
    double rhs_shape = 0;
    double fitted_constant = 0;
    double slack = 1;
    Status status = Status::pass;
    std::vector<std::string> notes;
    std::vector<DyadicRecord> dyadic;
    std::vector<ConstraintCheck> constraints;
    double elapsed_ms = 0;

    bool pass() const noexcept { return status == Status::pass; }
    /// Sets lhs/rhs/slack/fitted and status pass or fail accordingly.
    void decide(double lhs_value, double rhs_value, double slack_value);

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

void to_json(nlohmann::json& j, const DyadicRecord& d);
void from_json(const nlohmann::json& j, DyadicRecord& d);
void to_json(nlohmann::json& j, const ConstraintCheck& c);
void from_json(const nlohmann::json& j, ConstraintCheck& c);
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

/// Shortest round-trip decimal form; stable across runs.
std::string format_double(double x);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace sumprod
