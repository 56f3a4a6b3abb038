#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumprod {

/// Explicit work limits. Exceeding one is a hard error (BudgetExceeded),
/// never a silent truncation.
struct Budget {
    /// Counting-table insertions per call.
    std::uint64_t table_insertions = 100'000'000;
    /// Pair evaluations allowed in one step of an iterated span.
    std::uint64_t span_pairs = 100'000'000;
    /// Largest |A| accepted by the brute-force energy oracle.
    std::uint64_t oracle_size = 64;

    /// Applies SUMPROD_BUDGET (table insertions) from the environment.
    static Budget from_env(Budget base);
    static Budget from_env() { return from_env(Budget{}); }
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t allowed);
    std::uint64_t needed() const noexcept { return needed_; }
    std::uint64_t allowed() const noexcept { return allowed_; }

private:
    std::uint64_t needed_;
    std::uint64_t allowed_;
};

}  // namespace sumprod
