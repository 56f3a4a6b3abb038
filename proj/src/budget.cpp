#include "sumprod/budget.hpp"

#include <cstdlib>
#include <string>

namespace sumprod {

Budget Budget::from_env(Budget base) {
    if (const char* raw = std::getenv("SUMPROD_BUDGET"); raw != nullptr && *raw != '\0') {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || v == 0)
            throw std::invalid_argument("SUMPROD_BUDGET must be a positive integer");
        base.table_insertions = v;
    }
    return base;
}

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t allowed)
    : std::runtime_error(what + ": needs " + std::to_string(needed) + " > budget " + std::to_string(allowed)),
      needed_(needed),
      allowed_(allowed) {}

}  // namespace sumprod
