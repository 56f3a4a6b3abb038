#pragma once

#include "sumprod/elem_set.hpp"
#include "sumprod/field.hpp"
#include "sumprod/op.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace sumprod {

enum class FamilyKind { ap, gp, random, subgroup, interval };

std::string_view family_name(FamilyKind k) noexcept;
FamilyKind parse_family(std::string_view text);

struct FamilySpec {
    FamilyKind kind = FamilyKind::ap;
    std::uint64_t n = 1;
    GroundField field = GroundField::char_zero();
    long long start = 0;  ///< ap, interval
    long long step = 1;   ///< ap
    long long base = 1;   ///< gp
    long long ratio = 2;  ///< gp
    std::uint64_t seed = 0;   ///< random
    std::uint64_t order = 0;  ///< subgroup; 0 means n
    /// random in characteristic zero draws from [1, range]; 0 means 1000·n.
    std::uint64_t range = 0;
};

/// Exactly n distinct elements, a pure function of the spec. Throws
/// std::invalid_argument for an invalid spec (order not dividing p-1, n > p,
/// gp ratio 0 or 1, a progression that repeats).
ElemSet gen_family(const FamilySpec& spec);

/// Largest divisor of p-1 not exceeding n.
std::uint64_t largest_subgroup_order(std::uint64_t p, std::uint64_t n);

/// Uniform integer in [lo, hi] by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t span);
double uniform_unit(std::mt19937_64& rng);

struct SumProductSizes {
    std::uint64_t n = 0;               ///< |A| after removing 0
    std::uint64_t additive = 0;        ///< |A ±A|
    std::uint64_t multiplicative = 0;  ///< |A ∗A|
    double ratio = 0;                  ///< max / n^{5/4}
};

/// 0 is removed from A before both operations. Throws std::invalid_argument
/// when fewer than two elements remain or the ops are of the wrong kind.
SumProductSizes sum_product_sizes(const ElemSet& a, Op addop, Op mulop);
inline double sum_product_ratio(const ElemSet& a, Op addop = Op::add, Op mulop = Op::mul) {
    return sum_product_sizes(a, addop, mulop).ratio;
}

struct SearchSchedule {
    double initial_temperature = 0.05;
    double cooling = 0.999;
};

struct SearchState {
    ElemSet current;
    double current_ratio = 0;
    ElemSet best;
    double best_ratio = 0;
    double initial_ratio = 0;
    std::uint64_t rng_seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t accepted = 0;
    SearchSchedule schedule;
};

/// Simulated annealing over fixed-size subsets of F_p^*: each step swaps a
/// uniform member for a uniform non-member, accepted by the Metropolis rule
/// under geometric cooling. Returns the best set seen.
SearchState local_search_min_ratio(const ElemSet& seed, long long steps, std::uint64_t rng_seed,
                                   SearchSchedule schedule = {}, Op addop = Op::add, Op mulop = Op::mul);

}  // namespace sumprod
