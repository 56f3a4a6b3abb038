#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sumprod {

/// Exact nonnegative count of unbounded size. Energies of 10^4-element sets
/// already reach ~10^24, so nothing on the reporting path uses fixed width.
using BigCount = boost::multiprecision::cpp_int;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Hot loops accumulate in 128 bits and convert once; these never wrap.
inline u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit count overflow");
    return r;
}

inline u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit count overflow");
    return r;
}

BigCount to_big(u128 x);
std::string to_decimal(const BigCount& x);
BigCount parse_big_count(std::string_view text);
double to_double(const BigCount& x);
BigCount big_pow(u64 base, unsigned exponent);

}  // namespace sumprod
