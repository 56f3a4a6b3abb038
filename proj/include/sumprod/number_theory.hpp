#pragma once

#include <cstdint>
#include <vector>

namespace sumprod::nt {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

/// Inverse of a modulo m by the extended Euclidean algorithm; a must be a unit.
u64 inv_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n) noexcept;

/// Distinct prime factors by trial division. Intended for small n such as
/// subgroup orders; cost is O(sqrt n).
std::vector<u64> prime_factors(u64 n);

/// A generator of the unique subgroup of F_p^* with the given order.
u64 subgroup_generator(u64 p, u64 order);

}  // namespace sumprod::nt
