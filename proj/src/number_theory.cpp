#include "sumprod/number_theory.hpp"

#include <stdexcept>

namespace sumprod::nt {

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("element is not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a proof of primality for all n < 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

u64 subgroup_generator(u64 p, u64 order) {
    if (order == 0 || (p - 1) % order != 0)
        throw std::invalid_argument("subgroup order must divide p - 1");
    if (order == 1) return 1;
    const auto primes = prime_factors(order);
    const u64 cofactor = (p - 1) / order;
    for (u64 x = 2; x < p; ++x) {
        const u64 h = pow_mod(x, cofactor, p);
        bool exact = true;
        for (u64 q : primes) {
            if (pow_mod(h, order / q, p) == 1) {
                exact = false;
                break;
            }
        }
        if (exact) return h;
    }
    throw std::logic_error("no subgroup generator found");
}

}  // namespace sumprod::nt
