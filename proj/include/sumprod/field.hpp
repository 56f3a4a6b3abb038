#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sumprod {

using Int = __int128;

/// A field element. In prime mode `num` is the residue in [0, p) and `den`
/// is 1; in characteristic zero the pair is a reduced fraction with den > 0.
/// Both modes therefore order and hash the same way.
struct Elem {
    Int num = 0;
    Int den = 1;

    friend bool operator==(const Elem&, const Elem&) = default;
    friend std::strong_ordering operator<=>(const Elem& a, const Elem& b);
};

std::string int_to_string(Int v);

/// Either F_p for an odd prime p < 2^63, or an exact characteristic-zero
/// field (the rationals).
class GroundField {
public:
    static GroundField prime(std::uint64_t p);
    static GroundField char_zero() noexcept { return GroundField{}; }

    /// Accepts "prime:<p>" or "char0".
    static GroundField parse(std::string_view spec);

    bool is_prime() const noexcept { return p_ != 0; }
    /// The characteristic; 0 in characteristic-zero mode.
    std::uint64_t modulus() const noexcept { return p_; }
    std::string name() const;

    friend bool operator==(const GroundField&, const GroundField&) = default;

    Elem zero() const noexcept { return Elem{0, 1}; }
    Elem one() const noexcept { return Elem{1, 1}; }

    Elem from_int(Int v) const;
    /// num/den reduced into the field; den must be a unit.
    Elem from_fraction(Int num, Int den) const;
    /// Brings an arbitrary (num, den) pair to canonical form.
    Elem canonical(const Elem& e) const { return from_fraction(e.num, e.den); }
    bool is_canonical(const Elem& e) const noexcept;

    bool is_zero(const Elem& e) const noexcept { return e.num == 0; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    /// Throws std::domain_error when b is zero.
    Elem div(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem inv(const Elem& a) const;

    /// Integers in prime mode (reduced mod p, any size); integers or
    /// "num/den" in characteristic zero.
    Elem parse_elem(std::string_view token) const;
    std::string format(const Elem& e) const;

private:
    std::uint64_t p_ = 0;
};

}  // namespace sumprod

template <>
struct std::hash<sumprod::Elem> {
    std::size_t operator()(const sumprod::Elem& e) const noexcept {
        auto mix = [](std::uint64_t x) {
            x ^= x >> 33;
            x *= 0xff51afd7ed558ccdULL;
            x ^= x >> 33;
            x *= 0xc4ceb9fe1a85ec53ULL;
            x ^= x >> 33;
            return x;
        };
        const auto n = static_cast<unsigned __int128>(e.num);
        const auto d = static_cast<unsigned __int128>(e.den);
        std::uint64_t h = mix(static_cast<std::uint64_t>(n) ^ 0x9e3779b97f4a7c15ULL);
        h = mix(h ^ static_cast<std::uint64_t>(n >> 64));
        h = mix(h ^ static_cast<std::uint64_t>(d));
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(d >> 64));
    }
};
