#include "sumprod/field.hpp"

#include "sumprod/number_theory.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace sumprod {

namespace {

using boost::multiprecision::cpp_int;
using U128 = unsigned __int128;

constexpr Int kIntMax = static_cast<Int>(~static_cast<U128>(0) >> 1);
constexpr Int kIntMin = -kIntMax - 1;

U128 magnitude(Int v) noexcept { return v < 0 ? static_cast<U128>(0) - static_cast<U128>(v) : static_cast<U128>(v); }

U128 gcd_u128(U128 a, U128 b) noexcept {
    while (b != 0) {
        const U128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

cpp_int to_cpp(Int v) {
    const U128 m = magnitude(v);
    cpp_int r = static_cast<std::uint64_t>(m >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(m);
    return v < 0 ? cpp_int(-r) : r;
}

// One past the most significant bit; 0 for zero.
unsigned msb_safe(const cpp_int& m) { return m == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(m)) + 1; }

Int from_cpp(const cpp_int& v) {
    const cpp_int m = abs(v);
    if (msb_safe(m) > 127) throw std::overflow_error("rational component exceeds 128 bits");
    const U128 hi = static_cast<std::uint64_t>(m >> 64);
    const U128 lo = static_cast<std::uint64_t>(m & cpp_int(std::numeric_limits<std::uint64_t>::max()));
    const Int r = static_cast<Int>((hi << 64) | lo);
    return v < 0 ? -r : r;
}

Elem reduce_big(cpp_int num, cpp_int den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const cpp_int g = gcd(abs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Elem{from_cpp(num), from_cpp(den)};
}

Elem reduce(Int num, Int den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (num == kIntMin || den == kIntMin) return reduce_big(to_cpp(num), to_cpp(den));
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const U128 g = gcd_u128(magnitude(num), static_cast<U128>(den));
    if (g > 1) {
        num /= static_cast<Int>(g);
        den /= static_cast<Int>(g);
    }
    if (num == 0) den = 1;
    return Elem{num, den};
}

std::uint64_t residue(Int v, std::uint64_t p) noexcept {
    Int r = v % static_cast<Int>(p);
    if (r < 0) r += static_cast<Int>(p);
    return static_cast<std::uint64_t>(r);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer token");
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("sign without digits");
    U128 mag = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("non-integer token: " + std::string(s));
        const U128 next = mag * 10 + static_cast<U128>(c - '0');
        if (next / 10 != mag || next > static_cast<U128>(kIntMax)) throw std::out_of_range("integer exceeds 127 bits");
        mag = next;
    }
    return negative ? -static_cast<Int>(mag) : static_cast<Int>(mag);
}

}  // namespace

std::strong_ordering operator<=>(const Elem& a, const Elem& b) {
    if (a.den == b.den) return a.num <=> b.num;
    Int lhs, rhs;
    if (!__builtin_mul_overflow(a.num, b.den, &lhs) && !__builtin_mul_overflow(b.num, a.den, &rhs))
        return lhs <=> rhs;
    const cpp_int l = to_cpp(a.num) * to_cpp(b.den);
    const cpp_int r = to_cpp(b.num) * to_cpp(a.den);
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string int_to_string(Int v) {
    if (v == 0) return "0";
    U128 m = magnitude(v);
    std::string out;
    while (m != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (v < 0) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

GroundField GroundField::prime(std::uint64_t p) {
    if (p < 3) throw std::invalid_argument("characteristic must be an odd prime");
    if (p >> 63) throw std::invalid_argument("modulus must be below 2^63");
    if (!nt::is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    GroundField f;
    f.p_ = p;
    return f;
}

GroundField GroundField::parse(std::string_view spec) {
    spec = trim(spec);
    if (spec == "char0" || spec == "char-zero") return char_zero();
    constexpr std::string_view prefix = "prime:";
    if (spec.starts_with(prefix)) {
        const Int p = parse_int(spec.substr(prefix.size()));
        if (p <= 0 || p > static_cast<Int>(std::numeric_limits<std::uint64_t>::max()))
            throw std::invalid_argument("bad modulus in field spec");
        return prime(static_cast<std::uint64_t>(p));
    }
    throw std::invalid_argument("field spec must be prime:<p> or char0, got '" + std::string(spec) + "'");
}

std::string GroundField::name() const { return is_prime() ? "prime:" + std::to_string(p_) : "char0"; }

Elem GroundField::from_int(Int v) const {
    if (is_prime()) return Elem{static_cast<Int>(residue(v, p_)), 1};
    return Elem{v, 1};
}

Elem GroundField::from_fraction(Int num, Int den) const {
    if (!is_prime()) return reduce(num, den);
    const std::uint64_t d = residue(den, p_);
    if (d == 0) throw std::domain_error("denominator vanishes mod p");
    const std::uint64_t n = residue(num, p_);
    return Elem{static_cast<Int>(nt::mul_mod(n, d == 1 ? 1 : nt::inv_mod(d, p_), p_)), 1};
}

bool GroundField::is_canonical(const Elem& e) const noexcept {
    if (is_prime()) return e.den == 1 && e.num >= 0 && e.num < static_cast<Int>(p_);
    if (e.den <= 0) return false;
    if (e.num == 0) return e.den == 1;
    return e.num != kIntMin && gcd_u128(magnitude(e.num), static_cast<U128>(e.den)) == 1;
}

Elem GroundField::add(const Elem& a, const Elem& b) const {
    if (is_prime()) {
        std::uint64_t s = static_cast<std::uint64_t>(a.num) + static_cast<std::uint64_t>(b.num);
        if (s >= p_) s -= p_;
        return Elem{static_cast<Int>(s), 1};
    }
    Int n;
    if (a.den == 1 && b.den == 1) {
        if (!__builtin_add_overflow(a.num, b.num, &n)) return Elem{n, 1};
    } else {
        Int x, y, d;
        if (!__builtin_mul_overflow(a.num, b.den, &x) && !__builtin_mul_overflow(b.num, a.den, &y) &&
            !__builtin_add_overflow(x, y, &n) && !__builtin_mul_overflow(a.den, b.den, &d))
            return reduce(n, d);
    }
    return reduce_big(to_cpp(a.num) * to_cpp(b.den) + to_cpp(b.num) * to_cpp(a.den), to_cpp(a.den) * to_cpp(b.den));
}

Elem GroundField::neg(const Elem& a) const {
    if (is_prime()) return Elem{a.num == 0 ? 0 : static_cast<Int>(p_) - a.num, 1};
    if (a.num == kIntMin) throw std::overflow_error("negation overflows 128 bits");
    return Elem{-a.num, a.den};
}

Elem GroundField::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem GroundField::mul(const Elem& a, const Elem& b) const {
    if (is_prime())
        return Elem{static_cast<Int>(nt::mul_mod(static_cast<std::uint64_t>(a.num), static_cast<std::uint64_t>(b.num), p_)), 1};
    if (a.num == 0 || b.num == 0) return zero();
    // Cross-cancel first so the product of reduced fractions is reduced.
    const Int g1 = static_cast<Int>(gcd_u128(magnitude(a.num), static_cast<U128>(b.den)));
    const Int g2 = static_cast<Int>(gcd_u128(magnitude(b.num), static_cast<U128>(a.den)));
    Int n, d;
    if (__builtin_mul_overflow(a.num / g1, b.num / g2, &n) || __builtin_mul_overflow(a.den / g2, b.den / g1, &d))
        throw std::overflow_error("rational product exceeds 128 bits");
    return Elem{n, d};
}

Elem GroundField::inv(const Elem& a) const {
    if (a.num == 0) throw std::domain_error("division by zero");
    if (is_prime()) return Elem{static_cast<Int>(nt::inv_mod(static_cast<std::uint64_t>(a.num), p_)), 1};
    return a.num < 0 ? Elem{-a.den, -a.num} : Elem{a.den, a.num};
}

Elem GroundField::div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

Elem GroundField::parse_elem(std::string_view token) const {
    token = trim(token);
    if (token.empty()) throw std::invalid_argument("empty element token");
    const auto slash = token.find('/');
    if (is_prime()) {
        if (slash != std::string_view::npos) throw std::invalid_argument("non-integer token in prime mode: " + std::string(token));
        // Reduce digit by digit so integers of any length are accepted.
        bool negative = false;
        std::string_view digits = token;
        if (digits.front() == '+' || digits.front() == '-') {
            negative = digits.front() == '-';
            digits.remove_prefix(1);
        }
        if (digits.empty()) throw std::invalid_argument("sign without digits");
        std::uint64_t r = 0;
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("non-integer token: " + std::string(token));
            r = static_cast<std::uint64_t>((static_cast<U128>(r) * 10 + static_cast<unsigned>(c - '0')) % p_);
        }
        if (negative && r != 0) r = p_ - r;
        return Elem{static_cast<Int>(r), 1};
    }
    if (slash == std::string_view::npos) return Elem{parse_int(token), 1};
    const Int den = parse_int(trim(token.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(token));
    return reduce(parse_int(trim(token.substr(0, slash))), den);
}

std::string GroundField::format(const Elem& e) const {
    if (e.den == 1) return int_to_string(e.num);
    return int_to_string(e.num) + "/" + int_to_string(e.den);
}

}  // namespace sumprod
