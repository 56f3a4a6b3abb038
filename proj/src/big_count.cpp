#include "sumprod/big_count.hpp"

#include <cctype>

namespace sumprod {

BigCount to_big(u128 x) {
    BigCount r = static_cast<u64>(x >> 64);
    r <<= 64;
    r += static_cast<u64>(x);
    return r;
}

std::string to_decimal(const BigCount& x) { return x.str(); }

BigCount parse_big_count(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty count");
    BigCount r = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("malformed count: " + std::string(text));
        r *= 10;
        r += c - '0';
    }
    return r;
}

double to_double(const BigCount& x) { return x.convert_to<double>(); }

BigCount big_pow(u64 base, unsigned exponent) {
    BigCount b = base;
    return boost::multiprecision::pow(b, exponent);
}

}  // namespace sumprod
