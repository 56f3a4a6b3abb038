#include "sumprod/op.hpp"

#include <stdexcept>
#include <string>

namespace sumprod {

std::string_view op_name(Op op) noexcept {
    switch (op) {
        case Op::add: return "add";
        case Op::sub: return "sub";
        case Op::mul: return "mul";
        case Op::div: return "div";
    }
    return "?";
}

Op parse_op(std::string_view text) {
    if (text == "add" || text == "+") return Op::add;
    if (text == "sub" || text == "-") return Op::sub;
    if (text == "mul" || text == "*") return Op::mul;
    if (text == "div" || text == "/") return Op::div;
    throw std::invalid_argument("unknown op '" + std::string(text) + "' (add|sub|mul|div)");
}

Elem apply(const GroundField& field, Op op, const Elem& a, const Elem& b) {
    switch (op) {
        case Op::add: return field.add(a, b);
        case Op::sub: return field.sub(a, b);
        case Op::mul: return field.mul(a, b);
        case Op::div: return field.div(a, b);
    }
    throw std::logic_error("bad op");
}

}  // namespace sumprod
