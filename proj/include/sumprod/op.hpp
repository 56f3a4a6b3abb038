#pragma once

#include "sumprod/field.hpp"

#include <string_view>

namespace sumprod {

enum class Op { add, sub, mul, div };

std::string_view op_name(Op op) noexcept;
Op parse_op(std::string_view text);

/// The group operation an op belongs to: add for add/sub, mul for mul/div.
inline Op group_of(Op op) noexcept { return (op == Op::add || op == Op::sub) ? Op::add : Op::mul; }
/// The "difference" op of a group: sub for add, div for mul.
inline Op quotient_of(Op op) noexcept { return group_of(op) == Op::add ? Op::sub : Op::div; }
inline bool is_additive(Op op) noexcept { return group_of(op) == Op::add; }

/// a ∘ b; div throws on a zero denominator.
Elem apply(const GroundField& field, Op op, const Elem& a, const Elem& b);

}  // namespace sumprod
