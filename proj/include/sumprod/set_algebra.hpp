#pragma once

#include "sumprod/budget.hpp"
#include "sumprod/elem_set.hpp"
#include "sumprod/op.hpp"

#include <cstdint>

namespace sumprod {

/// {a ∘ b : a ∈ A, b ∈ B}; div skips zero denominators.
ElemSet combine(const ElemSet& a, const ElemSet& b, Op op);

/// |A ∘ B| without materializing the set.
std::uint64_t combine_size(const ElemSet& a, const ElemSet& b, Op op);

ElemSet negate(const ElemSet& a);

/// k plus-copies and l minus-copies: kA - lA.
struct SpanSpec {
    unsigned k = 1;
    unsigned l = 0;
};

/// kA - lA by left fold ((A + A) + ...) - A - ...; every fold step must fit
/// in budget.span_pairs pair evaluations. Throws std::invalid_argument for
/// k = l = 0 and BudgetExceeded past the budget.
ElemSet iterated_span(const ElemSet& a, SpanSpec spec, const Budget& budget = Budget{});

}  // namespace sumprod
