#include "sumprod/set_algebra.hpp"

#include "sumprod/kernel.hpp"

#include <stdexcept>

namespace sumprod {

ElemSet combine(const ElemSet& a, const ElemSet& b, Op op) {
    std::vector<Elem> values;
    stream_multiplicities(a, b, op, [&](const Elem& v, std::uint64_t) { values.push_back(v); });
    return adopt_sorted(a.field(), std::move(values));
}

std::uint64_t combine_size(const ElemSet& a, const ElemSet& b, Op op) {
    std::uint64_t n = 0;
    stream_counts(a, b, op, [&](std::uint64_t) { ++n; });
    return n;
}

ElemSet negate(const ElemSet& a) {
    std::vector<Elem> out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(a.field().neg(x));
    return ElemSet(a.field(), std::move(out));
}

ElemSet iterated_span(const ElemSet& a, SpanSpec spec, const Budget& budget) {
    if (spec.k == 0 && spec.l == 0) throw std::invalid_argument("span needs k + l >= 1");
    ElemSet acc = spec.k > 0 ? a : negate(a);
    unsigned plus = spec.k > 0 ? spec.k - 1 : 0;
    unsigned minus = spec.k > 0 ? spec.l : spec.l - 1;
    auto step = [&](Op op) {
        const auto pairs = static_cast<unsigned __int128>(acc.size()) * a.size();
        if (pairs > budget.span_pairs)
            throw BudgetExceeded("iterated span", pairs > ~0ULL ? ~0ULL : static_cast<std::uint64_t>(pairs),
                                 budget.span_pairs);
        acc = combine(acc, a, op);
    };
    for (; plus > 0; --plus) step(Op::add);
    for (; minus > 0; --minus) step(Op::sub);
    return acc;
}

}  // namespace sumprod
