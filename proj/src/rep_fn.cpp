#include "sumprod/rep_fn.hpp"

#include "sumprod/kernel.hpp"

#include <algorithm>

namespace sumprod {

std::uint64_t RepFn::mass() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.count;
    return total;
}

std::uint64_t RepFn::max_multiplicity() const noexcept {
    std::uint64_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.count);
    return m;
}

std::uint64_t RepFn::at(const Elem& x) const noexcept {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                     [](const Entry& e, const Elem& v) { return e.value < v; });
    return (it != entries_.end() && it->value == x) ? it->count : 0;
}

ElemSet RepFn::support() const {
    std::vector<Elem> values;
    values.reserve(entries_.size());
    for (const auto& e : entries_) values.push_back(e.value);
    return adopt_sorted(field_, std::move(values));
}

RepFn rep_function(const ElemSet& a, const ElemSet& b, Op op) {
    RepFn r;
    r.field_ = a.field();
    r.op_ = op;
    r.lhs_size_ = a.size();
    r.rhs_size_ = b.size();
    const PairTally tally =
        stream_multiplicities(a, b, op, [&](const Elem& v, std::uint64_t c) { r.entries_.push_back({v, c}); });
    r.excluded_ = tally.excluded;
    return r;
}

}  // namespace sumprod
