#include "sumprod/counting.hpp"

#include "sumprod/kernel.hpp"
#include "sumprod/rep_fn.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace sumprod {

void to_json(nlohmann::json& j, const CountReport& r) {
    j = {{"equation", r.equation}, {"sizes", r.sizes}, {"count", to_decimal(r.count)}, {"elapsed_ms", r.elapsed_ms}};
}

namespace {

void charge(const char* what, u128 needed, std::uint64_t allowed) {
    if (needed > allowed)
        throw BudgetExceeded(what, needed > ~u64{0} ? ~u64{0} : static_cast<u64>(needed), allowed);
}

template <class Key, class Less>
BigCount sum_of_squared_weights(std::vector<std::pair<Key, u64>>& cells, Less less) {
    std::sort(cells.begin(), cells.end(), [&](const auto& l, const auto& r) { return less(l.first, r.first); });
    u128 total = 0;
    for (std::size_t i = 0; i < cells.size();) {
        u128 m = 0;
        std::size_t j = i;
        for (; j < cells.size() && !less(cells[i].first, cells[j].first); ++j) m += cells[j].second;
        total = checked_add(total, checked_mul(m, m));
        i = j;
    }
    return to_big(total);
}

}  // namespace

BigCount f_collision_count(const ElemSet& x, const ElemSet& y, const ElemSet& z, const Budget& budget) {
    require_same_field(x, y);
    require_same_field(x, z);
    if (x.contains_zero() || y.contains_zero() || z.contains_zero())
        throw std::invalid_argument("f_collision_count: inputs must avoid 0");
    if (x.empty() || y.empty() || z.empty()) return 0;
    const RepFn sums = rep_function(y, z, Op::add);
    charge("f_collision_count", static_cast<u128>(x.size()) * sums.support_size(), budget.table_insertions);

    const GroundField& f = x.field();
    if (f.is_prime()) {
        std::vector<std::pair<u64, u64>> cells;
        cells.reserve(x.size() * sums.support_size());
        for (const auto& xi : x)
            for (const auto& e : sums.entries())
                cells.emplace_back(static_cast<u64>(f.mul(xi, e.value).num), e.count);
        return sum_of_squared_weights(cells, std::less<u64>{});
    }
    std::vector<std::pair<Elem, u64>> cells;
    cells.reserve(x.size() * sums.support_size());
    for (const auto& xi : x)
        for (const auto& e : sums.entries()) cells.emplace_back(f.mul(xi, e.value), e.count);
    return sum_of_squared_weights(cells, std::less<Elem>{});
}

BigCount bilinear_count(const ElemSet& a, const ElemSet& b, const ElemSet& c, const ElemSet& d, const Budget& budget) {
    require_same_field(a, b);
    require_same_field(a, c);
    require_same_field(a, d);
    charge("bilinear_count",
           static_cast<u128>(a.size()) * b.size() + static_cast<u128>(c.size()) * d.size(), budget.table_insertions);
    const RepFn diffs = rep_function(c, d, Op::sub);
    const auto entries = diffs.entries();
    std::size_t pos = 0;
    u128 total = 0;
    stream_multiplicities(a, b, Op::mul, [&](const Elem& v, u64 m) {
        while (pos < entries.size() && entries[pos].value < v) ++pos;
        if (pos < entries.size() && entries[pos].value == v)
            total = checked_add(total, static_cast<u128>(m) * entries[pos].count);
    });
    return to_big(total);
}

BigCount tautological_count(const ElemSet& pairs, const ElemSet& witnesses, const ElemSet& d, const ElemSet& p,
                            Op group) {
    require_same_field(pairs, witnesses);
    require_same_field(pairs, d);
    require_same_field(pairs, p);
    if (group != Op::add && group != Op::mul) throw std::invalid_argument("tautological_count group must be add or mul");
    if (pairs.empty() || witnesses.empty() || d.empty() || p.empty()) return 0;
    const GroundField& f = pairs.field();
    const bool additive = group == Op::add;

    const std::size_t words = (witnesses.size() + 63) / 64;
    std::vector<u64> masks(pairs.size() * words, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < witnesses.size(); ++j)
            if (p.contains(apply(f, group, pairs[i], witnesses[j]))) masks[i * words + j / 64] |= u64{1} << (j % 64);

    auto common = [&](std::size_t i, std::size_t j) {
        u64 g = 0;
        for (std::size_t w = 0; w < words; ++w) g += std::popcount(masks[i * words + w] & masks[j * words + w]);
        return g;
    };

    u128 total = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (d.size() < pairs.size()) {
            for (const auto& dv : d) {
                if (!additive && f.is_zero(dv)) continue;
                // a ⊖ b = d  <=>  b = a ⊖ d
                const auto j = pairs.index_of(additive ? f.sub(pairs[i], dv) : f.div(pairs[i], dv));
                if (!j) continue;
                const u64 g = common(i, *j);
                total = checked_add(total, static_cast<u128>(g) * g);
            }
        } else {
            for (std::size_t j = 0; j < pairs.size(); ++j) {
                if (!additive && f.is_zero(pairs[j])) continue;
                if (!d.contains(additive ? f.sub(pairs[i], pairs[j]) : f.div(pairs[i], pairs[j]))) continue;
                const u64 g = common(i, j);
                total = checked_add(total, static_cast<u128>(g) * g);
            }
        }
    }
    return to_big(total);
}

BigCount count_energy_equiv(const ElemSet& a, Op op, int k, const Budget& budget) {
    if (k != 2 && k != 4) throw std::invalid_argument("count_energy_equiv supports k = 2 and k = 4");
    if (op != Op::add && op != Op::mul) throw std::invalid_argument("count_energy_equiv op must be add or mul");
    charge("count_energy_equiv", a.size(), budget.oracle_size);
    const GroundField& f = a.field();
    std::vector<Elem> denominators;
    for (const auto& x : a)
        if (op == Op::add || !f.is_zero(x)) denominators.push_back(x);

    // c(a, b) = |{(a', b') : a + b' = a' + b}|, resp. a·b' = a'·b.
    auto same_class = [&](const Elem& x, const Elem& y, const Elem& x2, const Elem& y2) {
        return op == Op::add ? f.add(x, y2) == f.add(x2, y) : f.mul(x, y2) == f.mul(x2, y);
    };
    u128 total = 0;
    for (const auto& x : a)
        for (const auto& y : denominators) {
            u64 c = 0;
            for (const auto& x2 : a)
                for (const auto& y2 : denominators)
                    if (same_class(x, y, x2, y2)) ++c;
            // Σ_x r(x)^k = Σ over pairs of r(pair's value)^(k-1)
            u128 term = c;
            for (int i = 2; i < k; ++i) term = checked_mul(term, c);
            total = checked_add(total, term);
        }
    return to_big(total);
}

}  // namespace sumprod
