#include "sumprod/families.hpp"

#include "sumprod/number_theory.hpp"
#include "sumprod/set_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sumprod {

std::string_view family_name(FamilyKind k) noexcept {
    switch (k) {
        case FamilyKind::ap: return "ap";
        case FamilyKind::gp: return "gp";
        case FamilyKind::random: return "random";
        case FamilyKind::subgroup: return "subgroup";
        case FamilyKind::interval: return "interval";
    }
    return "?";
}

FamilyKind parse_family(std::string_view text) {
    for (auto k : {FamilyKind::ap, FamilyKind::gp, FamilyKind::random, FamilyKind::subgroup, FamilyKind::interval})
        if (family_name(k) == text) return k;
    throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t span) {
    if (span == 0) throw std::invalid_argument("empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
    std::uint64_t x;
    do x = rng();
    while (x > limit);
    return x % span;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t largest_subgroup_order(std::uint64_t p, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("order bound must be positive");
    for (std::uint64_t d = std::min(n, p - 1); d > 1; --d)
        if ((p - 1) % d == 0) return d;
    return 1;
}

namespace {

ElemSet exact_size(const FamilySpec& spec, std::vector<Elem> elems) {
    ElemSet set(spec.field, std::move(elems));
    if (set.size() != spec.n)
        throw std::invalid_argument(std::string(family_name(spec.kind)) + " family repeats before n elements");
    return set;
}

}  // namespace

ElemSet gen_family(const FamilySpec& spec) {
    const GroundField& f = spec.field;
    if (spec.n == 0) throw std::invalid_argument("family size must be at least 1");
    if (f.is_prime() && spec.n > f.modulus()) throw std::invalid_argument("family size exceeds p");
    std::vector<Elem> out;
    out.reserve(spec.n);
    switch (spec.kind) {
        case FamilyKind::ap:
        case FamilyKind::interval: {
            const long long step = spec.kind == FamilyKind::ap ? spec.step : 1;
            Elem x = f.from_int(spec.start);
            const Elem d = f.from_int(step);
            for (std::uint64_t i = 0; i < spec.n; ++i, x = f.add(x, d)) out.push_back(x);
            return exact_size(spec, std::move(out));
        }
        case FamilyKind::gp: {
            const Elem r = f.from_int(spec.ratio);
            if (f.is_zero(r) || r == f.one()) throw std::invalid_argument("gp ratio must not be 0 or 1");
            Elem x = f.from_int(spec.base);
            if (f.is_zero(x)) throw std::invalid_argument("gp base must be nonzero");
            for (std::uint64_t i = 0; i < spec.n; ++i) {
                out.push_back(x);
                if (i + 1 < spec.n) x = f.mul(x, r);
            }
            return exact_size(spec, std::move(out));
        }
        case FamilyKind::random: {
            std::mt19937_64 rng(spec.seed);
            const std::uint64_t span = f.is_prime() ? f.modulus() - 1 : (spec.range ? spec.range : 1000 * spec.n);
            if (spec.n > span) throw std::invalid_argument("random family larger than its range");
            std::vector<std::uint64_t> values;
            values.reserve(spec.n);
            std::vector<std::uint64_t> sorted;
            while (values.size() < spec.n) {
                const std::uint64_t v = 1 + uniform_below(rng, span);
                const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
                if (it != sorted.end() && *it == v) continue;
                sorted.insert(it, v);
                values.push_back(v);
            }
            for (auto v : values) out.push_back(f.from_int(static_cast<Int>(v)));
            return exact_size(spec, std::move(out));
        }
        case FamilyKind::subgroup: {
            if (!f.is_prime()) throw std::invalid_argument("subgroup family needs a prime field");
            const std::uint64_t order = spec.order ? spec.order : spec.n;
            if (order != spec.n) throw std::invalid_argument("subgroup family has exactly `order` elements");
            const std::uint64_t p = f.modulus();
            const std::uint64_t g = nt::subgroup_generator(p, order);
            std::uint64_t x = 1;
            for (std::uint64_t i = 0; i < order; ++i, x = nt::mul_mod(x, g, p)) out.push_back(f.from_int(x));
            return exact_size(spec, std::move(out));
        }
    }
    throw std::invalid_argument("unknown family");
}

SumProductSizes sum_product_sizes(const ElemSet& a, Op addop, Op mulop) {
    if (!is_additive(addop) || is_additive(mulop)) throw std::invalid_argument("need one additive and one multiplicative op");
    const ElemSet set = a.without_zero();
    if (set.size() < 2) throw std::invalid_argument("sum-product ratio of a degenerate set");
    SumProductSizes s;
    s.n = set.size();
    s.additive = combine_size(set, set, addop);
    s.multiplicative = combine_size(set, set, mulop);
    s.ratio = static_cast<double>(std::max(s.additive, s.multiplicative)) / std::pow(static_cast<double>(s.n), 1.25);
    return s;
}

SearchState local_search_min_ratio(const ElemSet& seed, long long steps, std::uint64_t rng_seed,
                                   SearchSchedule schedule, Op addop, Op mulop) {
    if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
    if (!seed.field().is_prime()) throw std::invalid_argument("search needs a prime field");
    if (seed.size() < 4) throw std::invalid_argument("search needs |seed| >= 4");
    if (seed.contains_zero()) throw std::invalid_argument("search seed must avoid 0");
    const GroundField& f = seed.field();
    if (seed.size() + 1 >= f.modulus()) throw std::invalid_argument("seed fills the field");

    SearchState st;
    st.schedule = schedule;
    st.rng_seed = rng_seed;
    st.current = seed;
    st.current_ratio = st.initial_ratio = sum_product_ratio(seed, addop, mulop);
    st.best = seed;
    st.best_ratio = st.current_ratio;

    std::mt19937_64 rng(rng_seed);
    double temperature = schedule.initial_temperature;
    std::vector<Elem> elems(seed.begin(), seed.end());
    for (long long step = 0; step < steps; ++step) {
        const std::size_t out = uniform_below(rng, elems.size());
        Elem in;
        do in = f.from_int(static_cast<Int>(1 + uniform_below(rng, f.modulus() - 1)));
        while (st.current.contains(in));
        std::vector<Elem> trial = elems;
        trial[out] = in;
        ElemSet next(f, trial);
        const double ratio = sum_product_ratio(next, addop, mulop);
        const double delta = ratio - st.current_ratio;
        const double u = uniform_unit(rng);
        if (delta <= 0 || (temperature > 0 && u < std::exp(-delta / temperature))) {
            elems = std::move(trial);
            st.current = std::move(next);
            st.current_ratio = ratio;
            ++st.accepted;
            if (ratio < st.best_ratio) {
                st.best = st.current;
                st.best_ratio = ratio;
            }
        }
        temperature *= schedule.cooling;
        ++st.steps;
    }
    return st;
}

}  // namespace sumprod
