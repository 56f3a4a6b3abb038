#include "sumprod/energy.hpp"

#include "sumprod/kernel.hpp"
#include "sumprod/set_algebra.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sumprod {

namespace {

unsigned bucket_of(std::uint64_t count) noexcept { return static_cast<unsigned>(std::bit_width(count)) - 1; }

std::uint64_t ceil_log2(std::uint64_t m) noexcept { return m <= 1 ? 0 : std::bit_width(m - 1); }

Op energy_op(Op op) {
    if (op != Op::add && op != Op::mul) throw std::invalid_argument("energy op must be add or mul");
    return op;
}

// |D|·2^{ik}, or its bucket_bound·(scale) multiple, compared against E_k.
bool dominates(std::uint64_t factor, std::uint64_t size, std::uint64_t level, double k, const Moment& e) {
    if (e.exact) {
        const BigCount lhs = BigCount(factor) * size * big_pow(level, static_cast<unsigned>(k));
        return lhs >= *e.exact;
    }
    const long double lhs = static_cast<long double>(factor) * size * std::pow(static_cast<long double>(level), k);
    return lhs >= static_cast<long double>(e.value) * (1.0L + e.rel_error);
}

}  // namespace

void MultiplicityHistogram::add(std::uint64_t count) {
    if (count >= values_with.size()) values_with.resize(count + 1, 0);
    ++values_with[count];
    ++support;
    mass += count;
}

std::uint64_t MultiplicityHistogram::max_multiplicity() const noexcept {
    return values_with.empty() ? 0 : values_with.size() - 1;
}

MultiplicityHistogram multiplicity_histogram(const ElemSet& a, const ElemSet& b, Op op) {
    MultiplicityHistogram h;
    h.excluded = stream_counts(a, b, op, [&](std::uint64_t c) { h.add(c); }).excluded;
    return h;
}

MultiplicityHistogram multiplicity_histogram(const RepFn& r) {
    MultiplicityHistogram h;
    for (const auto& e : r.entries()) h.add(e.count);
    h.excluded = r.excluded();
    return h;
}

bool is_integer_exponent(double k) noexcept { return k >= 1 && k <= 4096 && std::floor(k) == k; }

Moment moment_of(const MultiplicityHistogram& h, double k, Op op) {
    if (!(k > 0)) throw std::invalid_argument("moment exponent must be positive");
    Moment m;
    m.k = k;
    m.op = op;
    m.support = h.support;
    if (is_integer_exponent(k)) {
        BigCount total = 0;
        for (std::uint64_t c = 1; c < h.values_with.size(); ++c)
            if (h.values_with[c] != 0) total += BigCount(h.values_with[c]) * big_pow(c, static_cast<unsigned>(k));
        m.value = to_double(total);
        m.exact = std::move(total);
        return m;
    }
    // Descending order keeps the accumulation order fixed and adds the large
    // terms first.
    double total = 0;
    std::uint64_t terms = 0;
    for (std::uint64_t c = h.values_with.size(); c-- > 1;) {
        if (h.values_with[c] == 0) continue;
        total += static_cast<double>(h.values_with[c]) * std::pow(static_cast<double>(c), k);
        ++terms;
    }
    const double u = std::numeric_limits<double>::epsilon() / 2;
    const double n = static_cast<double>(terms + 3);
    m.value = total;
    m.rel_error = n * u / (1 - n * u);
    return m;
}

Moment energy(const ElemSet& a, const ElemSet& b, double k, Op op) {
    if (!(k > 0)) throw std::invalid_argument("energy exponent must be positive");
    energy_op(op);
    if (a.empty() || b.empty()) throw std::invalid_argument("energy of an empty set");
    return moment_of(multiplicity_histogram(a, b, quotient_of(op)), k, op);
}

unsigned dominant_bucket(const MultiplicityHistogram& h, double k) {
    if (h.support == 0) throw std::invalid_argument("dyadic extraction from an empty representation function");
    const unsigned top = bucket_of(h.max_multiplicity());
    std::vector<std::uint64_t> sizes(top + 1, 0);
    for (std::uint64_t c = 1; c < h.values_with.size(); ++c) sizes[bucket_of(c)] += h.values_with[c];

    unsigned best = 0;
    if (is_integer_exponent(k)) {
        BigCount best_score = -1;
        for (unsigned i = 0; i <= top; ++i) {
            if (sizes[i] == 0) continue;
            const BigCount score = BigCount(sizes[i]) << (static_cast<unsigned>(k) * i);
            if (score >= best_score) {
                best_score = score;
                best = i;
            }
        }
    } else {
        long double best_score = -1;
        for (unsigned i = 0; i <= top; ++i) {
            if (sizes[i] == 0) continue;
            const long double score = static_cast<long double>(sizes[i]) * std::pow(2.0L, static_cast<long double>(i) * k);
            if (score >= best_score) {
                best_score = score;
                best = i;
            }
        }
    }
    return best;
}

bool DyadicSlice::certificate_holds() const { return dominates(bucket_bound, support.size(), level, k, energy); }

bool DyadicSlice::scaled_certificate_holds() const {
    if (energy.exact) {
        const BigCount lhs = BigCount(bucket_bound) * support.size() * big_pow(2 * level, static_cast<unsigned>(k));
        return lhs >= *energy.exact;
    }
    const long double lhs = static_cast<long double>(bucket_bound) * support.size() *
                            std::pow(2.0L * static_cast<long double>(level), static_cast<long double>(k));
    return lhs >= static_cast<long double>(energy.value) * (1.0L + energy.rel_error);
}

DyadicRecord DyadicSlice::record(std::string name) const {
    DyadicRecord d;
    d.name = std::move(name);
    d.k = k;
    d.support = support.size();
    d.level = level;
    d.bucket = bucket;
    d.max_multiplicity = max_multiplicity;
    d.bucket_bound = bucket_bound;
    d.product = product;
    d.energy = energy.value;
    d.certificate = certificate_holds();
    d.scaled_certificate = scaled_certificate_holds();
    return d;
}

namespace {

DyadicSlice make_slice(const MultiplicityHistogram& h, double k, Op group, ElemSet support, unsigned bucket) {
    DyadicSlice s;
    s.k = k;
    s.bucket = bucket;
    s.level = std::uint64_t{1} << bucket;
    s.support = std::move(support);
    s.product = static_cast<double>(s.support.size()) * std::pow(static_cast<double>(s.level), k);
    s.max_multiplicity = h.max_multiplicity();
    s.bucket_bound = ceil_log2(s.max_multiplicity) + 1;
    s.energy = moment_of(h, k, group);
    return s;
}

}  // namespace

DyadicSlice dyadic_extract(const RepFn& r, double k) {
    if (!(k > 0)) throw std::invalid_argument("dyadic exponent must be positive");
    const MultiplicityHistogram h = multiplicity_histogram(r);
    const unsigned bucket = dominant_bucket(h, k);
    std::vector<Elem> values;
    for (const auto& e : r.entries())
        if (bucket_of(e.count) == bucket) values.push_back(e.value);
    return make_slice(h, k, group_of(r.op()), adopt_sorted(r.field(), std::move(values)), bucket);
}

DyadicSlice dyadic_extract(const ElemSet& a, const ElemSet& b, Op op, double k) {
    if (!(k > 0)) throw std::invalid_argument("dyadic exponent must be positive");
    const MultiplicityHistogram h = multiplicity_histogram(a, b, op);
    const unsigned bucket = dominant_bucket(h, k);
    std::vector<Elem> values;
    stream_multiplicities(a, b, op, [&](const Elem& v, std::uint64_t c) {
        if (bucket_of(c) == bucket) values.push_back(v);
    });
    return make_slice(h, k, group_of(op), adopt_sorted(a.field(), std::move(values)), bucket);
}

VerificationReport cauchy_schwarz_check(const ElemSet& a, Op op) {
    Stopwatch clock;
    energy_op(op);
    const ElemSet set = op == Op::mul ? a.without_zero() : a;
    VerificationReport r;
    r.lemma = std::string("cauchy_schwarz:") + std::string(op_name(op));
    r.inputs = {{"n", set.size()}, {"field", a.field().name()}};
    if (set.empty()) {
        r.notes.push_back("empty set after removing 0; both sides vanish");
        r.decide(0, 0, 1);
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    }
    const BigCount lhs = big_pow(set.size(), 4);
    const BigCount e = *energy(set, set, 2, op).exact;
    const std::uint64_t sumset = combine_size(set, set, op);
    const BigCount rhs = e * sumset;
    r.exact = {{"lhs", to_decimal(lhs)}, {"energy", to_decimal(e)}, {"sumset", std::to_string(sumset)},
               {"rhs", to_decimal(rhs)}};
    r.decide(to_double(lhs), to_double(rhs), 1);
    r.status = lhs <= rhs ? Status::pass : Status::fail;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

}  // namespace sumprod
