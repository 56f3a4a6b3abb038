#include "doctest.h"
#include "oracles.hpp"

#include "sumprod/rep_fn.hpp"
#include "sumprod/set_algebra.hpp"

#include <random>

using namespace sumprod;

namespace {
const GroundField Q = GroundField::char_zero();
const GroundField F7 = GroundField::prime(7);
}  // namespace

TEST_CASE("combine examples") {
    const ElemSet a = ElemSet::of(Q, {1, 2, 4});
    CHECK(combine(a, a, Op::add) == ElemSet::of(Q, {2, 3, 4, 5, 6, 8}));
    CHECK(combine(a, ElemSet::of(Q, {0}), Op::add) == a);
    const ElemSet g = ElemSet::of(F7, {1, 2, 4});
    CHECK(combine(g, g, Op::div) == g);
    CHECK(combine(ElemSet::of(Q, {1, 2}), ElemSet::of(Q, {0, 2}), Op::div) == ElemSet(Q, {Q.from_fraction(1, 2), Q.one()}));
}

TEST_CASE("combine agrees with the rep support and with enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const GroundField f = trial % 3 == 0 ? Q : GroundField::prime(trial % 3 == 1 ? 97 : 2147483647);
        const ElemSet a = oracle::random_set(f, 1 + rng() % 15, 50, rng);
        const ElemSet b = oracle::random_set(f, 1 + rng() % 15, 50, rng);
        for (Op op : {Op::add, Op::sub, Op::mul, Op::div}) {
            const ElemSet c = combine(a, b, op);
            CHECK(c == rep_function(a, b, op).support());
            CHECK(c.size() == oracle::combine_size(a, b, op));
            CHECK(combine_size(a, b, op) == c.size());
            CHECK(c.size() <= a.size() * b.size());
        }
        CHECK(combine(a, b, Op::add) == combine(b, a, Op::add));
        CHECK(combine(a, b, Op::mul) == combine(b, a, Op::mul));
        if (!f.is_prime()) {
            CHECK(combine(a, b, Op::add).size() >= std::max(a.size(), b.size()));
            CHECK(combine(a, b, Op::sub).size() >= std::max(a.size(), b.size()));
        }
    }
}

TEST_CASE("iterated span examples") {
    CHECK(iterated_span(ElemSet::of(Q, {0, 1}), {2, 1}) == ElemSet::of(Q, {-1, 0, 1, 2}));
    const ElemSet a = ElemSet::of(Q, {0, 1, 3});
    CHECK(iterated_span(a, {1, 0}) == a);
    CHECK(iterated_span(a, {1, 1}) == ElemSet::of(Q, {-3, -2, -1, 0, 1, 2, 3}));
    CHECK(iterated_span(a, {0, 1}) == ElemSet::of(Q, {-3, -1, 0}));
    CHECK(iterated_span(a, {0, 2}) == ElemSet::of(Q, {-6, -4, -3, -2, -1, 0}));
    CHECK_THROWS_AS(iterated_span(a, {0, 0}), std::invalid_argument);
    Budget tight;
    tight.span_pairs = 10;
    CHECK_THROWS_AS(iterated_span(ElemSet::of(Q, {0, 1, 5, 9}), {3, 0}, tight), BudgetExceeded);
}

TEST_CASE("iterated span is monotone in the set") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const ElemSet a = oracle::random_set(Q, 8, 40, rng);
        std::vector<Elem> half(a.begin(), a.begin() + 4);
        const ElemSet sub(Q, half);
        for (SpanSpec s : {SpanSpec{2, 0}, SpanSpec{1, 1}, SpanSpec{2, 2}, SpanSpec{0, 3}})
            CHECK(iterated_span(sub, s).is_subset_of(iterated_span(a, s)));
    }
}
