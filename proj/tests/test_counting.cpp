#include "doctest.h"
#include "oracles.hpp"

#include "sumprod/counting.hpp"
#include "sumprod/energy.hpp"

#include <random>

using namespace sumprod;

namespace {
const GroundField Q = GroundField::char_zero();
const GroundField F5 = GroundField::prime(5);
const GroundField M31 = GroundField::prime(2147483647);
}  // namespace

TEST_CASE("f collision examples") {
    CHECK(f_collision_count(ElemSet::of(Q, {1}), ElemSet::of(Q, {1}), ElemSet::of(Q, {1})) == 1);
    const ElemSet s = ElemSet::of(Q, {1, 2});
    CHECK(f_collision_count(s, s, s) == 14);
    CHECK(f_collision_count(ElemSet::of(Q, {1}), ElemSet::of(Q, {1}), s) == 2);
    CHECK_THROWS_AS(f_collision_count(ElemSet::of(Q, {0, 1}), s, s), std::invalid_argument);
    Budget tiny;
    tiny.table_insertions = 3;
    CHECK_THROWS_AS(f_collision_count(s, s, s, tiny), BudgetExceeded);
}

TEST_CASE("bilinear examples") {
    const ElemSet one = ElemSet::of(Q, {1});
    CHECK(bilinear_count(one, one, one, ElemSet::of(Q, {0})) == 1);
    const ElemSet one5 = ElemSet::of(F5, {1});
    CHECK(bilinear_count(one5, one5, one5, one5) == 0);
    CHECK(bilinear_count(ElemSet::of(Q, {1, 2}), ElemSet::of(Q, {1, 2}), ElemSet::of(Q, {1, 2, 3, 4, 5}),
                         ElemSet::of(Q, {0, 1})) == 8);
}

TEST_CASE("tautological examples") {
    const ElemSet b = ElemSet::of(Q, {0, 1});
    CHECK(tautological_count(b, ElemSet::of(Q, {1}), ElemSet(Q)) == 0);
    CHECK(tautological_count(b, ElemSet(Q), ElemSet::of(Q, {0, 1, 2})) == 0);
    CHECK(tautological_count(b, ElemSet::of(Q, {1}), ElemSet::of(Q, {0, 1, 2})) == 4);
}

TEST_CASE("energy oracle examples") {
    CHECK(count_energy_equiv(ElemSet::of(Q, {0, 1, 2}), Op::add, 2) == 19);
    CHECK(count_energy_equiv(ElemSet::of(Q, {0, 1, 2}), Op::add, 4) == 115);
    CHECK(count_energy_equiv(ElemSet::of(M31, {9}), Op::mul, 4) == 1);
    CHECK(count_energy_equiv(ElemSet::of(Q, {1, 2, 4}), Op::mul, 2) == 19);
    Budget b;
    b.oracle_size = 2;
    CHECK_THROWS_AS(count_energy_equiv(ElemSet::of(Q, {1, 2, 4}), Op::mul, 2, b), BudgetExceeded);
    CHECK_THROWS_AS(count_energy_equiv(ElemSet::of(Q, {1}), Op::mul, 3), std::invalid_argument);
}

TEST_CASE("counters agree with naive enumeration") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const GroundField f = trial % 3 == 0 ? Q : (trial % 3 == 1 ? GroundField::prime(31) : M31);
        auto pick = [&](std::size_t max, bool nonzero) { return oracle::random_set(f, 1 + rng() % max, 20, rng, nonzero); };
        const ElemSet x = pick(8, true), y = pick(8, true), z = pick(8, true);
        CHECK(f_collision_count(x, y, z) == oracle::kmps(x, y, z));
        CHECK(f_collision_count(x, y, z) >= x.size() * y.size() * z.size());
        const ElemSet a = pick(12, false), b = pick(12, false), c = pick(12, false), d = pick(12, false);
        CHECK(bilinear_count(a, b, c, d) == oracle::bilinear(a, b, c, d));
        const ElemSet bb = pick(14, false);
        const ElemSet dd = pick(10, false);
        const ElemSet pp = oracle::random_set(f, 1 + rng() % 30, 40, rng);
        CHECK(tautological_count(bb, dd, pp) == oracle::tautological(bb, dd, pp));
    }
}

TEST_CASE("tautological count is translation invariant") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const ElemSet b = oracle::random_set(Q, 10, 20, rng);
        const ElemSet d = oracle::random_set(Q, 6, 10, rng);
        const ElemSet p = oracle::random_set(Q, 20, 40, rng);
        const Elem s = Q.from_int(17);
        auto shift = [&](const ElemSet& x, const Elem& by) {
            std::vector<Elem> out;
            for (const auto& e : x) out.push_back(Q.add(e, by));
            return ElemSet(Q, out);
        };
        CHECK(tautological_count(shift(b, s), d, shift(p, Q.add(s, s))) == tautological_count(b, d, p));
    }
}

TEST_CASE("energy oracle matches the kernel") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const GroundField f = trial % 2 ? M31 : Q;
        const ElemSet a = oracle::random_set(f, 1 + rng() % 20, 30, rng);
        for (Op op : {Op::add, Op::mul})
            for (int k : {2, 4}) CHECK(count_energy_equiv(a, op, k) == *energy(a, a, k, op).exact);
    }
}
