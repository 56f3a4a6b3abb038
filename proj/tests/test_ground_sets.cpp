#include "doctest.h"
#include "oracles.hpp"

#include "sumprod/elem_set.hpp"
#include "sumprod/field.hpp"
#include "sumprod/kernel.hpp"
#include "sumprod/number_theory.hpp"
#include "sumprod/rep_fn.hpp"

#include <algorithm>
#include <random>

using namespace sumprod;

namespace {

const GroundField Q = GroundField::char_zero();
const GroundField F7 = GroundField::prime(7);
const GroundField M31 = GroundField::prime(2147483647);

std::vector<std::pair<long long, std::uint64_t>> table(const RepFn& r) {
    std::vector<std::pair<long long, std::uint64_t>> out;
    for (const auto& e : r.entries()) out.emplace_back(static_cast<long long>(e.value.num), e.count);
    return out;
}

}  // namespace

TEST_CASE("field construction") {
    CHECK_THROWS_AS(GroundField::prime(2), std::invalid_argument);
    CHECK_THROWS_AS(GroundField::prime(9), std::invalid_argument);
    CHECK_THROWS_AS(GroundField::prime(1), std::invalid_argument);
    CHECK(GroundField::prime(3).modulus() == 3);
    CHECK(GroundField::parse("prime:7") == F7);
    CHECK(GroundField::parse("char0") == Q);
    CHECK_THROWS(GroundField::parse("prime:8"));
    CHECK_THROWS(GroundField::parse("mod7"));
}

TEST_CASE("prime field arithmetic") {
    CHECK(F7.add(F7.from_int(5), F7.from_int(4)) == F7.from_int(2));
    CHECK(F7.sub(F7.from_int(1), F7.from_int(3)) == F7.from_int(5));
    CHECK(F7.mul(F7.from_int(3), F7.from_int(5)) == F7.from_int(1));
    CHECK(F7.div(F7.from_int(1), F7.from_int(3)) == F7.from_int(5));
    CHECK_THROWS_AS(F7.div(F7.one(), F7.zero()), std::domain_error);
    const Elem big = M31.from_int(2147483646);
    CHECK(M31.mul(big, big) == M31.one());
    for (long long x = 1; x < 200; ++x) CHECK(M31.mul(M31.from_int(x), M31.inv(M31.from_int(x))) == M31.one());
}

TEST_CASE("rational arithmetic is exact and canonical") {
    const Elem half = Q.from_fraction(1, 2);
    const Elem third = Q.from_fraction(-2, -6);
    CHECK(third == Q.from_fraction(1, 3));
    CHECK(Q.add(half, third) == Q.from_fraction(5, 6));
    CHECK(Q.div(Q.from_int(4), Q.from_int(-6)) == Q.from_fraction(-2, 3));
    CHECK(Q.is_canonical(Q.from_fraction(6, -4)));
    CHECK(Q.from_fraction(6, -4).den == 2);
    CHECK(Q.parse_elem("10/4") == Q.from_fraction(5, 2));
    CHECK(Q.format(Q.from_fraction(-5, 2)) == "-5/2");
    CHECK(Q.from_fraction(-1, 2) < Q.zero());
    CHECK(Q.from_fraction(1, 3) < Q.from_fraction(1, 2));
}

TEST_CASE("parse_set reduces, deduplicates and counts duplicates") {
    const auto p = parse_set("3\n10\n3", F7);
    CHECK(p.set == ElemSet::of(F7, {3}));
    CHECK(p.duplicates == 2);
    CHECK(parse_set("0\n1\n2", Q).set == ElemSet::of(Q, {0, 1, 2}));
    CHECK(parse_set("-1", F7).set == ElemSet::of(F7, {6}));
    CHECK(parse_set("", F7).set.empty());
    CHECK(parse_set("# comment\n\n 4 \n", F7).set == ElemSet::of(F7, {4}));
    CHECK_THROWS_AS(parse_set("1\nx\n", Q), std::invalid_argument);
    CHECK_THROWS_AS(parse_set("1.5", Q), std::invalid_argument);
    CHECK_THROWS_AS(parse_set("1/2", F7), std::invalid_argument);
    CHECK_THROWS_AS(parse_set("1/0", Q), std::invalid_argument);
}

TEST_CASE("set files round-trip through render") {
    std::mt19937_64 rng(7);
    for (const auto& f : {Q, F7, M31}) {
        const ElemSet s = oracle::random_set(f, 5, 6, rng);
        CHECK(parse_set_file(render_set(s)).set == s);
    }
    const ElemSet r(Q, {Q.from_fraction(1, 3), Q.from_fraction(-7, 2), Q.from_int(5)});
    CHECK(parse_set_file(render_set(r)).set == r);
    CHECK(parse_set_file("# field prime 7\n8\n").set == ElemSet::of(F7, {1}));
    CHECK_THROWS(parse_set_file("# field prime 7\n1\n", GroundField::prime(11)));
}

TEST_CASE("rep_function examples") {
    const ElemSet a = ElemSet::of(Q, {0, 1, 2});
    const RepFn r = rep_function(a, a, Op::sub);
    CHECK(table(r) == std::vector<std::pair<long long, std::uint64_t>>{{-2, 1}, {-1, 2}, {0, 3}, {1, 2}, {2, 1}});
    CHECK(rep_function(a, ElemSet(Q), Op::add).empty());

    const ElemSet g = ElemSet::of(F7, {1, 2, 4});
    CHECK(table(rep_function(g, g, Op::div)) == std::vector<std::pair<long long, std::uint64_t>>{{1, 3}, {2, 3}, {4, 3}});
    CHECK_THROWS_AS(rep_function(a, g, Op::add), std::invalid_argument);
}

TEST_CASE("rep_function matches enumeration and conserves mass") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const GroundField f = trial % 2 ? M31 : (trial % 4 == 0 ? Q : GroundField::prime(101));
        const ElemSet a = oracle::random_set(f, 1 + rng() % 20, 60, rng);
        const ElemSet b = oracle::random_set(f, 1 + rng() % 20, 60, rng);
        for (Op op : {Op::add, Op::sub, Op::mul, Op::div}) {
            const RepFn r = rep_function(a, b, op);
            const auto expect = oracle::rep(a, b, op);
            REQUIRE(r.support_size() == expect.size());
            std::size_t i = 0;
            for (const auto& [v, c] : expect) {
                CHECK(r.entries()[i].value == v);
                CHECK(r.entries()[i].count == c);
                ++i;
            }
            const std::uint64_t zeros = op == Op::div && b.contains_zero() ? a.size() : 0;
            CHECK(r.excluded() == zeros);
            CHECK(r.mass() == a.size() * b.size() - zeros);
        }
    }
}

TEST_CASE("rep_function symmetry") {
    std::mt19937_64 rng(5);
    const ElemSet a = oracle::random_set(M31, 25, 1000, rng, true);
    const RepFn d = rep_function(a, a, Op::sub);
    for (const auto& e : d.entries()) CHECK(d.at(M31.neg(e.value)) == e.count);
    const RepFn q = rep_function(a, a, Op::div);
    for (const auto& e : q.entries()) CHECK(q.at(M31.inv(e.value)) == e.count);
}

TEST_CASE("number theory helpers") {
    CHECK(nt::is_prime(2147483647));
    CHECK_FALSE(nt::is_prime(2147483649ULL));
    CHECK(nt::is_prime(1000000007));
    CHECK(nt::is_prime(9223372036854775783ULL));
    CHECK(nt::prime_factors(2147483646) == std::vector<std::uint64_t>{2, 3, 7, 11, 31, 151, 331});
    const auto g = nt::subgroup_generator(7, 3);
    CHECK((g == 2 || g == 4));
    CHECK_THROWS(nt::subgroup_generator(7, 4));
}

TEST_CASE("chunked streaming agrees with one big sort") {
    std::mt19937_64 rng(17);
    for (std::uint64_t p : {2147483647ULL, 2305843009213693951ULL}) {
        const GroundField f = GroundField::prime(p);
        const ElemSet a = oracle::random_set(f, 2600, 1LL << 40, rng, true);
        const ElemSet b = oracle::random_set(f, 2500, 1LL << 40, rng);
        for (Op op : {Op::add, Op::sub, Op::mul, Op::div}) {
            std::vector<std::uint64_t> values;
            for (const auto& x : a)
                for (const auto& y : b)
                    if (!(op == Op::div && f.is_zero(y))) values.push_back(static_cast<std::uint64_t>(apply(f, op, x, y).num));
            std::sort(values.begin(), values.end());
            std::size_t i = 0;
            bool same = true;
            stream_multiplicities(a, b, op, [&](const Elem& v, std::uint64_t c) {
                const auto x = static_cast<std::uint64_t>(v.num);
                std::size_t j = i;
                while (j < values.size() && values[j] == x) ++j;
                if (i >= values.size() || values[i] != x || j - i != c) same = false;
                i = j;
            });
            CHECK(same);
            CHECK(i == values.size());
        }
    }
}
