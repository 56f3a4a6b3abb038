#include "doctest.h"

#include "sumprod/families.hpp"

#include <cmath>
#include <stdexcept>

using namespace sumprod;

namespace {
const GroundField Q = GroundField::char_zero();
const GroundField M31 = GroundField::prime(2147483647);
}  // namespace

TEST_CASE("family examples") {
    CHECK(gen_family({FamilyKind::ap, 5, Q, 0, 1}) == ElemSet::of(Q, {0, 1, 2, 3, 4}));
    FamilySpec gp{FamilyKind::gp, 4, Q};
    gp.base = 1;
    gp.ratio = 2;
    CHECK(gen_family(gp) == ElemSet::of(Q, {1, 2, 4, 8}));
    FamilySpec sg{FamilyKind::subgroup, 3, GroundField::prime(7)};
    sg.order = 3;
    CHECK(gen_family(sg) == ElemSet::of(GroundField::prime(7), {1, 2, 4}));
    CHECK(gen_family({FamilyKind::interval, 3, Q, -1}) == ElemSet::of(Q, {-1, 0, 1}));
}

TEST_CASE("family errors") {
    FamilySpec sg{FamilyKind::subgroup, 4, GroundField::prime(7)};
    CHECK_THROWS_AS(gen_family(sg), std::invalid_argument);
    CHECK_THROWS_AS(gen_family({FamilyKind::ap, 8, GroundField::prime(7)}), std::invalid_argument);
    FamilySpec gp{FamilyKind::gp, 4, Q};
    gp.ratio = 1;
    CHECK_THROWS_AS(gen_family(gp), std::invalid_argument);
    gp.ratio = 0;
    CHECK_THROWS_AS(gen_family(gp), std::invalid_argument);
    FamilySpec short_order{FamilyKind::gp, 40, M31};
    short_order.ratio = 2;  // 2 has order 31 mod 2^31 - 1
    CHECK_THROWS_AS(gen_family(short_order), std::invalid_argument);
    CHECK_THROWS_AS(gen_family({FamilyKind::ap, 0, Q}), std::invalid_argument);
}

TEST_CASE("families are deterministic and sized") {
    for (auto kind : {FamilyKind::ap, FamilyKind::random, FamilyKind::interval}) {
        FamilySpec s{kind, 100, M31};
        s.seed = 42;
        const ElemSet a = gen_family(s);
        CHECK(a.size() == 100);
        CHECK(gen_family(s) == a);
    }
    FamilySpec r{FamilyKind::random, 50, Q};
    r.seed = 1;
    FamilySpec r2 = r;
    r2.seed = 2;
    CHECK(gen_family(r) != gen_family(r2));
    CHECK(largest_subgroup_order(2147483647, 64) == 63);
    CHECK(largest_subgroup_order(2147483647, 16) == 14);
    FamilySpec sg{FamilyKind::subgroup, 63, M31};
    CHECK(gen_family(sg).size() == 63);
}

TEST_CASE("sum-product ratio examples") {
    CHECK(sum_product_ratio(gen_family({FamilyKind::ap, 8, Q, 1})) == doctest::Approx(30 / std::pow(8.0, 1.25)).epsilon(1e-12));
    CHECK(sum_product_ratio(ElemSet::of(Q, {1, 2})) == doctest::Approx(3 / std::pow(2.0, 1.25)));
    FamilySpec gp{FamilyKind::gp, 8, Q};
    const SumProductSizes s = sum_product_sizes(gen_family(gp), Op::add, Op::mul);
    CHECK(s.multiplicative == 15);
    CHECK(s.additive == 36);
    CHECK(s.ratio == doctest::Approx(36 / std::pow(8.0, 1.25)));
    CHECK_THROWS_AS(sum_product_ratio(ElemSet::of(Q, {0, 3})), std::invalid_argument);
    CHECK_THROWS_AS(sum_product_ratio(ElemSet::of(Q, {1, 3}), Op::mul, Op::add), std::invalid_argument);
}

TEST_CASE("local search never worsens") {
    const GroundField f = GroundField::prime(1009);
    const ElemSet seed = gen_family({FamilyKind::ap, 16, f, 1});
    const SearchState zero = local_search_min_ratio(seed, 0, 1);
    CHECK(zero.best == seed);
    CHECK(zero.best_ratio == sum_product_ratio(seed));
    const SearchState run = local_search_min_ratio(seed, 2000, 7);
    CHECK(run.best_ratio <= sum_product_ratio(seed));
    CHECK(run.best_ratio == doctest::Approx(sum_product_ratio(run.best)));
    CHECK(run.best.size() == 16);
    const SearchState again = local_search_min_ratio(seed, 2000, 7);
    CHECK(again.best == run.best);
    CHECK_THROWS_AS(local_search_min_ratio(seed, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(local_search_min_ratio(gen_family({FamilyKind::ap, 3, f, 1}), 5, 1), std::invalid_argument);
}
