#include "doctest.h"
#include "oracles.hpp"

#include "sumprod/families.hpp"
#include "sumprod/regularize.hpp"
#include "sumprod/set_algebra.hpp"

#include <random>

using namespace sumprod;

namespace {

const GroundField Q = GroundField::char_zero();
const GroundField M31 = GroundField::prime(2147483647);

ElemSet brute_popular(const ElemSet& a, const Ratio& eps, Op op) {
    const auto r = oracle::rep(a, a, op);
    std::vector<Elem> out;
    for (const auto& [v, c] : r) {
        // c >= eps |A|^2 / |A∘A|
        if (BigCount(c) * r.size() * eps.den >= eps.num * a.size() * a.size()) out.push_back(v);
    }
    return ElemSet(a.field(), out);
}

ElemSet brute_rule(const ElemSet& a, const Ratio& eps, const Ratio& theta, Op op) {
    const ElemSet p = brute_popular(a, eps, op);
    std::vector<Elem> out;
    for (const auto& x : a) {
        std::uint64_t good = 0;
        for (const auto& y : a) {
            if (op == Op::div && a.field().is_zero(y)) continue;
            if (p.contains(apply(a.field(), op, x, y))) ++good;
        }
        if (BigCount(good) * theta.den >= theta.num * a.size()) out.push_back(x);
    }
    return ElemSet(a.field(), out);
}

}  // namespace

TEST_CASE("exact ratios") {
    CHECK(Ratio::parse("2/3").str() == "2/3");
    CHECK(Ratio::parse("4/6").str() == "2/3");
    CHECK(Ratio::parse("0.25").str() == "1/4");
    CHECK(Ratio::parse("3").str() == "3");
    CHECK(Ratio::from_double(0.5).str() == "1/2");
    CHECK(Ratio::from_double(3.0).str() == "3");
    CHECK(Ratio::from_double(0.1).to_double() == 0.1);
    CHECK_THROWS(Ratio::parse("1/0"));
    CHECK_THROWS(Ratio::parse("x"));
    CHECK_THROWS(Ratio::from_double(-1));
}

TEST_CASE("popular sums examples") {
    const ElemSet a = ElemSet::of(Q, {0, 1, 2, 3});
    CHECK(popular_sums(a, Ratio{1, 2}) == ElemSet::of(Q, {1, 2, 3, 4, 5}));
    CHECK(popular_sums(a, Ratio{1, 100}) == combine(a, a, Op::add));
    CHECK(popular_sums(ElemSet::of(Q, {0, 1}), Ratio{1, 1}) == ElemSet::of(Q, {1}));
}

TEST_CASE("popularity rule examples") {
    const ElemSet a = ElemSet::of(Q, {0, 1, 2, 3});
    CHECK(good_partner_counts(a, popular_sums(a, Ratio{1, 2}), Op::add) == std::vector<std::uint64_t>{3, 4, 4, 3});
    CHECK(popularity_rule(a, Ratio{1, 2}) == a);
    CHECK(popularity_rule(ElemSet::of(Q, {0, 1}), Ratio{1, 1}).empty());
    CHECK(popularity_rule(ElemSet::of(Q, {3, 7, 20}), Ratio{1, 1000}) == ElemSet::of(Q, {3, 7, 20}));
}

TEST_CASE("popular sets and rule agree with enumeration") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const GroundField f = trial % 2 ? M31 : Q;
        const ElemSet a = oracle::random_set(f, 3 + rng() % 20, 25, rng);
        for (Op op : {Op::add, Op::sub, Op::mul, Op::div})
            for (Ratio eps : {Ratio{1, 2}, Ratio{1, 5}, Ratio{9, 10}}) {
                const ElemSet p = popular_set(a, eps, op);
                CHECK(p == brute_popular(a, eps, op));
                CHECK(p.is_subset_of(combine(a, a, op)));
                const ElemSet r = popularity_rule(a, eps, Ratio{2, 3}, op);
                CHECK(r == brute_rule(a, eps, Ratio{2, 3}, op));
                CHECK(r.is_subset_of(a));
            }
    }
}

TEST_CASE("regu_iterate") {
    PopularityParams params;
    const ElemSet ap = gen_family({FamilyKind::ap, 64, Q});
    const ReguResult r = regu_iterate(ap, 4.0 / 3.0, params);
    CHECK(r.certificate.holds());
    CHECK(r.b.size() >= 32);
    CHECK(r.certificate.c2 > 0);
    CHECK(r.refined.is_subset_of(r.b));
    CHECK(r.b.is_subset_of(ap));
    CHECK(r.refined == popularity_rule(r.b, r.certificate.epsilon, params.theta));

    FamilySpec rs{FamilyKind::random, 64, M31};
    rs.seed = 99;
    const ElemSet rnd = gen_family(rs);
    const ReguResult rr = regu_iterate(rnd, 4.0 / 3.0, params);
    CHECK(rr.certificate.holds());
    CHECK(rr.b.size() >= 32);

    // R_ε(A) = A: one round, c2 = 1
    const ElemSet fixed = gen_family({FamilyKind::ap, 16, Q});
    const ReguResult f = regu_iterate(fixed, 2, params);
    if (f.refined == fixed) {
        CHECK(f.certificate.rounds.size() == 1);
        CHECK(f.certificate.c2 == 1);
        CHECK(f.b == fixed);
    }
    CHECK_THROWS_AS(regu_iterate(gen_family({FamilyKind::ap, 15, Q}), 2, params), std::invalid_argument);

    // determinism
    const ReguResult again = regu_iterate(ap, 4.0 / 3.0, params);
    CHECK(again.b == r.b);
    CHECK(again.certificate.c2 == r.certificate.c2);
}

TEST_CASE("xue_regularize degenerate sets") {
    const ElemSet one = ElemSet::of(Q, {5});
    const RegularDecomposition d = xue_regularize(one, 4, Op::add);
    CHECK(d.b == one);
    CHECK(d.c == one);
    CHECK(d.s_tau == ElemSet::of(Q, {0}));
    CHECK(d.tau == 1);
    CHECK(check_regular(d, one, 4, 2).pass());
    const RegularDecomposition m = xue_regularize(ElemSet::of(M31, {0, 5}), 4, Op::mul);
    CHECK(m.s_tau == ElemSet::of(M31, {1}));
    CHECK(m.tau == 1);
    const ElemSet three = ElemSet::of(Q, {0, 1, 5});
    CHECK(check_regular(xue_regularize(three, 4, Op::add), three, 4, default_slack(3)).pass());
    CHECK_THROWS_AS(xue_regularize(ElemSet::of(Q, {0}), 4, Op::mul), std::invalid_argument);
}

TEST_CASE("xue_regularize on families") {
    struct Case {
        FamilySpec spec;
        Op op;
    };
    FamilySpec gp{FamilyKind::gp, 64, M31};
    gp.ratio = 7;
    FamilySpec rnd{FamilyKind::random, 64, M31};
    rnd.seed = 5;
    for (const Case& c : {Case{{FamilyKind::ap, 64, Q}, Op::add}, Case{gp, Op::mul}, Case{rnd, Op::add},
                          Case{rnd, Op::mul}, Case{{FamilyKind::subgroup, 62, M31}, Op::mul}}) {
        const ElemSet a = gen_family(c.spec);
        const RegularDecomposition d = xue_regularize(a, 4, c.op);
        CHECK(d.c.is_subset_of(d.b));
        CHECK(d.b.is_subset_of(a));
        const auto r = oracle::rep(d.b, d.b, quotient_of(c.op));
        for (const auto& s : d.s_tau) {
            CHECK(r.at(s) >= d.tau);
            CHECK(r.at(s) < 2 * d.tau);
        }
        const auto report = check_regular(d, a, 4, default_slack(a.size()));
        CHECK(report.pass());
        CHECK(report.exact.at("subsum_bound") == "true");
    }
}

TEST_CASE("check_regular catches a corrupted level") {
    const ElemSet a = gen_family({FamilyKind::ap, 64, Q});
    RegularDecomposition d = xue_regularize(a, 4, Op::add);
    d.tau *= 2;
    const auto r = check_regular(d, a, 4, default_slack(64));
    CHECK(r.status == Status::fail);
    CHECK(r.exact.at("subsum_bound") == "false");
    RegularDecomposition stray = xue_regularize(a, 4, Op::add);
    CHECK_THROWS_AS(check_regular(stray, gen_family({FamilyKind::ap, 64, Q, 100}), 4, 10), std::invalid_argument);
}
