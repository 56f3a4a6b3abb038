#include "doctest.h"
#include "oracles.hpp"

#include "sumprod/verify.hpp"

#include <cmath>

using namespace sumprod;

namespace {
const GroundField Q = GroundField::char_zero();
const GroundField M31 = GroundField::prime(2147483647);

ElemSet range_set(GroundField f, long long lo, long long hi) {
    std::vector<long long> v;
    for (long long x = lo; x <= hi; ++x) v.push_back(x);
    return ElemSet::of(f, v);
}
}  // namespace

TEST_CASE("pluennecke") {
    const ElemSet a = ElemSet::of(Q, {0, 1});
    const auto r = check_pluennecke(a, 2, 1, Budget{});
    CHECK(r.status == Status::pass);
    CHECK(r.lhs == 4);
    CHECK(r.rhs_shape == doctest::Approx(27.0 / 4));
    CHECK(check_pluennecke(a, 1, 0, Budget{}).status == Status::pass);
    std::mt19937_64 rng(5);
    const auto rnd = check_pluennecke(oracle::random_set(Q, 32, 1000, rng), 2, 2, Budget{});
    CHECK(rnd.status == Status::pass);
}

TEST_CASE("kmps") {
    VerifyConfig cfg;
    const ElemSet s = ElemSet::of(M31, {1, 2});
    const auto r = check_kmps(s, s, s, cfg);
    CHECK(r.exact.at("count") == "14");
    CHECK(r.rhs_shape == doctest::Approx(std::pow(8.0, 1.5) + 16));
    CHECK(r.fitted_constant == doctest::Approx(0.3625).epsilon(0.01));
    CHECK(r.status == Status::pass);
    const ElemSet one = ElemSet::of(M31, {1});
    CHECK(check_kmps(one, one, one, cfg).fitted_constant == doctest::Approx(0.5));
    const GroundField f101 = GroundField::prime(101);
    const ElemSet big = range_set(f101, 1, 40);
    CHECK(check_kmps(big, big, big, cfg).status == Status::constraint_failed);
}

TEST_CASE("sdz") {
    VerifyConfig cfg;
    const ElemSet one = ElemSet::of(Q, {1});
    const auto t = check_sdz(one, one, one, ElemSet::of(Q, {0}), cfg);
    CHECK(t.lhs == 1);
    CHECK(t.fitted_constant == doctest::Approx(1.0 / 3));
    const ElemSet ab = ElemSet::of(M31, {1, 2});
    const auto r = check_sdz(ab, ab, range_set(M31, 1, 5), ElemSet::of(M31, {0, 1}), cfg);
    CHECK(r.exact.at("count") == "8");
    CHECK(r.rhs_shape == doctest::Approx(std::pow(20.0, 0.75) * std::sqrt(2.0) + 14));
    CHECK(r.fitted_constant == doctest::Approx(0.292).epsilon(0.01));
    CHECK(r.status == Status::pass);
}

TEST_CASE("mixed energy") {
    VerifyConfig cfg;
    const ElemSet one = ElemSet::of(Q, {1});
    for (auto v : {MixedVariant::e4add_e2mul, MixedVariant::e4mul_e2add, MixedVariant::e4mul_e4add,
                   MixedVariant::e4add_e4mul}) {
        const auto r = check_mixed_energy(one, one, v, cfg);
        CHECK(r.lhs == 1);
        CHECK(r.rhs_shape == 1);
        CHECK(r.status == Status::pass);
        CHECK(parse_mixed(mixed_name(v)) == v);
    }
    const auto ap = check_mixed_energy(range_set(Q, 0, 63), range_set(Q, 0, 15), MixedVariant::e4add_e2mul, cfg);
    CHECK(ap.status == Status::pass);
    CHECK(ap.slack == doctest::Approx(64.0 * 216));

    const GroundField f = GroundField::prime(2147483137);
    FamilySpec spec{FamilyKind::subgroup, 64, f};
    spec.order = 64;
    const ElemSet h = gen_family(spec);
    REQUIRE(h.size() == 64);
    CHECK(check_mixed_energy(h, h, MixedVariant::e4mul_e2add, cfg).status == Status::pass);
}

TEST_CASE("rss pipeline") {
    VerifyConfig cfg;
    CHECK_THROWS_AS(check_rss_proposition(range_set(Q, 1, 15), false, cfg), std::invalid_argument);
    const auto add = check_rss_proposition(range_set(Q, 0, 63), false, cfg);
    CHECK(add.count.status == Status::pass);
    CHECK(add.inequality.status == Status::pass);
    std::vector<long long> gp;
    for (int i = 0; i < 40; ++i) gp.push_back(1LL << i);
    const auto mul = check_rss_proposition(ElemSet::of(Q, gp), true, cfg);
    CHECK(mul.count.status == Status::pass);
    CHECK(mul.inequality.status == Status::pass);
}

TEST_CASE("p-constraints") {
    const GroundField f101 = GroundField::prime(101);
    const ElemSet a = range_set(f101, 1, 64);
    ConstraintAux aux;
    aux.f1 = a;
    auto checks = p_constraint_check(a, aux, Budget{});
    bool found = false;
    for (const auto& c : checks)
        if (c.id == "iii") {
            found = true;
            CHECK_FALSE(c.satisfied);
        }
    CHECK(found);
    for (const auto& c : p_constraint_check(range_set(Q, 1, 64), aux, Budget{})) CHECK(c.satisfied);
    const ElemSet ap = range_set(M31, 1, 16);
    ConstraintAux small;
    small.e1 = small.e2 = small.f1 = small.f2 = ap;
    for (const auto& c : p_constraint_check(ap, small, Budget{})) CHECK(c.satisfied);
}

TEST_CASE("main probe") {
    const auto r = main_probe(range_set(Q, 1, 8), 0.25);
    CHECK(r.inputs.at("ratio").get<double>() == doctest::Approx(30 / std::pow(8.0, 1.25)));
    CHECK(r.inputs.at("ratio").get<double>() == doctest::Approx(2.230).epsilon(0.001));
    CHECK(main_probe(ElemSet::of(Q, {1, 2}), 0.25).inputs.at("ratio").get<double>() ==
          doctest::Approx(1.261).epsilon(0.001));
    CHECK(main_probe(ElemSet::of(Q, {5}), 0.25).status == Status::degenerate);
    ProbeSweep sweep;
    sweep.sizes = {16, 64, 256};
    const auto s = main_theorem_probe(sweep);
    CHECK(s.cells.size() == 12);
    CHECK(s.summary.status == Status::pass);
    CHECK(s.summary.inputs.at("min_ratio").get<double>() >= 0.25);
}
