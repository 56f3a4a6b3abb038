#include "sumprod/verify.hpp"

#include "sumprod/counting.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/set_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sumprod {

namespace {

using boost::multiprecision::pow;

long double as_real(const BigCount& x) { return x.convert_to<long double>(); }

ConstraintCheck constraint(std::string id, std::string description, const BigCount& product, const BigCount& budget,
                           unsigned headroom = 4) {
    ConstraintCheck c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.product = product;
    c.budget = budget;
    c.satisfied = product * headroom <= budget;
    c.margin = product > 0 ? static_cast<double>(as_real(budget) / as_real(product)) : std::numeric_limits<double>::max();
    return c;
}

BigCount square(std::uint64_t x) { return BigCount(x) * x; }

void require_nonempty(std::initializer_list<const ElemSet*> sets) {
    for (const ElemSet* s : sets)
        if (s->empty()) throw std::invalid_argument("verification needs nonempty sets");
}

std::string sizes_note(std::initializer_list<std::size_t> sizes) {
    std::string out;
    for (auto s : sizes) out += (out.empty() ? "" : "x") + std::to_string(s);
    return out;
}

nlohmann::json field_inputs(const ElemSet& a) { return {{"field", a.field().name()}, {"p", a.field().modulus()}}; }

}  // namespace

VerificationReport check_pluennecke(const ElemSet& a, unsigned k, unsigned l, const Budget& budget) {
    Stopwatch clock;
    require_nonempty({&a});
    if (k + l == 0) throw std::invalid_argument("pluennecke needs k + l >= 1");
    const ElemSet span = iterated_span(a, {k, l}, budget);
    const std::uint64_t doubling = combine_size(a, a, Op::add);
    const unsigned m = k + l;
    const BigCount lhs = BigCount(span.size()) * pow(BigCount(a.size()), m - 1);
    const BigCount rhs = pow(BigCount(doubling), m);
    VerificationReport r;
    r.lemma = "pluennecke";
    r.inputs = field_inputs(a);
    r.inputs["n"] = a.size();
    r.inputs["k"] = k;
    r.inputs["l"] = l;
    r.exact = {{"span", std::to_string(span.size())}, {"sumset", std::to_string(doubling)},
               {"span_times_n_pow", to_decimal(lhs)}, {"sumset_pow", to_decimal(rhs)}};
    r.decide(static_cast<double>(span.size()),
             static_cast<double>(as_real(rhs) / as_real(pow(BigCount(a.size()), m))) * static_cast<double>(a.size()), 1);
    r.status = lhs <= rhs ? Status::pass : Status::fail;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport check_kmps(const ElemSet& x, const ElemSet& y, const ElemSet& z, const VerifyConfig& cfg) {
    Stopwatch clock;
    require_nonempty({&x, &y, &z});
    VerificationReport r;
    r.lemma = "kmps";
    r.inputs = field_inputs(x);
    r.inputs["sizes"] = {x.size(), y.size(), z.size()};
    const std::uint64_t n = x.size() * y.size() * z.size();
    if (x.field().is_prime()) {
        r.constraints.push_back(constraint("kmps", "|X||Y||Z| << p^2", BigCount(n), square(x.field().modulus())));
        if (!r.constraints.back().satisfied) {
            r.status = Status::constraint_failed;
            r.slack = cfg.kmps_ceiling;
            r.notes.push_back("|X||Y||Z| exceeds p^2/4 for " + sizes_note({x.size(), y.size(), z.size()}));
            r.elapsed_ms = clock.elapsed_ms();
            return r;
        }
    }
    const BigCount count = f_collision_count(x, y, z, cfg.budget);
    const double nn = static_cast<double>(n);
    const double shape =
        std::pow(nn, 1.5) + static_cast<double>(std::max<std::uint64_t>(x.size(), std::min(y.size(), z.size()))) * nn;
    r.exact = {{"count", to_decimal(count)}, {"diagonal", std::to_string(n)}};
    r.decide(to_double(count), shape, cfg.kmps_ceiling);
    if (count < n) {
        r.status = Status::fail;
        r.notes.push_back("count below the diagonal");
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport check_sdz(const ElemSet& a, const ElemSet& b, const ElemSet& c, const ElemSet& d,
                             const VerifyConfig& cfg) {
    Stopwatch clock;
    require_nonempty({&a, &b, &c, &d});
    VerificationReport r;
    r.lemma = "sdz";
    r.inputs = field_inputs(a);
    r.inputs["sizes"] = {a.size(), b.size(), c.size(), d.size()};
    if (a.field().is_prime()) {
        const BigCount product = BigCount(a.size()) * b.size() * c.size() * square(d.size());
        r.constraints.push_back(constraint("sdz", "|A||B||C||D|^2 << p^4 (p^4/16)", product,
                                           pow(BigCount(a.field().modulus()), 4), 16));
        if (!r.constraints.back().satisfied) {
            r.status = Status::constraint_failed;
            r.slack = cfg.sdz_ceiling;
            r.notes.push_back("|A||B||C||D|^2 exceeds p^4/16");
            r.elapsed_ms = clock.elapsed_ms();
            return r;
        }
    }
    const BigCount count = bilinear_count(a, b, c, d, cfg.budget);
    const double abc = static_cast<double>(a.size() * b.size() * c.size());
    const double shape = std::pow(abc, 0.75) * std::sqrt(static_cast<double>(d.size())) +
                         static_cast<double>(a.size() * d.size()) + static_cast<double>(b.size() * c.size());
    r.exact = {{"count", to_decimal(count)}};
    r.decide(to_double(count), shape, cfg.sdz_ceiling);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

std::string_view mixed_name(MixedVariant v) noexcept {
    switch (v) {
        case MixedVariant::e4add_e2mul: return "E4+E2x";
        case MixedVariant::e4mul_e2add: return "E4xE2+";
        case MixedVariant::e4mul_e4add: return "E4xE4+";
        case MixedVariant::e4add_e4mul: return "E4+E4x";
    }
    return "?";
}

MixedVariant parse_mixed(std::string_view text) {
    for (auto v : {MixedVariant::e4add_e2mul, MixedVariant::e4mul_e2add, MixedVariant::e4mul_e4add,
                   MixedVariant::e4add_e4mul})
        if (mixed_name(v) == text) return v;
    throw std::invalid_argument("unknown mixed-energy variant '" + std::string(text) + "'");
}

VerificationReport check_mixed_energy(const ElemSet& a, const ElemSet& u, MixedVariant variant, const VerifyConfig& cfg) {
    Stopwatch clock;
    if (!(a.field() == u.field())) throw std::invalid_argument("sets live in different fields");
    const bool reg_additive = variant == MixedVariant::e4add_e2mul || variant == MixedVariant::e4add_e4mul;
    const bool fourth = variant == MixedVariant::e4mul_e4add || variant == MixedVariant::e4add_e4mul;
    const Op reg_op = reg_additive ? Op::add : Op::mul;
    const Op cross_op = reg_additive ? Op::mul : Op::add;

    VerificationReport r;
    r.lemma = std::string("mixed:") + std::string(mixed_name(variant));
    r.inputs = field_inputs(a);
    const ElemSet set = a.without_zero();
    const std::uint64_t n = set.size();
    r.inputs["n"] = n;
    r.inputs["u"] = u.size();
    const double slack = default_slack(a.size(), cfg.slack_c);
    r.slack = slack;
    const ElemSet u_used = cross_op == Op::mul ? u.without_zero() : u;
    if (set.empty() || u_used.empty()) {
        r.status = Status::degenerate;
        r.notes.push_back("A or U is empty after removing 0");
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    }

    if (a.field().is_prime()) {
        const BigCount p = a.field().modulus();
        switch (variant) {
            case MixedVariant::e4add_e2mul:
                r.constraints.push_back(constraint("u", "|U||A||A-A| << p^2",
                                                   BigCount(u.size()) * n * combine_size(set, set, Op::sub), p * p));
                break;
            case MixedVariant::e4mul_e2add:
                r.constraints.push_back(constraint("u", "|U||A||A/A| << p^2",
                                                   BigCount(u.size()) * n * combine_size(set, set, Op::div), p * p));
                break;
            case MixedVariant::e4mul_e4add:
                r.constraints.push_back(constraint("u", "|A/A||A||A-U||U|^2 << p^4",
                                                   BigCount(combine_size(set, set, Op::div)) * n *
                                                       combine_size(set, u, Op::sub) * square(u.size()),
                                                   pow(p, 4)));
                break;
            case MixedVariant::e4add_e4mul:
                r.constraints.push_back(constraint("u", "|A-A||A||A/U||U|^2 << p^4",
                                                   BigCount(combine_size(set, set, Op::sub)) * n *
                                                       combine_size(set, u_used, Op::div) * square(u.size()),
                                                   pow(p, 4)));
                break;
        }
        if (!r.constraints.back().satisfied) {
            r.status = Status::constraint_failed;
            r.notes.push_back("p-constraint violated; lemma not tested");
            r.elapsed_ms = clock.elapsed_ms();
            return r;
        }
    }

    const RegularDecomposition d = xue_regularize(set, 4, reg_op);
    const VerificationReport regular = check_regular(d, set, 4, slack);
    r.notes.push_back(std::string("regularization ") + std::string(status_name(regular.status)) + ", fitted " +
                      format_double(regular.lhs));
    r.dyadic.push_back(dyadic_extract(d.b, d.b, quotient_of(reg_op), 4).record("S_tau"));

    const BigCount e_b = *energy(d.b, d.b, 4, reg_op).exact;
    const BigCount e_cu = *energy(d.c, u_used, fourth ? 4 : 2, cross_op).exact;
    const BigCount lhs = fourth ? BigCount(e_b * e_cu) : BigCount(e_b * e_cu * e_cu);
    const BigCount rhs = pow(BigCount(n), 7) * pow(BigCount(u.size()), fourth ? 2 : 3);
    r.exact = {{"energy_B", to_decimal(e_b)}, {"energy_CU", to_decimal(e_cu)}, {"lhs", to_decimal(lhs)},
               {"rhs", to_decimal(rhs)},      {"B", std::to_string(d.b.size())}, {"C", std::to_string(d.c.size())}};
    r.decide(to_double(lhs), to_double(rhs), slack);
    r.fitted_constant = static_cast<double>(as_real(lhs) / as_real(rhs));
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

std::vector<ConstraintCheck> p_constraint_check(const ElemSet& a, const ConstraintAux& aux, const Budget& budget) {
    struct Item {
        const char* id;
        const char* description;
        bool present;
    };
    const Item items[] = {
        {"i", "|E1|^2|A||A/A||A-E1| << p^4", aux.e1.has_value()},
        {"ii", "|E2|^2|A||A-A||A/E2| << p^4", aux.e2.has_value()},
        {"iii", "|F1||A||A-A| << p^2", aux.f1.has_value()},
        {"iv", "|F2||A||A/A| << p^2", aux.f2.has_value()},
        {"pr-sum", "|A+A|^10|AA|^2 << |A|^7 p^4", true},
        {"pr-product", "|A+A|^2|AA|^2 << |A| p^2", true},
    };
    std::vector<ConstraintCheck> out;
    if (!a.field().is_prime()) {
        for (const auto& it : items)
            if (it.present) out.push_back(constraint(it.id, std::string(it.description) + " (characteristic zero)", 0, 0));
        return out;
    }
    const BigCount p = a.field().modulus();
    const BigCount p2 = p * p;
    const BigCount p4 = p2 * p2;
    const BigCount n = a.size();
    const std::uint64_t diff = combine_size(a, a, Op::sub);
    const std::uint64_t ratio = combine_size(a, a, Op::div);
    const BigCount sum = combine_size(a, a, Op::add);
    const BigCount prod = combine_size(a, a, Op::mul);
    auto within = [&](const ElemSet& s) {
        return static_cast<unsigned __int128>(a.size()) * s.size() <= budget.table_insertions;
    };
    if (aux.e1 && within(*aux.e1))
        out.push_back(constraint(items[0].id, items[0].description,
                                 square(aux.e1->size()) * n * ratio * combine_size(a, *aux.e1, Op::sub), p4));
    if (aux.e2 && within(*aux.e2))
        out.push_back(constraint(items[1].id, items[1].description,
                                 square(aux.e2->size()) * n * diff * combine_size(a, *aux.e2, Op::div), p4));
    if (aux.f1) out.push_back(constraint(items[2].id, items[2].description, BigCount(aux.f1->size()) * n * diff, p2));
    if (aux.f2) out.push_back(constraint(items[3].id, items[3].description, BigCount(aux.f2->size()) * n * ratio, p2));
    out.push_back(constraint(items[4].id, items[4].description, pow(sum, 10) * pow(prod, 2), pow(n, 7) * p4));
    out.push_back(constraint(items[5].id, items[5].description, pow(sum, 2) * pow(prod, 2), n * p2));
    return out;
}

RssReports check_rss_proposition(const ElemSet& a, bool multiplicative, const VerifyConfig& cfg) {
    Stopwatch clock;
    const ElemSet set = multiplicative ? a.without_zero() : a;
    if (set.size() < 16) throw std::invalid_argument("proposition pipeline needs |A| >= 16");
    const Op group = multiplicative ? Op::mul : Op::add;
    const Op quot = quotient_of(group);
    const Op rule = cfg.popular_differences ? quot : group;
    const double s = 4.0 / 3.0;
    const std::uint64_t n = set.size();
    const double slack = default_slack(a.size(), cfg.slack_c);
    const std::string tag = multiplicative ? "multiplicative" : "additive";

    RssReports out;
    VerificationReport& cnt = out.count;
    VerificationReport& ineq = out.inequality;
    cnt.lemma = "rss-count:" + tag;
    ineq.lemma = "rss:" + tag;
    nlohmann::json inputs = field_inputs(a);
    inputs["n"] = n;
    inputs["rule"] = cfg.popular_differences ? "popular-differences" : "popular-sums";
    cnt.inputs = ineq.inputs = inputs;
    cnt.slack = 1;
    ineq.slack = slack;

    const ReguResult regu = regu_iterate(set, s, cfg.popularity, rule);
    const ElemSet& b = regu.b;
    const ElemSet& c = regu.refined;
    for (auto* rep : {&cnt, &ineq}) {
        rep->exact["B"] = std::to_string(b.size());
        rep->exact["C"] = std::to_string(c.size());
        rep->exact["P"] = std::to_string(regu.popular.size());
        rep->inputs["epsilon"] = regu.certificate.epsilon.str();
        rep->inputs["c2"] = regu.certificate.c2;
        rep->notes.push_back("D from E_4/3(C), F from E_4/3(B), E from E(A,F)");
    }
    if (c.empty()) {
        cnt.status = ineq.status = Status::degenerate;
        cnt.notes.push_back("refinement C is empty");
        ineq.notes.push_back("refinement C is empty");
        cnt.elapsed_ms = ineq.elapsed_ms = clock.elapsed_ms();
        return out;
    }

    // Clause (a): pairs (a,b) ∈ C² with a⊖b ∈ D, witnesses in B, popular set P_B.
    const DyadicSlice dslice = dyadic_extract(c, c, quot, s);
    const DyadicRecord drec = dslice.record("D");
    cnt.dyadic.push_back(drec);
    ineq.dyadic.push_back(drec);
    const BigCount solutions = tautological_count(c, b, dslice.support, regu.popular, group);
    const Ratio& theta = cfg.popularity.theta;
    // ⌈θ|B|⌉
    const BigCount good = (theta.num * b.size() + theta.den - 1) / theta.den;
    const BigCount pairs_floor = BigCount(dslice.support.size()) * dslice.level;
    const BigCount stated = pairs_floor * good * good;
    const BigCount overlap = 2 * good > b.size() ? BigCount(2 * good - b.size()) : BigCount(0);
    const BigCount forced = pairs_floor * overlap * overlap;
    cnt.exact["solutions"] = to_decimal(solutions);
    cnt.exact["lower_bound"] = to_decimal(stated);
    cnt.exact["forced_bound"] = to_decimal(forced);
    cnt.exact["D"] = std::to_string(dslice.support.size());
    cnt.exact["t"] = std::to_string(dslice.level);
    cnt.decide(to_double(stated), to_double(solutions), 1);
    cnt.status = stated <= solutions ? Status::pass : Status::fail;
    if (forced > solutions) cnt.notes.push_back("forced pairwise bound violated");
    cnt.elapsed_ms = clock.elapsed_ms();

    // Clause (b).
    const DyadicSlice fslice = dyadic_extract(b, b, quot, s);
    ineq.dyadic.push_back(fslice.record("F"));
    out.f_set = fslice.support;
    ineq.exact["F"] = std::to_string(fslice.support.size());
    ineq.exact["nu"] = std::to_string(fslice.level);
    auto over_budget = [&](std::size_t m) {
        return static_cast<unsigned __int128>(n) * m > cfg.budget.table_insertions;
    };
    if (over_budget(fslice.support.size())) {
        ineq.status = Status::skipped;
        ineq.notes.push_back("|A||F| exceeds the table budget");
        ineq.elapsed_ms = clock.elapsed_ms();
        return out;
    }
    const DyadicSlice eslice = dyadic_extract(set, fslice.support, quot, 2);
    ineq.dyadic.push_back(eslice.record("E"));
    out.e_set = eslice.support;
    ineq.exact["E"] = std::to_string(eslice.support.size());
    ineq.exact["mu"] = std::to_string(eslice.level);
    if (over_budget(eslice.support.size())) {
        ineq.status = Status::skipped;
        ineq.notes.push_back("|A||E| exceeds the table budget");
        ineq.elapsed_ms = clock.elapsed_ms();
        return out;
    }

    if (a.field().is_prime()) {
        ConstraintAux aux;
        if (multiplicative) {
            aux.e2 = eslice.support;
            aux.f2 = fslice.support;
        } else {
            aux.e1 = eslice.support;
            aux.f1 = fslice.support;
        }
        ineq.constraints = p_constraint_check(set, aux, cfg.budget);
        for (const auto& ck : ineq.constraints) {
            const bool gating = ck.id == "i" || ck.id == "ii" || ck.id == "iii" || ck.id == "iv";
            if (gating && !ck.satisfied) {
                ineq.status = Status::constraint_failed;
                ineq.notes.push_back("constraint (" + ck.id + ") violated; inequality not tested");
            }
        }
        if (ineq.status == Status::constraint_failed) {
            ineq.elapsed_ms = clock.elapsed_ms();
            return out;
        }
    }

    const long double e43 = fslice.energy.value;
    const long double lhs = e43 * e43 * e43;
    const BigCount sumset = combine_size(set, set, group);
    const BigCount e4 = *energy(set, set, 4, group).exact;
    const BigCount e4e = *energy(set, eslice.support, 4, group).exact;
    const long double mu = static_cast<long double>(eslice.level);
    const long double nu = static_cast<long double>(fslice.level);
    const long double rhs = as_real(pow(sumset, 8)) * as_real(e4) * as_real(e4) * as_real(e4e) * std::pow(mu, 4) *
                            std::pow(nu, 4) / std::pow(static_cast<long double>(n), 24);
    ineq.exact["sumset"] = to_decimal(sumset);
    ineq.exact["E4_A"] = to_decimal(e4);
    ineq.exact["E4_AE"] = to_decimal(e4e);
    ineq.exact["E43_B"] = format_double(static_cast<double>(e43));
    ineq.decide(static_cast<double>(lhs), static_cast<double>(rhs), slack);
    ineq.fitted_constant = static_cast<double>(lhs / rhs);
    ineq.elapsed_ms = clock.elapsed_ms();
    return out;
}

VerificationReport main_probe(const ElemSet& a, double floor) {
    Stopwatch clock;
    VerificationReport r;
    r.lemma = "main";
    r.inputs = field_inputs(a);
    const ElemSet set = a.without_zero();
    const std::uint64_t n = set.size();
    r.inputs["n"] = n;
    r.slack = 1 / floor;
    if (n < 2) {
        r.status = Status::degenerate;
        r.notes.push_back("fewer than two nonzero elements");
        return r;
    }
    if (a.field().is_prime() && BigCount(4) * n * n > a.field().modulus()) {
        r.status = Status::skipped;
        r.notes.push_back("|A| > sqrt(p)/2; hypothesis not met");
        return r;
    }
    std::uint64_t best = ~std::uint64_t{0};
    for (Op addop : {Op::add, Op::sub})
        for (Op mulop : {Op::mul, Op::div}) {
            const SumProductSizes s = sum_product_sizes(set, addop, mulop);
            const std::string key = std::string(op_name(addop)) + "/" + std::string(op_name(mulop));
            r.exact[key] = std::to_string(std::max(s.additive, s.multiplicative));
            best = std::min(best, std::max(s.additive, s.multiplicative));
        }
    const double lhs = std::pow(static_cast<double>(n), 1.25);
    r.decide(lhs, static_cast<double>(best), 1 / floor);
    r.inputs["ratio"] = static_cast<double>(best) / lhs;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

FamilySpec sweep_family(FamilyKind kind, std::uint64_t n, const GroundField& field, std::uint64_t seed) {
    FamilySpec s{kind, n, field};
    s.start = 1;
    s.step = 1;
    s.base = 1;
    s.ratio = field.is_prime() ? 7 : 2;
    s.seed = seed;
    if (kind == FamilyKind::subgroup) {
        if (!field.is_prime()) throw std::invalid_argument("subgroup family needs a prime field");
        s.n = s.order = largest_subgroup_order(field.modulus(), n);
    }
    return s;
}

ProbeSummary main_theorem_probe(const ProbeSweep& sweep) {
    Stopwatch clock;
    ProbeSummary out;
    VerificationReport& sum = out.summary;
    sum.lemma = "main-sweep";
    sum.inputs = {{"field", sweep.field.name()}, {"sizes", sweep.sizes}, {"floor", sweep.floor}};
    double min_ratio = std::numeric_limits<double>::max();
    const VerificationReport* worst = nullptr;
    for (FamilyKind kind : sweep.families)
        for (std::uint64_t n : sweep.sizes) {
            VerificationReport cell;
            try {
                cell = main_probe(gen_family(sweep_family(kind, n, sweep.field, sweep.seed)), sweep.floor);
            } catch (const std::invalid_argument& e) {
                cell.lemma = "main";
                cell.status = Status::skipped;
                cell.notes.push_back(e.what());
            }
            cell.inputs["family"] = family_name(kind);
            out.cells.push_back(std::move(cell));
        }
    for (const auto& cell : out.cells) {
        if (cell.status != Status::pass && cell.status != Status::fail) continue;
        const double ratio = cell.inputs.at("ratio").get<double>();
        if (ratio < min_ratio) {
            min_ratio = ratio;
            worst = &cell;
        }
    }
    if (!worst) {
        sum.status = Status::skipped;
        sum.notes.push_back("no probe satisfied the hypothesis");
    } else {
        sum.decide(worst->lhs, worst->rhs_shape, 1 / sweep.floor);
        sum.inputs["min_ratio"] = min_ratio;
        sum.inputs["worst_family"] = worst->inputs.at("family");
        sum.inputs["worst_n"] = worst->inputs.at("n");
    }
    sum.elapsed_ms = clock.elapsed_ms();
    return out;
}

}  // namespace sumprod
