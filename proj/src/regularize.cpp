#include "sumprod/regularize.hpp"

#include "sumprod/kernel.hpp"
#include "sumprod/set_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sumprod {

namespace {

void normalize(Ratio& r) {
    if (r.den == 0) throw std::invalid_argument("ratio with zero denominator");
    const BigCount g = boost::multiprecision::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
}

constexpr double huge = std::numeric_limits<double>::max();

double safe_ratio(double num, double den) { return den > 0 ? num / den : huge; }

}  // namespace

Ratio Ratio::from_double(double x) {
    if (!std::isfinite(x) || x < 0) throw std::invalid_argument("ratio must be finite and nonnegative");
    Ratio r{0, 1};
    if (x == 0) return r;
    int e = 0;
    const double m = std::frexp(x, &e);
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
    e -= 53;
    r.num = mant;
    if (e >= 0)
        r.num <<= e;
    else
        r.den = BigCount(1) << -e;
    normalize(r);
    return r;
}

Ratio Ratio::parse(std::string_view text) {
    Ratio r;
    try {
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            r.num = parse_big_count(text.substr(0, slash));
            r.den = parse_big_count(text.substr(slash + 1));
        } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string digits(text.substr(0, dot));
            const std::string_view frac = text.substr(dot + 1);
            digits += frac;
            if (digits.empty()) throw std::invalid_argument("empty");
            r.num = parse_big_count(digits);
            r.den = big_pow(10, static_cast<unsigned>(frac.size()));
        } else {
            r.num = parse_big_count(text);
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed ratio '" + std::string(text) + "'");
    }
    normalize(r);
    return r;
}

double Ratio::to_double() const { return num.convert_to<double>() / den.convert_to<double>(); }

std::string Ratio::str() const { return den == 1 ? to_decimal(num) : to_decimal(num) + "/" + to_decimal(den); }

void PopularityParams::validate() const {
    if (!epsilon.in_open_unit()) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!theta.in_open_unit()) throw std::invalid_argument("theta must lie in (0,1)");
    if (!c1.in_open_unit()) throw std::invalid_argument("c1 must lie in (0,1)");
    if (!(drop_target > 0)) throw std::invalid_argument("drop target must be positive");
}

ElemSet popular_set(const ElemSet& a, const Ratio& epsilon, Op op) {
    if (a.empty()) return ElemSet(a.field());
    const std::uint64_t size = combine_size(a, a, op);
    const BigCount bar = epsilon.num * BigCount(a.size()) * a.size();
    const BigCount scale = epsilon.den * size;
    std::vector<Elem> out;
    stream_multiplicities(a, a, op, [&](const Elem& v, std::uint64_t c) {
        if (scale * c >= bar) out.push_back(v);
    });
    return adopt_sorted(a.field(), std::move(out));
}

std::vector<std::uint64_t> good_partner_counts(const ElemSet& a, const ElemSet& popular, Op op) {
    require_same_field(a, popular);
    const GroundField& f = a.field();
    std::vector<std::uint64_t> counts(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t n = 0;
        for (const auto& b : a) {
            if (op == Op::div && f.is_zero(b)) continue;
            if (popular.contains(apply(f, op, a[i], b))) ++n;
        }
        counts[i] = n;
    }
    return counts;
}

namespace {

ElemSet apply_rule(const ElemSet& a, const ElemSet& popular, const Ratio& theta, Op op) {
    const auto counts = good_partner_counts(a, popular, op);
    const BigCount bar = theta.num * a.size();
    std::vector<Elem> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (theta.den * counts[i] >= bar) out.push_back(a[i]);
    return adopt_sorted(a.field(), std::move(out));
}

}  // namespace

ElemSet popularity_rule(const ElemSet& a, const Ratio& epsilon, const Ratio& theta, Op op) {
    return apply_rule(a, popular_set(a, epsilon, op), theta, op);
}

bool ReguCertificate::holds() const {
    return static_cast<double>(size) >= (1 - c1) * static_cast<double>(input_size) && c2 > 0;
}

ReguResult regu_iterate(const ElemSet& a, double s, const PopularityParams& params, Op rule) {
    if (a.size() < 16) throw std::invalid_argument("regu_iterate needs |A| >= 16");
    if (!(s > 0)) throw std::invalid_argument("energy exponent must be positive");
    PopularityParams p = params;
    const double n = static_cast<double>(a.size());
    p.epsilon = Ratio::from_double(p.c1.to_double() / std::log(n));
    p.validate();

    const Op group = group_of(rule);
    const auto max_rounds = static_cast<std::size_t>(std::ceil(std::log(n)));
    // |X| >= (1 - c1)|A| exactly: |X|·den >= (den - num)·|A|.
    auto large_enough = [&](std::size_t size) { return p.c1.den * size >= (p.c1.den - p.c1.num) * a.size(); };

    ReguResult best;
    best.certificate.c2 = -1;
    std::vector<ReguRound> rounds;
    ElemSet candidate = a;
    bool reached = false;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        ElemSet popular = popular_set(candidate, p.epsilon, rule);
        ElemSet refined = apply_rule(candidate, popular, p.theta, rule);
        ReguRound r;
        r.candidate_size = candidate.size();
        r.refined_size = refined.size();
        r.energy = energy(candidate, candidate, s, group).value;
        r.refined_energy = refined.empty() ? 0 : energy(refined, refined, s, group).value;
        r.ratio = r.refined_energy / r.energy;
        rounds.push_back(r);
        reached = r.ratio >= p.drop_target;
        if (r.ratio > best.certificate.c2) {
            best.b = candidate;
            best.refined = refined;
            best.popular = std::move(popular);
            best.certificate.c2 = r.ratio;
            best.certificate.chosen_round = round;
        }
        if (reached || refined.empty() || refined == candidate || !large_enough(refined.size())) break;
        candidate = std::move(refined);
    }

    ReguCertificate& cert = best.certificate;
    cert.s = s;
    cert.rule = rule;
    cert.epsilon = p.epsilon;
    cert.c1 = p.c1.to_double();
    cert.input_size = a.size();
    cert.size = best.b.size();
    cert.refined_size = best.refined.size();
    cert.reached_target = reached && cert.chosen_round + 1 == rounds.size();
    cert.rounds = std::move(rounds);
    return best;
}

std::vector<std::uint64_t> shifted_counts(const ElemSet& s, const ElemSet& b, const ElemSet& targets, Op group) {
    require_same_field(s, b);
    require_same_field(s, targets);
    const GroundField& f = s.field();
    const bool additive = group == Op::add;
    std::vector<std::uint64_t> out(targets.size(), 0);
    const bool scan_s = s.size() <= b.size();
    const ElemSet& scanned = scan_s ? s : b;
    const ElemSet& probed = scan_s ? b : s;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        std::uint64_t n = 0;
        for (const auto& x : scanned) {
            if (!additive && f.is_zero(x)) continue;
            if (probed.contains(additive ? f.sub(targets[i], x) : f.div(targets[i], x))) ++n;
        }
        out[i] = n;
    }
    return out;
}

double default_slack(std::uint64_t n, double c) {
    const double l = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1)));
    return std::max(1.0, c * l * l * l);
}

namespace {

struct Scored {
    RegularDecomposition d;
    double score = huge;
};

long double level_product(std::uint64_t size, std::uint64_t tau, double k) {
    return static_cast<long double>(size) * std::pow(static_cast<long double>(tau), static_cast<long double>(k));
}

void fill_shift_ratios(RegularDecomposition& d, const std::vector<std::uint64_t>& counts,
                       const std::vector<bool>& keep) {
    const double denom = static_cast<double>(d.s_tau.size()) * static_cast<double>(d.tau);
    d.min_shift_ratio = huge;
    d.max_shift_ratio = 0;
    bool any = false;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (!keep[i]) continue;
        const double r = static_cast<double>(counts[i]) * static_cast<double>(d.source_size) / denom;
        d.min_shift_ratio = std::min(d.min_shift_ratio, r);
        d.max_shift_ratio = std::max(d.max_shift_ratio, r);
        any = true;
    }
    if (!any) d.min_shift_ratio = 0;
}

double score_of(const RegularDecomposition& d) {
    if (d.c.empty() || d.b.empty() || d.energy_ratio <= 0 || d.min_shift_ratio <= 0) return huge;
    const double n = static_cast<double>(d.source_size);
    return std::max({n / static_cast<double>(d.c.size()), n / static_cast<double>(d.b.size()), d.energy_ratio,
                     1 / d.energy_ratio, d.max_shift_ratio, 1 / d.min_shift_ratio});
}

}  // namespace

RegularDecomposition xue_regularize(const ElemSet& a, double k, Op op) {
    if (!(k > 0)) throw std::invalid_argument("energy exponent must be positive");
    if (op != Op::add && op != Op::mul) throw std::invalid_argument("regularize op must be add or mul");
    const ElemSet set = op == Op::mul ? a.without_zero() : a;
    if (set.empty()) throw std::invalid_argument("regularize needs a nonempty set");
    const GroundField& f = set.field();
    const std::uint64_t n = set.size();

    if (n < 4) {
        RegularDecomposition d;
        d.op = op;
        d.k = k;
        d.b = set;
        d.c = set;
        d.s_tau = adopt_sorted(f, {op == Op::add ? f.zero() : f.one()});
        d.tau = n;
        d.source_size = n;
        d.degenerate = true;
        d.energy_ratio = static_cast<double>(energy(set, set, k, op).value / level_product(1, n, k));
        const std::vector<std::uint64_t> counts = shifted_counts(d.s_tau, set, set, op);
        fill_shift_ratios(d, counts, std::vector<bool>(counts.size(), true));
        return d;
    }

    const auto log_n = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n))));
    Scored best;
    ElemSet candidate = set;
    std::size_t round = 0;
    while (round < log_n && !candidate.empty()) {
        ++round;
        const DyadicSlice slice = dyadic_extract(candidate, candidate, quotient_of(op), k);
        RegularDecomposition d;
        d.op = op;
        d.k = k;
        d.b = candidate;
        d.s_tau = slice.support;
        d.tau = slice.level;
        d.source_size = n;
        d.rounds = round;
        d.energy_ratio = static_cast<double>(static_cast<long double>(slice.energy.value) /
                                             level_product(d.s_tau.size(), d.tau, k));

        const std::vector<std::uint64_t> counts = shifted_counts(d.s_tau, candidate, candidate, op);
        // r >= |S|τ / (2|A|⌈log2|A|⌉), compared in integers.
        const u128 bar = static_cast<u128>(d.s_tau.size()) * d.tau;
        std::vector<bool> keep(counts.size());
        std::vector<Elem> kept;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            keep[i] = static_cast<u128>(counts[i]) * 2 * n * log_n >= bar;
            if (keep[i]) kept.push_back(candidate[i]);
        }
        d.c = adopt_sorted(f, std::move(kept));
        fill_shift_ratios(d, counts, keep);
        const double score = score_of(d);
        const bool settled = 2 * d.c.size() >= candidate.size();
        if (score < best.score || best.d.b.empty()) best = Scored{d, score};
        if (settled) break;

        std::vector<std::size_t> low;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (!keep[i]) low.push_back(i);
        std::stable_sort(low.begin(), low.end(), [&](std::size_t x, std::size_t y) { return counts[x] < counts[y]; });
        low.resize((low.size() + 1) / 2);
        std::vector<bool> drop(candidate.size(), false);
        for (auto i : low) drop[i] = true;
        std::vector<Elem> next;
        for (std::size_t i = 0; i < candidate.size(); ++i)
            if (!drop[i]) next.push_back(candidate[i]);
        candidate = adopt_sorted(f, std::move(next));
    }
    return best.d;
}

VerificationReport check_regular(const RegularDecomposition& d, const ElemSet& a, double k, double slack) {
    Stopwatch clock;
    const ElemSet set = d.op == Op::mul ? a.without_zero() : a;
    if (!d.c.is_subset_of(d.b) || !d.b.is_subset_of(set))
        throw std::invalid_argument("decomposition does not refine the given set");
    VerificationReport r;
    r.lemma = std::string("regular:") + std::string(op_name(d.op));
    r.inputs = {{"n", set.size()}, {"k", k}, {"op", op_name(d.op)}, {"field", a.field().name()}, {"K", slack}};
    r.slack = slack;
    const std::uint64_t n = set.size();
    if (d.b.empty() || d.c.empty() || d.s_tau.empty() || d.tau == 0) {
        r.status = Status::degenerate;
        r.notes.push_back("empty B, C or S_tau");
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    }

    // One pass over r_{B-B} gives both E_k(B) and the level property of S_τ.
    MultiplicityHistogram h;
    std::size_t s_pos = 0;
    std::uint64_t level_ok = 0;
    const auto& s = d.s_tau.elems();
    stream_multiplicities(d.b, d.b, quotient_of(d.op), [&](const Elem& v, std::uint64_t c) {
        h.add(c);
        while (s_pos < s.size() && s[s_pos] < v) ++s_pos;
        if (s_pos < s.size() && s[s_pos] == v && c >= d.tau && c < 2 * d.tau) ++level_ok;
    });
    const bool level = level_ok == s.size();
    const Moment e = moment_of(h, k, d.op);

    bool subsum = false;
    double energy_ratio = 0;
    if (e.exact) {
        const BigCount floor = BigCount(s.size()) * big_pow(d.tau, static_cast<unsigned>(k));
        subsum = *e.exact >= floor;
        energy_ratio = static_cast<double>(static_cast<long double>(e.value) / level_product(s.size(), d.tau, k));
        r.exact["level_mass"] = to_decimal(floor);
        r.exact["energy"] = to_decimal(*e.exact);
    } else {
        const long double floor = level_product(s.size(), d.tau, k);
        subsum = static_cast<long double>(e.value) * (1 + e.rel_error) >= floor;
        energy_ratio = static_cast<double>(static_cast<long double>(e.value) / floor);
        r.exact["energy"] = format_double(e.value);
    }

    RegularDecomposition m = d;
    m.source_size = n;
    const std::vector<std::uint64_t> counts = shifted_counts(d.s_tau, d.b, d.c, d.op);
    fill_shift_ratios(m, counts, std::vector<bool>(counts.size(), true));

    const double nn = static_cast<double>(n);
    const double lhs = std::max({nn / static_cast<double>(d.c.size()), nn / static_cast<double>(d.b.size()),
                                 energy_ratio, safe_ratio(slack, energy_ratio), m.max_shift_ratio,
                                 safe_ratio(1, m.min_shift_ratio)});
    r.exact["B"] = std::to_string(d.b.size());
    r.exact["C"] = std::to_string(d.c.size());
    r.exact["S_tau"] = std::to_string(s.size());
    r.exact["tau"] = std::to_string(d.tau);
    r.exact["min_shift_count"] = std::to_string(*std::min_element(counts.begin(), counts.end()));
    r.exact["max_shift_count"] = std::to_string(*std::max_element(counts.begin(), counts.end()));
    r.exact["subsum_bound"] = subsum ? "true" : "false";
    r.exact["level_property"] = level ? "true" : "false";
    r.inputs["energy_ratio"] = energy_ratio;
    r.inputs["min_shift_ratio"] = m.min_shift_ratio;
    r.inputs["max_shift_ratio"] = m.max_shift_ratio;
    r.decide(lhs, 1, slack);
    if (!level) {
        r.status = Status::fail;
        r.notes.push_back("S_tau is not a level set of B-B at tau");
    }
    if (!subsum) {
        r.status = Status::fail;
        r.notes.push_back("E_k(B) < |S_tau| tau^k");
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

}  // namespace sumprod
