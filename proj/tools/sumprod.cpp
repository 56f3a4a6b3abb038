// sumprod: command-line front end.
#include "sumprod/counting.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/families.hpp"
#include "sumprod/regularize.hpp"
#include "sumprod/set_algebra.hpp"
#include "sumprod/suite.hpp"
#include "sumprod/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace sumprod;
using nlohmann::json;

namespace {

struct Globals {
    std::string field = "prime:2147483647";
    bool json = false;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;

    GroundField ground() const { return GroundField::parse(field); }
    Budget limits() const {
        Budget b = Budget::from_env();
        if (budget) b.table_insertions = budget;
        return b;
    }
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A set argument is one of: "1,2,5", "@file", or "family:n" (ap, gp, random,
// subgroup, interval), the last seeded by --seed.
ElemSet read_set(const std::string& text, const Globals& g) {
    const GroundField f = g.ground();
    if (text.empty()) throw UsageError("empty set argument");
    if (text[0] == '@') return read_set_file(text.substr(1), f).set;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        FamilySpec spec = sweep_family(parse_family(text.substr(0, colon)), std::stoull(text.substr(colon + 1)), f, g.seed);
        return gen_family(spec);
    }
    std::string lines = text;
    for (char& c : lines)
        if (c == ',') c = '\n';
    return parse_set(lines, f).set;
}

json elements(const ElemSet& s) {
    json out = json::array();
    for (const auto& e : s) out.push_back(s.field().format(e));
    return out;
}

void print_set(const ElemSet& s, const Globals& g) {
    if (g.json)
        std::cout << json{{"field", s.field().name()}, {"size", s.size()}, {"elements", elements(s)}}.dump(2) << "\n";
    else
        std::cout << render_set(s);
}

void print_report(const VerificationReport& r, const Globals& g) {
    if (g.json) {
        std::cout << json(r).dump(2) << "\n";
        return;
    }
    std::cout << r.lemma << ": " << status_name(r.status) << "\n"
              << "  lhs " << format_double(r.lhs) << "  rhs_shape " << format_double(r.rhs_shape) << "  fitted "
              << format_double(r.fitted_constant) << "  slack " << format_double(r.slack) << "\n";
    for (const auto& [k, v] : r.exact) std::cout << "  " << k << " = " << v << "\n";
    for (const auto& c : r.constraints)
        std::cout << "  constraint " << c.id << " " << (c.satisfied ? "ok" : "VIOLATED") << " margin "
                  << format_double(c.margin) << "  " << c.description << "\n";
    for (const auto& d : r.dyadic)
        std::cout << "  dyadic " << d.name << ": |D|=" << d.support << " t=" << d.level << " M=" << d.max_multiplicity
                  << " certificate " << (d.certificate ? "holds" : "fails") << ", scaled "
                  << (d.scaled_certificate ? "holds" : "fails") << "\n";
    for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
}

void print_kv(const json& j, const Globals& g) {
    if (g.json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

Op group_op(const std::string& s) {
    const Op op = parse_op(s);
    return group_of(op);
}

std::string moment_text(const Moment& m) {
    return m.exact ? to_decimal(*m.exact) : format_double(m.value);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum-product experiments over prime fields and the rationals"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "prime:<p> or char0")->capture_default_str();
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--seed", g.seed, "Seed for random families and searches")->capture_default_str();
    app.add_option("--budget", g.budget, "Table-insertion budget (else SUMPROD_BUDGET or default)");

    int exit_code = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a family instance");
    std::string family;
    std::uint64_t n = 0;
    FamilySpec fs;
    gen->add_option("family", family, "ap, gp, random, subgroup, interval")->required();
    gen->add_option("n", n, "Size")->required();
    gen->add_option("--start", fs.start);
    gen->add_option("--step", fs.step);
    gen->add_option("--base", fs.base);
    gen->add_option("--ratio", fs.ratio);
    gen->add_option("--order", fs.order);
    gen->add_option("--range", fs.range);
    gen->callback([&] {
        fs.kind = parse_family(family);
        fs.n = n;
        fs.field = g.ground();
        fs.seed = g.seed;
        print_set(gen_family(fs), g);
    });

    // op
    auto* op = app.add_subcommand("op", "Combine two sets");
    std::string op_text, set_a, set_b;
    bool size_only = false;
    op->add_option("op", op_text, "add, sub, mul, div")->required();
    op->add_option("A", set_a)->required();
    op->add_option("B", set_b)->required();
    op->add_flag("--size", size_only, "Print only the size");
    op->callback([&] {
        const ElemSet a = read_set(set_a, g), b = read_set(set_b, g);
        const Op o = parse_op(op_text);
        if (size_only)
            print_kv({{"size", combine_size(a, b, o)}}, g);
        else
            print_set(combine(a, b, o), g);
    });

    // span
    auto* span = app.add_subcommand("span", "Iterated span kA - lA");
    unsigned k = 2, l = 0;
    span->add_option("A", set_a)->required();
    span->add_option("-k", k)->capture_default_str();
    span->add_option("-l", l)->capture_default_str();
    span->add_flag("--size", size_only, "Print only the size");
    span->callback([&] {
        const ElemSet s = iterated_span(read_set(set_a, g), {k, l}, g.limits());
        if (size_only)
            print_kv({{"size", s.size()}}, g);
        else
            print_set(s, g);
    });

    // energy
    auto* en = app.add_subcommand("energy", "k-th moment of r_{A-B} or r_{A/B}");
    double ek = 2;
    std::string group = "add";
    bool extract = false;
    en->add_option("A", set_a)->required();
    en->add_option("B", set_b, "Defaults to A");
    en->add_option("-k", ek)->capture_default_str();
    en->add_option("--op", group, "add or mul")->capture_default_str();
    en->add_flag("--extract", extract, "Also run the dyadic extraction");
    en->callback([&] {
        const ElemSet a = read_set(set_a, g);
        const ElemSet b = set_b.empty() ? a : read_set(set_b, g);
        const Op o = group_op(group);
        const Moment m = energy(a, b, ek, o);
        json out = {{"energy", moment_text(m)}, {"k", ek}, {"op", op_name(o)}, {"support", m.support},
                    {"rel_error", m.rel_error}};
        if (extract) out["dyadic"] = dyadic_extract(a, b, quotient_of(o), ek).record("D");
        print_kv(out, g);
    });

    // regularize
    auto* reg = app.add_subcommand("regularize", "Regular decomposition or popularity rounds");
    double s_exp = 0;
    reg->add_option("A", set_a)->required();
    reg->add_option("-k", ek, "Energy exponent")->capture_default_str();
    reg->add_option("--op", group)->capture_default_str();
    reg->add_option("--iterate", s_exp, "Run popularity rounds for E_s instead");
    reg->callback([&] {
        const ElemSet a = read_set(set_a, g);
        const Op o = group_op(group);
        if (s_exp > 0) {
            const ReguResult r = regu_iterate(a, s_exp, PopularityParams{}, o);
            print_kv({{"B", r.b.size()},
                      {"C", r.refined.size()},
                      {"P", r.popular.size()},
                      {"epsilon", r.certificate.epsilon.str()},
                      {"c2", r.certificate.c2},
                      {"rounds", r.certificate.rounds.size()},
                      {"reached_target", r.certificate.reached_target},
                      {"certificate", r.certificate.holds()}},
                     g);
            return;
        }
        const ElemSet set = o == Op::mul ? a.without_zero() : a;
        const RegularDecomposition d = xue_regularize(set, ek, o);
        const VerificationReport r = check_regular(d, set, ek, default_slack(set.size()));
        print_report(r, g);
        if (r.status == Status::fail) exit_code = 1;
    });

    // count
    auto* count = app.add_subcommand("count", "Exact solution counts");
    std::string equation;
    std::vector<std::string> sets;
    int ck = 4;
    count->add_option("equation", equation, "kmps (X Y Z), bilinear (A B C D), taut (B D P), energy (A)")->required();
    count->add_option("sets", sets)->required();
    count->add_option("--op", group)->capture_default_str();
    count->add_option("-k", ck, "2 or 4, for energy")->capture_default_str();
    count->callback([&] {
        std::vector<ElemSet> in;
        for (const auto& s : sets) in.push_back(read_set(s, g));
        auto need = [&](std::size_t m) {
            if (in.size() != m) throw UsageError(equation + " takes " + std::to_string(m) + " sets");
        };
        BigCount c;
        if (equation == "kmps") {
            need(3);
            c = f_collision_count(in[0], in[1], in[2], g.limits());
        } else if (equation == "bilinear") {
            need(4);
            c = bilinear_count(in[0], in[1], in[2], in[3], g.limits());
        } else if (equation == "taut") {
            need(3);
            c = tautological_count(in[0], in[1], in[2]);
        } else if (equation == "energy") {
            need(1);
            c = count_energy_equiv(in[0], group_op(group), ck, g.limits());
        } else {
            throw UsageError("unknown equation " + equation);
        }
        std::vector<std::uint64_t> sizes;
        for (const auto& s : in) sizes.push_back(s.size());
        print_kv({{"equation", equation}, {"sizes", sizes}, {"count", to_decimal(c)}}, g);
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Check one inequality on concrete sets");
    std::string lemma, variant = "E4+E2x";
    VerifyConfig vc;
    ver->add_option("lemma",
                    lemma,
                    "pluennecke, cauchy_schwarz, kmps, sdz, mixed, rss, regular, main, sweep, constraints")
        ->required();
    ver->add_option("sets", sets);
    ver->add_option("-k", k)->capture_default_str();
    ver->add_option("-l", l)->capture_default_str();
    ver->add_option("--op", group)->capture_default_str();
    ver->add_option("--variant", variant, "mixed: E4+E2x, E4xE2+, E4xE4+, E4+E4x; rss: additive, multiplicative");
    ver->add_option("--slack-c", vc.slack_c)->capture_default_str();
    ver->callback([&] {
        vc.budget = g.limits();
        std::vector<ElemSet> in;
        for (const auto& s : sets) in.push_back(read_set(s, g));
        auto need = [&](std::size_t m) {
            if (in.size() != m) throw UsageError(lemma + " takes " + std::to_string(m) + " sets");
        };
        std::vector<VerificationReport> out;
        if (lemma == "pluennecke") {
            need(1);
            out.push_back(check_pluennecke(in[0], k, l, vc.budget));
        } else if (lemma == "cauchy_schwarz") {
            need(1);
            out.push_back(cauchy_schwarz_check(in[0], group_op(group)));
        } else if (lemma == "kmps") {
            need(3);
            out.push_back(check_kmps(in[0], in[1], in[2], vc));
        } else if (lemma == "sdz") {
            need(4);
            out.push_back(check_sdz(in[0], in[1], in[2], in[3], vc));
        } else if (lemma == "mixed") {
            need(2);
            out.push_back(check_mixed_energy(in[0], in[1], parse_mixed(variant), vc));
        } else if (lemma == "rss") {
            need(1);
            if (variant != "additive" && variant != "multiplicative") variant = "additive";
            RssReports r = check_rss_proposition(in[0], variant == "multiplicative", vc);
            out.push_back(std::move(r.count));
            out.push_back(std::move(r.inequality));
        } else if (lemma == "regular") {
            need(1);
            const Op o = group_op(group);
            const ElemSet set = o == Op::mul ? in[0].without_zero() : in[0];
            out.push_back(check_regular(xue_regularize(set, 4, o), set, 4, default_slack(set.size(), vc.slack_c)));
        } else if (lemma == "main") {
            need(1);
            out.push_back(main_probe(in[0], vc.main_floor));
        } else if (lemma == "sweep") {
            need(0);
            ProbeSweep sweep;
            sweep.field = g.ground();
            sweep.seed = g.seed;
            out.push_back(main_theorem_probe(sweep).summary);
        } else if (lemma == "constraints") {
            need(1);
            VerificationReport r;
            r.lemma = "constraints";
            r.constraints = p_constraint_check(in[0], {}, vc.budget);
            for (const auto& c : r.constraints)
                if (!c.satisfied) r.status = Status::constraint_failed;
            out.push_back(r);
        } else {
            throw UsageError("unknown lemma " + lemma);
        }
        if (g.json && out.size() > 1)
            std::cout << json(out).dump(2) << "\n";
        else
            for (const auto& r : out) print_report(r, g);
        for (const auto& r : out)
            if (r.status == Status::fail) exit_code = 1;
    });

    // search
    auto* search = app.add_subcommand("search", "Annealing search for a small sum-product ratio");
    long long steps = 10000;
    search->add_option("A", set_a, "Starting set")->required();
    search->add_option("--steps", steps)->capture_default_str();
    search->callback([&] {
        const SearchState st = local_search_min_ratio(read_set(set_a, g), steps, g.seed);
        json out = {{"initial_ratio", st.initial_ratio}, {"best_ratio", st.best_ratio}, {"steps", st.steps},
                    {"accepted", st.accepted},           {"rng_seed", st.rng_seed}};
        if (g.json) out["best"] = elements(st.best);
        print_kv(out, g);
        if (!g.json) std::cout << render_set(st.best);
    });

    // suite
    auto* suite = app.add_subcommand("suite", "Run an experiment config");
    std::string config_path, output;
    unsigned workers = 0;
    suite->add_option("config", config_path, "JSON config")->required();
    suite->add_option("--output", output, "Override the output directory");
    suite->add_option("--workers", workers, "Override the worker count");
    suite->callback([&] {
        ExperimentConfig cfg;
        try {
            cfg = load_config(config_path);
            if (!output.empty()) cfg.output = output;
            if (workers) cfg.workers = workers;
            cfg.budget = Budget::from_env(cfg.budget);
            if (g.budget) cfg.budget.table_insertions = g.budget;
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const RunManifest m = run_suite(cfg);
        print_kv({{"cells", m.cells.size()},
                  {"counts", m.counts},
                  {"digest", m.digest},
                  {"output", cfg.output.string()},
                  {"exit_code", m.exit_code}},
                 g);
        exit_code = m.exit_code;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
