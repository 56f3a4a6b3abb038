#include "sumprod/suite.hpp"

#include "sumprod/energy.hpp"
#include "sumprod/regularize.hpp"
#include "sumprod/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sumprod {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

struct LemmaTag {
    std::string head;
    std::string arg;
};

LemmaTag split_tag(const std::string& tag) {
    const auto colon = tag.find(':');
    if (colon == std::string::npos) return {tag, ""};
    return {tag.substr(0, colon), tag.substr(colon + 1)};
}

std::pair<unsigned, unsigned> pluennecke_args(const std::string& arg) {
    if (arg.empty()) return {2, 2};
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("pluennecke tag needs k,l");
    unsigned k = 0, l = 0;
    const char* s = arg.data();
    auto r1 = std::from_chars(s, s + comma, k);
    auto r2 = std::from_chars(s + comma + 1, s + arg.size(), l);
    if (r1.ec != std::errc{} || r1.ptr != s + comma || r2.ec != std::errc{} || r2.ptr != s + arg.size() || k + l == 0)
        throw std::invalid_argument("bad pluennecke arguments '" + arg + "'");
    return {k, l};
}

Op group_arg(const std::string& arg) {
    if (arg == "add") return Op::add;
    if (arg == "mul") return Op::mul;
    throw std::invalid_argument("expected add or mul, got '" + arg + "'");
}

bool rss_variant(const std::string& arg) {
    if (arg == "additive") return false;
    if (arg == "multiplicative") return true;
    throw std::invalid_argument("expected additive or multiplicative, got '" + arg + "'");
}

void check_tag(const std::string& tag) {
    const LemmaTag t = split_tag(tag);
    if (t.head == "pluennecke") pluennecke_args(t.arg);
    else if (t.head == "cauchy_schwarz" || t.head == "regular" || t.head == "dyadic") group_arg(t.arg);
    else if (t.head == "mixed") parse_mixed(t.arg);
    else if (t.head == "rss" || t.head == "rss-count") rss_variant(t.arg);
    else if ((t.head == "kmps" || t.head == "sdz" || t.head == "main") && t.arg.empty()) return;
    else throw std::invalid_argument("unknown lemma '" + tag + "'");
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

VerificationReport dyadic_cell(const ElemSet& a, Op group, double k) {
    Stopwatch clock;
    const ElemSet set = group == Op::mul ? a.without_zero() : a;
    VerificationReport r;
    r.lemma = std::string("dyadic:") + std::string(op_name(group));
    r.inputs = {{"n", set.size()}, {"k", k}};
    if (set.empty()) {
        r.status = Status::degenerate;
        return r;
    }
    const DyadicSlice s = dyadic_extract(set, set, quotient_of(group), k);
    const DyadicRecord rec = s.record("D");
    r.dyadic.push_back(rec);
    r.exact = {{"D", std::to_string(rec.support)},
               {"t", std::to_string(rec.level)},
               {"bucket_bound", std::to_string(rec.bucket_bound)}};
    if (s.energy.exact) r.exact["energy"] = to_decimal(*s.energy.exact);
    r.decide(rec.energy, static_cast<double>(rec.bucket_bound) * rec.product, 1);
    r.status = rec.certificate ? Status::pass : Status::fail;
    if (!rec.certificate)
        r.notes.push_back(std::string("certificate without 2^k undershoots; scaled form ") +
                          (rec.scaled_certificate ? "holds" : "fails"));
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

}  // namespace

const std::vector<std::string>& known_lemmas() {
    static const std::vector<std::string> tags = {
        "pluennecke",        "cauchy_schwarz:add", "cauchy_schwarz:mul",  "kmps",
        "sdz",               "mixed:E4+E2x",       "mixed:E4xE2+",        "mixed:E4xE4+",
        "mixed:E4+E4x",      "rss:additive",       "rss:multiplicative",  "rss-count:additive",
        "rss-count:multiplicative", "regular:add", "regular:mul",         "dyadic:add",
        "dyadic:mul",        "main",
    };
    return tags;
}

void ExperimentConfig::validate() const {
    for (const auto& tag : lemmas) check_tag(tag);
    if (families.empty()) throw std::invalid_argument("no families");
    if (sizes.empty()) throw std::invalid_argument("no sizes");
    for (auto n : sizes)
        if (n == 0) throw std::invalid_argument("sizes must be positive");
    if (instances == 0) throw std::invalid_argument("instances must be positive");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
    if (!(slack_c > 0) || !(main_floor > 0)) throw std::invalid_argument("slack_c and main_floor must be positive");
    if (!(regular_k > 0) || !(dyadic_k > 0)) throw std::invalid_argument("exponents must be positive");
    if (budget.table_insertions == 0 || budget.span_pairs == 0 || budget.oracle_size == 0)
        throw std::invalid_argument("budgets must be positive");
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::vector<std::string> keys = {"field",     "lemmas",    "families",   "sizes",  "instances",
                                                  "slack_c",   "regular_k", "dyadic_k",   "main_floor",
                                                  "budget",    "seed",      "workers",    "output"};
    for (const auto& [key, _] : j.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw std::invalid_argument("unknown config key '" + key + "'");
    ExperimentConfig c;
    try {
        if (j.contains("field")) c.field = GroundField::parse(j.at("field").get<std::string>());
        if (j.contains("lemmas")) c.lemmas = j.at("lemmas").get<std::vector<std::string>>();
        if (j.contains("families")) {
            c.families.clear();
            for (const auto& f : j.at("families")) c.families.push_back(parse_family(f.get<std::string>()));
        }
        if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::uint64_t>>();
        if (j.contains("instances")) c.instances = j.at("instances").get<unsigned>();
        if (j.contains("slack_c")) c.slack_c = j.at("slack_c").get<double>();
        if (j.contains("regular_k")) c.regular_k = j.at("regular_k").get<double>();
        if (j.contains("dyadic_k")) c.dyadic_k = j.at("dyadic_k").get<double>();
        if (j.contains("main_floor")) c.main_floor = j.at("main_floor").get<double>();
        if (j.contains("budget")) {
            const json& b = j.at("budget");
            for (const auto& [key, _] : b.items())
                if (key != "table_insertions" && key != "span_pairs" && key != "oracle_size")
                    throw std::invalid_argument("unknown budget key '" + key + "'");
            c.budget.table_insertions = b.value("table_insertions", c.budget.table_insertions);
            c.budget.span_pairs = b.value("span_pairs", c.budget.span_pairs);
            c.budget.oracle_size = b.value("oracle_size", c.budget.oracle_size);
        }
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("workers")) c.workers = j.at("workers").get<unsigned>();
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return parse_config(j);
}

json config_json(const ExperimentConfig& c) {
    std::vector<std::string> families;
    for (auto f : c.families) families.emplace_back(family_name(f));
    return {{"field", c.field.name()},
            {"lemmas", c.lemmas},
            {"families", families},
            {"sizes", c.sizes},
            {"instances", c.instances},
            {"slack_c", c.slack_c},
            {"regular_k", c.regular_k},
            {"dyadic_k", c.dyadic_k},
            {"main_floor", c.main_floor},
            {"budget",
             {{"table_insertions", c.budget.table_insertions},
              {"span_pairs", c.budget.span_pairs},
              {"oracle_size", c.budget.oracle_size}}},
            {"seed", c.seed},
            {"workers", c.workers},
            {"output", c.output.string()}};
}

std::string config_digest(const ExperimentConfig& cfg) {
    json j = config_json(cfg);
    j.erase("output");
    j.erase("workers");
    return hex64(fnv1a(j.dump()));
}

std::uint64_t cell_seed(std::uint64_t master, const std::string& key) { return splitmix(master ^ fnv1a(key)); }

CellResult run_cell(const ExperimentConfig& cfg, const std::string& lemma, FamilyKind family, std::uint64_t n,
                    unsigned instance) {
    CellResult cell;
    cell.lemma = lemma;
    cell.family = family_name(family);
    cell.requested_n = n;
    cell.instance = instance;
    cell.key = lemma + "|" + cell.family + "|" + std::to_string(n) + "|" + std::to_string(instance);
    cell.seed = cell_seed(cfg.seed, cell.key);

    VerifyConfig vc;
    vc.slack_c = cfg.slack_c;
    vc.budget = cfg.budget;
    vc.main_floor = cfg.main_floor;
    auto gen = [&](std::uint64_t size, std::uint64_t salt) {
        return gen_family(sweep_family(family, std::max<std::uint64_t>(size, 1), cfg.field, cell.seed + salt));
    };

    Stopwatch clock;
    VerificationReport& r = cell.report;
    const LemmaTag t = split_tag(lemma);
    try {
        const ElemSet a = gen(n, 0);
        cell.n = a.size();
        if (t.head == "pluennecke") {
            const auto [k, l] = pluennecke_args(t.arg);
            r = check_pluennecke(a, k, l, cfg.budget);
        } else if (t.head == "cauchy_schwarz") {
            r = cauchy_schwarz_check(a, group_arg(t.arg));
        } else if (t.head == "kmps") {
            r = check_kmps(a.without_zero(), gen(n, 1).without_zero(), gen(n, 2).without_zero(), vc);
        } else if (t.head == "sdz") {
            r = check_sdz(a, gen(n, 1), gen(n, 2), gen(n, 3), vc);
        } else if (t.head == "mixed") {
            r = check_mixed_energy(a, gen(n / 4, 1), parse_mixed(t.arg), vc);
        } else if (t.head == "rss" || t.head == "rss-count") {
            RssReports both = check_rss_proposition(a, rss_variant(t.arg), vc);
            r = t.head == "rss" ? std::move(both.inequality) : std::move(both.count);
        } else if (t.head == "regular") {
            const Op op = group_arg(t.arg);
            const ElemSet set = op == Op::mul ? a.without_zero() : a;
            const RegularDecomposition d = xue_regularize(set, cfg.regular_k, op);
            r = check_regular(d, set, cfg.regular_k, default_slack(set.size(), cfg.slack_c));
        } else if (t.head == "dyadic") {
            r = dyadic_cell(a, group_arg(t.arg), cfg.dyadic_k);
        } else if (t.head == "main") {
            r = main_probe(a, cfg.main_floor);
        } else {
            throw std::invalid_argument("unknown lemma '" + lemma + "'");
        }
    } catch (const BudgetExceeded& e) {
        r = VerificationReport{};
        r.lemma = lemma;
        r.status = Status::skipped;
        r.notes.push_back(std::string("budget: ") + e.what());
    } catch (const std::invalid_argument& e) {
        r = VerificationReport{};
        r.lemma = lemma;
        r.status = Status::skipped;
        r.notes.push_back(std::string("precondition: ") + e.what());
    }
    r.elapsed_ms = clock.elapsed_ms();
    return cell;
}

std::string csv_row(const CellResult& c, const GroundField& field) {
    std::ostringstream out;
    out << c.lemma << ',' << c.family << ',' << c.n << ',' << (field.is_prime() ? field.modulus() : 0) << ','
        << format_double(c.report.lhs) << ',' << format_double(c.report.rhs_shape) << ','
        << format_double(c.report.fitted_constant) << ',' << format_double(c.report.slack) << ','
        << status_name(c.report.status) << ',' << format_double(c.report.elapsed_ms);
    return out.str();
}

int suite_exit_code(const std::vector<CellResult>& cells) {
    for (const auto& c : cells)
        if (c.report.status == Status::fail) return 1;
    return 0;
}

RunManifest run_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    Stopwatch clock;
    const fs::path cells_dir = cfg.output / "cells";
    fs::create_directories(cells_dir);
    fs::remove(cfg.output / "manifest.json");

    struct Job {
        std::string lemma;
        FamilyKind family;
        std::uint64_t n;
        unsigned instance;
    };
    std::vector<Job> jobs;
    for (const auto& lemma : cfg.lemmas)
        for (FamilyKind f : cfg.families)
            for (auto n : cfg.sizes)
                for (unsigned i = 0; i < cfg.instances; ++i) jobs.push_back({lemma, f, n, i});

    RunManifest m;
    m.digest = config_digest(cfg);
    m.cells.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex io;
    auto cell_file = [&](std::size_t i) {
        char name[32];
        std::snprintf(name, sizeof name, "%06zu.json", i);
        return cells_dir / name;
    };
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            CellResult c = run_cell(cfg, job.lemma, job.family, job.n, job.instance);
            json j = {{"key", c.key},
                      {"lemma", c.lemma},
                      {"family", c.family},
                      {"requested_n", c.requested_n},
                      {"instance", c.instance},
                      {"seed", c.seed},
                      {"n", c.n},
                      {"report", c.report}};
            {
                std::lock_guard lock(io);
                write_atomic(cell_file(i), j.dump(2) + "\n");
            }
            m.cells[i] = std::move(c);
        }
    };
    const unsigned threads = std::min<std::size_t>(cfg.workers, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string csv = std::string(csv_header) + "\n";
    for (const auto& c : m.cells) csv += csv_row(c, cfg.field) + "\n";
    write_atomic(cfg.output / "results.csv", csv);

    json cells = json::array();
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
        const auto& c = m.cells[i];
        const std::string status(status_name(c.report.status));
        ++m.counts[status];
        cells.push_back({{"key", c.key}, {"status", status}, {"file", cell_file(i).filename().string()}});
    }
    m.exit_code = suite_exit_code(m.cells);
    m.wall_ms = clock.elapsed_ms();
    const json manifest = {{"tool", "sumprod"},
                           {"version", m.version},
                           {"config_digest", m.digest},
                           {"config", config_json(cfg)},
                           {"cells", cells},
                           {"counts", m.counts},
                           {"flags",
                            {{"failed", m.counts.count("fail") > 0},
                             {"constraint_failed", m.counts.count("constraint-failed") > 0},
                             {"skipped", m.counts.count("skipped") > 0},
                             {"degenerate", m.counts.count("degenerate") > 0}}},
                           {"exit_code", m.exit_code},
                           {"wall_ms", m.wall_ms}};
    write_atomic(cfg.output / "manifest.json", manifest.dump(2) + "\n");
    return m;
}

}  // namespace sumprod
