#include "doctest.h"

#include "sumprod/suite.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sumprod;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sumprod-test-" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }
}  // namespace

TEST_CASE("empty lemma selection") {
    ExperimentConfig cfg;
    cfg.output = scratch("empty");
    const RunManifest m = run_suite(cfg);
    CHECK(m.cells.empty());
    CHECK(m.exit_code == 0);
    CHECK(manifest(cfg.output)["cells"].empty());
    CHECK(slurp(cfg.output / "results.csv") == std::string(csv_header) + "\n");
}

TEST_CASE("pluennecke rows") {
    ExperimentConfig cfg = parse_config(nlohmann::json::parse(
        R"({"lemmas": ["pluennecke"], "families": ["random"], "sizes": [32], "instances": 10, "seed": 3})"));
    cfg.output = scratch("pl");
    const RunManifest m = run_suite(cfg);
    REQUIRE(m.cells.size() == 10);
    for (const auto& c : m.cells) CHECK(c.report.status == Status::pass);
    CHECK(m.counts.at("pass") == 10);
    std::istringstream csv(slurp(cfg.output / "results.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 10);
    CHECK(fs::exists(cfg.output / "cells" / "000009.json"));
}

TEST_CASE("small prime marks constraint failures") {
    ExperimentConfig cfg;
    cfg.field = GroundField::prime(101);
    cfg.lemmas = {"kmps", "sdz"};
    cfg.families = {FamilyKind::ap};
    cfg.sizes = {40};
    cfg.output = scratch("small-p");
    const RunManifest m = run_suite(cfg);
    for (const auto& c : m.cells) CHECK(c.report.status == Status::constraint_failed);
    CHECK(m.exit_code == 0);
    CHECK(manifest(cfg.output)["flags"]["constraint_failed"] == true);
}

TEST_CASE("preconditions recorded in row") {
    ExperimentConfig cfg;
    cfg.field = GroundField::char_zero();
    cfg.lemmas = {"main", "rss:additive"};
    cfg.families = {FamilyKind::subgroup, FamilyKind::ap};
    cfg.sizes = {8};
    cfg.output = scratch("pre");
    const RunManifest m = run_suite(cfg);
    REQUIRE(m.cells.size() == 4);
    CHECK(m.cells[0].report.status == Status::skipped);
    CHECK(m.cells[1].report.status == Status::pass);
    CHECK(m.cells[3].report.status == Status::skipped);
    CHECK(m.exit_code == 0);
}

TEST_CASE("determinism and seeds") {
    ExperimentConfig cfg;
    cfg.lemmas = {"cauchy_schwarz:mul", "dyadic:add", "main"};
    cfg.families = {FamilyKind::random, FamilyKind::gp};
    cfg.sizes = {12, 20};
    cfg.output = scratch("det-a");
    const RunManifest a = run_suite(cfg);
    cfg.output = scratch("det-b");
    cfg.workers = 3;
    const RunManifest b = run_suite(cfg);
    CHECK(a.digest == b.digest);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        VerificationReport x = a.cells[i].report, y = b.cells[i].report;
        x.elapsed_ms = y.elapsed_ms = 0;
        CHECK(x == y);
        CHECK(a.cells[i].seed == b.cells[i].seed);
    }
    CHECK(cell_seed(1, "k") == cell_seed(1, "k"));
    CHECK(cell_seed(1, "k") != cell_seed(2, "k"));
    CHECK(cell_seed(1, "k") != cell_seed(1, "j"));
}

TEST_CASE("config validation") {
    using nlohmann::json;
    CHECK_THROWS_AS(parse_config(json::parse(R"({"lemma": []})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"lemmas": ["nope"]})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"instances": 0})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"budget": {"table_insertions": 0}})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"field": "prime:100"})")), std::invalid_argument);
    const ExperimentConfig c = parse_config(json::parse(R"({"lemmas": ["pluennecke:2,1", "mixed:E4xE4+"]})"));
    CHECK(parse_config(config_json(c)).lemmas == c.lemmas);
    CHECK(config_digest(c) == config_digest(parse_config(config_json(c))));
    for (const auto& tag : known_lemmas()) CHECK_NOTHROW(parse_config(json{{"lemmas", {tag}}}));
}
