#pragma once

#include "sumprod/budget.hpp"
#include "sumprod/families.hpp"
#include "sumprod/field.hpp"
#include "sumprod/report.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sumprod {

inline constexpr const char* tool_version = "0.1.0";

/// Lemma tags accepted in a suite config.
///
///   pluennecke[:k,l]      cauchy_schwarz:add|mul    kmps    sdz
///   mixed:<variant>       rss:additive|multiplicative
///   rss-count:additive|multiplicative               regular:add|mul
///   dyadic:add|mul        main
const std::vector<std::string>& known_lemmas();

struct ExperimentConfig {
    GroundField field = GroundField::prime(2147483647);
    std::vector<std::string> lemmas;
    std::vector<FamilyKind> families{FamilyKind::random};
    std::vector<std::uint64_t> sizes{32};
    unsigned instances = 1;
    double slack_c = 64;
    double regular_k = 4;
    double dyadic_k = 2;
    double main_floor = 0.25;
    Budget budget;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::filesystem::path output = "suite-out";

    /// Throws std::invalid_argument.
    void validate() const;
};

/// Unknown keys are an error.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_json(const ExperimentConfig& cfg);
/// FNV-1a over the canonical JSON of the config, excluding the output path.
std::string config_digest(const ExperimentConfig& cfg);

std::uint64_t cell_seed(std::uint64_t master, const std::string& key);

struct CellResult {
    std::string key;
    std::string lemma;
    std::string family;
    std::uint64_t requested_n = 0;
    unsigned instance = 0;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;  ///< |A| of the generated set
    VerificationReport report;
};

/// One cell, a pure function of the config and key (timing aside).
CellResult run_cell(const ExperimentConfig& cfg, const std::string& lemma, FamilyKind family, std::uint64_t n,
                    unsigned instance);

struct RunManifest {
    std::string version = tool_version;
    std::string digest;
    std::vector<CellResult> cells;
    std::map<std::string, std::uint64_t> counts;
    double wall_ms = 0;
    int exit_code = 0;
};

inline constexpr const char* csv_header =
    "lemma,family,n,p,lhs,rhs_shape,fitted_constant,slack,pass,elapsed_ms";
std::string csv_row(const CellResult& c, const GroundField& field);

/// Runs every (lemma, family, size, instance) cell. Writes cells/*.json,
/// results.csv and, last, manifest.json, each via rename. A stale manifest
/// is removed before the first cell runs.
RunManifest run_suite(const ExperimentConfig& cfg);

/// 0 when nothing failed, 1 when a cell failed.
int suite_exit_code(const std::vector<CellResult>& cells);

}  // namespace sumprod
