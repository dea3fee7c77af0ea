#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "friction/hedging.hpp"
#include "friction/pricing.hpp"

namespace friction {

// One JSON document drives every command; unknown keys are rejected so a
// config cannot silently drift. Result files are deterministic given
// (config, seed); the manifest additionally records wall-clock timestamps.
struct ExperimentConfig {
    int schema_version = 1;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int workers = 1;
    double lp_tol = 1e-9;

    MarketSpec market;
    PayoffSpec payoff;
    TreeConfig tree;     // price / lower-bound / assumptions tree
    TreeConfig dyadic;   // upper-bound / hedge tree (epsilon, horizon shared)
    bool has_dyadic = false;

    std::vector<double> epsilons;  // bounds sweep
    double lambda = 10.0;

    SamplerSpec sampler;
    std::size_t mc_paths = 1000;
    std::size_t doubling_paths = 10000;
    double doubling_cq = 2.0;
    double doubling_sigma = 0.3;
    double tail_level = 100.0;

    nlohmann::json raw;  // canonical echo, embedded in the manifest
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<double> tol;
};

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& ov);

std::string config_hash_hex(const nlohmann::json& doc);

// exit codes: 0 ok, 2 config error, 3 numerical failure, 4 contract violation
int cmd_price(const ExperimentConfig& cfg);
int cmd_bounds(const ExperimentConfig& cfg);
int cmd_hedge_verify(const ExperimentConfig& cfg);
int cmd_check_assumptions(const ExperimentConfig& cfg);

}  // namespace friction
