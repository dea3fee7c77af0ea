#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "friction/errors.hpp"
#include "friction/experiment.hpp"

namespace {

struct Args {
    std::string config;
    friction::CliOverrides overrides;
};

void add_common(CLI::App* sub, Args& args, std::string& out, unsigned long long& seed,
                int& workers, double& tol) {
    sub->add_option("--config", args.config, "experiment config (json)")->required();
    sub->add_option("--out", out, "output directory (overrides config)");
    sub->add_option("--seed", seed, "seed (overrides config)");
    sub->add_option("--workers", workers, "sweep worker threads (overrides config)");
    sub->add_option("--tol", tol, "lp tolerance (overrides config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-static super-replication pricing under proportional transaction costs"};
    app.require_subcommand(1);

    Args args;
    std::string out;
    unsigned long long seed = 0;
    int workers = 0;
    double tol = 0.0;

    CLI::App* price = app.add_subcommand("price", "primal/dual pricing with duality gap");
    CLI::App* bounds = app.add_subcommand("bounds", "lower/upper bound sweep over epsilons");
    CLI::App* conv = app.add_subcommand("converge", "alias of bounds");
    CLI::App* hedge = app.add_subcommand("hedge-verify", "pathwise hedge verification corpora");
    CLI::App* assum = app.add_subcommand("check-assumptions", "payoff/pricing assumption checks");
    for (CLI::App* sub : {price, bounds, conv, hedge, assum})
        add_common(sub, args, out, seed, workers, tol);

    CLI11_PARSE(app, argc, argv);

    try {
        friction::ExperimentConfig cfg = friction::load_config(args.config);
        if (!out.empty()) args.overrides.out_dir = out;
        if (price->count("--seed") || bounds->count("--seed") || conv->count("--seed") ||
            hedge->count("--seed") || assum->count("--seed"))
            args.overrides.seed = seed;
        if (workers > 0) args.overrides.workers = workers;
        if (tol > 0.0) args.overrides.tol = tol;
        friction::apply_overrides(cfg, args.overrides);

        if (price->parsed()) return friction::cmd_price(cfg);
        if (bounds->parsed() || conv->parsed()) return friction::cmd_bounds(cfg);
        if (hedge->parsed()) return friction::cmd_hedge_verify(cfg);
        if (assum->parsed()) return friction::cmd_check_assumptions(cfg);
        return 2;
    } catch (const friction::ConfigInvalid& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const friction::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
