#include "friction/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "friction/errors.hpp"

namespace friction {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "0.1.0";
constexpr double kInf = std::numeric_limits<double>::infinity();

void expect_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
    }
}

PayoffSpec parse_payoff(const json& j, const std::string& where) {
    expect_keys(j, {"kind", "strike", "lipschitz_l", "level"}, where);
    const std::string kind = j.at("kind").get<std::string>();
    const double L = j.value("lipschitz_l", 1.0);
    if (kind == "lookback_max") return payoffs::lookback(L);
    if (kind == "asian_average") return payoffs::asian(L);
    if (kind == "european_call") return payoffs::call(j.at("strike").get<double>(), L);
    if (kind == "european_put") return payoffs::put(j.at("strike").get<double>());
    if (kind == "terminal") return payoffs::terminal();
    if (kind == "quadratic") return payoffs::quadratic(L);
    if (kind == "alpha_tail") return payoffs::alpha_tail(j.at("level").get<double>());
    throw ConfigInvalid("unknown payoff kind '" + kind + "' in " + where);
}

std::string fmt(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_atomic(const fs::path& target, const std::string& content) {
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
    }
    fs::rename(tmp, target);
}

void write_json_file(const fs::path& target, const json& doc) {
    write_atomic(target, doc.dump(2) + "\n");
}

json number_or_string(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

struct Manifest {
    json tasks = json::array();
    json files = json::array();
    std::string started;
    std::string command;

    void add_task(const std::string& name, const std::string& status) {
        tasks.push_back(json{{"name", name}, {"status", status}});
    }
    void add_file(const std::string& name) { files.push_back(name); }
};

std::string now_iso() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const ExperimentConfig& cfg, Manifest& mf) {
    json doc;
    doc["artifact_version"] = kArtifactVersion;
    doc["schema_version"] = cfg.schema_version;
    doc["command"] = mf.command;
    doc["config_hash"] = config_hash_hex(cfg.raw);
    doc["config"] = cfg.raw;
    doc["seed"] = cfg.seed;
    doc["tasks"] = mf.tasks;
    doc["files"] = mf.files;
    doc["timestamps"] = json{{"started", mf.started}, {"finished", now_iso()}};
    write_json_file(fs::path(cfg.out_dir) / "manifest.json", doc);
}

Manifest begin_run(const ExperimentConfig& cfg, const std::string& command) {
    fs::create_directories(cfg.out_dir);
    Manifest mf;
    mf.command = command;
    mf.started = now_iso();
    return mf;
}

json cps_to_json(const ConsistentPriceSystem& cps) {
    json j;
    j["p"] = cps.p;
    json m = json::array();
    for (double v : cps.m) m.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    j["m"] = m;
    j["x"] = cps.x;
    return j;
}

}  // namespace

std::string config_hash_hex(const json& doc) {
    const std::string s = doc.dump();
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    cfg.raw = doc;
    expect_keys(doc,
                {"schema_version", "seed", "out_dir", "workers", "lp_tol", "market", "payoff",
                 "tree", "dyadic_tree", "epsilons", "lambda", "sampler", "mc_paths",
                 "doubling_paths", "doubling_cq", "doubling_sigma", "tail_level"},
                "config");
    cfg.schema_version = doc.value("schema_version", 1);
    if (cfg.schema_version != 1)
        throw ConfigInvalid("unsupported schema_version " + std::to_string(cfg.schema_version));
    cfg.seed = doc.value("seed", 1ULL);
    cfg.out_dir = doc.value("out_dir", std::string("out"));
    cfg.workers = doc.value("workers", 1);
    cfg.lp_tol = doc.value("lp_tol", 1e-9);
    if (cfg.workers < 1) throw ConfigInvalid("workers must be >= 1");

    {
        const json& m = doc.at("market");
        expect_keys(m, {"kappa", "options"}, "market");
        cfg.market.kappa = m.at("kappa").get<double>();
        if (m.contains("options")) {
            for (const json& o : m.at("options")) {
                expect_keys(o, {"kind", "strike", "price", "lipschitz_l", "level"},
                            "market.options[]");
                cfg.market.statics.options.push_back(parse_payoff(o, "market.options[]"));
                cfg.market.statics.prices.push_back(o.at("price").get<double>());
            }
        }
        cfg.market.validate();
    }

    cfg.payoff = parse_payoff(doc.at("payoff"), "payoff");

    {
        const json& t = doc.at("tree");
        expect_keys(t, {"mode", "epsilon", "horizon", "partition", "max_jumps", "i_max",
                        "node_budget"},
                    "tree");
        const std::string mode = t.at("mode").get<std::string>();
        cfg.tree.epsilon = t.at("epsilon").get<double>();
        cfg.tree.horizon = t.value("horizon", 1.0);
        cfg.tree.node_budget = t.value("node_budget", std::size_t{200000});
        cfg.tree.lipschitz_L = cfg.payoff.lipschitz_L;
        if (mode == "partition") {
            cfg.tree.mode = TreeMode::Partition;
            cfg.tree.partition = t.at("partition").get<std::vector<double>>();
        } else if (mode == "dyadic") {
            cfg.tree.mode = TreeMode::Dyadic;
            cfg.tree.max_jumps = t.at("max_jumps").get<std::size_t>();
            cfg.tree.i_max = t.value("i_max", 64);
        } else {
            throw ConfigInvalid("tree.mode must be 'partition' or 'dyadic'");
        }
    }
    if (doc.contains("dyadic_tree")) {
        const json& t = doc.at("dyadic_tree");
        expect_keys(t, {"max_jumps", "i_max", "node_budget"}, "dyadic_tree");
        cfg.dyadic.mode = TreeMode::Dyadic;
        cfg.dyadic.epsilon = cfg.tree.epsilon;
        cfg.dyadic.horizon = cfg.tree.horizon;
        cfg.dyadic.max_jumps = t.at("max_jumps").get<std::size_t>();
        cfg.dyadic.i_max = t.value("i_max", 64);
        cfg.dyadic.node_budget = t.value("node_budget", std::size_t{200000});
        cfg.dyadic.lipschitz_L = cfg.payoff.lipschitz_L;
        cfg.has_dyadic = true;
    } else if (cfg.tree.mode == TreeMode::Dyadic) {
        cfg.dyadic = cfg.tree;
        cfg.has_dyadic = true;
    }

    cfg.epsilons = doc.value("epsilons", std::vector<double>{});
    cfg.lambda = doc.value("lambda", 10.0);

    if (doc.contains("sampler")) {
        const json& s = doc.at("sampler");
        expect_keys(s, {"kind", "mu", "sigma", "hurst", "n"}, "sampler");
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "gbm")
            cfg.sampler.kind = SamplerSpec::Kind::Gbm;
        else if (kind == "exp_fbm")
            cfg.sampler.kind = SamplerSpec::Kind::ExpFbm;
        else
            throw ConfigInvalid("sampler.kind must be 'gbm' or 'exp_fbm'");
        cfg.sampler.mu = s.value("mu", 0.0);
        cfg.sampler.sigma = s.value("sigma", 0.2);
        cfg.sampler.hurst = s.value("hurst", 0.5);
        cfg.sampler.n = s.value("n", std::size_t{1001});
        cfg.sampler.horizon = cfg.tree.horizon;
    }
    cfg.mc_paths = doc.value("mc_paths", std::size_t{1000});
    cfg.doubling_paths = doc.value("doubling_paths", std::size_t{10000});
    cfg.doubling_cq = doc.value("doubling_cq", 2.0);
    cfg.doubling_sigma = doc.value("doubling_sigma", 0.3);
    cfg.tail_level = doc.value("tail_level", 100.0);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigInvalid("cannot open config file " + path);
    json doc;
    try {
        is >> doc;
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config is not valid json: ") + e.what());
    }
    return parse_config(doc);
}

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& ov) {
    if (ov.out_dir) {
        cfg.out_dir = *ov.out_dir;
        cfg.raw["out_dir"] = *ov.out_dir;
    }
    if (ov.seed) {
        cfg.seed = *ov.seed;
        cfg.raw["seed"] = *ov.seed;
    }
    if (ov.workers) {
        cfg.workers = *ov.workers;
        cfg.raw["workers"] = *ov.workers;
    }
    if (ov.tol) {
        cfg.lp_tol = *ov.tol;
        cfg.raw["lp_tol"] = *ov.tol;
    }
}

int cmd_price(const ExperimentConfig& cfg) {
    Manifest mf = begin_run(cfg, "price");
    LpOptions opts;
    opts.tol = cfg.lp_tol;

    const EventTree tree = build_tree(cfg.tree);
    const PriceResult primal = primal_lp(tree, cfg.payoff, cfg.market, opts);
    const DualResult dual = dual_lp(tree, cfg.payoff, cfg.market, opts);
    const GapReport gap = duality_gap(tree, cfg.payoff, cfg.market, opts);
    const PriceResult full_subset =
        primal_lp_subset(tree, cfg.payoff, cfg.market, tree.leaves, opts);

    json out;
    out["command"] = "price";
    out["epsilon"] = cfg.tree.epsilon;
    out["kappa"] = cfg.market.kappa;
    out["leaves"] = tree.leaves.size();
    out["primal"] = json{{"value", primal.value},
                         {"statics", primal.plan.statics},
                         {"buy", primal.plan.buy},
                         {"sell", primal.plan.sell},
                         {"liq_sell", primal.plan.liq_sell},
                         {"liq_buy", primal.plan.liq_buy},
                         {"iterations", primal.lp.iterations}};
    out["dual"] = json{{"value", dual.value},
                       {"cps", cps_to_json(dual.cps)},
                       {"iterations", dual.lp.iterations}};
    out["gap"] = json{{"abs", gap.gap},
                      {"rel", gap.rel_gap},
                      {"primal_cert_ok", gap.primal_cert_ok},
                      {"dual_cert_ok", gap.dual_cert_ok},
                      {"multipliers_consistent", gap.multipliers_consistent}};
    out["subset_full_support"] =
        json{{"value", full_subset.value},
             {"equals_primal", full_subset.value == primal.value}};

    write_json_file(fs::path(cfg.out_dir) / "price.json", out);
    mf.add_file("price.json");
    mf.add_task("price", "ok");

    const bool certs_ok = gap.primal_cert_ok && gap.dual_cert_ok && gap.multipliers_consistent;
    const bool gap_ok = gap.gap <= 1e-7 * (1.0 + std::fabs(gap.dual));
    std::printf("price: primal=%.12g dual=%.12g gap=%.3g certs=%s\n", gap.primal, gap.dual,
                gap.gap, certs_ok ? "ok" : "FAIL");
    write_manifest(cfg, mf);
    return certs_ok && gap_ok ? 0 : 4;
}

namespace {

struct BoundsRow {
    double epsilon = 0.0;
    std::optional<double> kt_lower;
    std::optional<double> kt_upper;
    double supnorm_bound = 0.0;
    double cap_slack = 0.0;
    double corr_lower = 0.0;
    double corr_upper = 0.0;
    std::vector<double> adjusted;
    BoundEntry lower;
    BoundEntry upper;
    double primal_partition = 0.0;
    double primal_dyadic = 0.0;
};

BoundsRow bounds_row(const ExperimentConfig& cfg, double eps) {
    BoundsRow row;
    row.epsilon = eps;
    LpOptions opts;
    opts.tol = cfg.lp_tol;
    const double L = cfg.payoff.lipschitz_L;
    const double c_hat = supnorm_moment_bound(cfg.market.statics.growth_constant(),
                                              cfg.market.statics.last_price());
    row.supnorm_bound = c_hat;
    row.cap_slack = price_cap_slack(L, eps, cfg.market.kappa, c_hat,
                                    cfg.market.statics.last_price());
    row.corr_lower = lower_bound_correction(L, c_hat, eps);
    row.corr_upper = upper_bound_correction(L, c_hat, eps, cfg.market.kappa);
    row.kt_lower = shrunk_band_kappa(cfg.market.kappa, eps);
    try {
        row.kt_upper = widened_band_kappa(cfg.market.kappa, eps);
    } catch (const KappaOutOfRange&) {
        row.kt_upper.reset();
    }
    row.adjusted = tightened_option_caps(cfg.market, eps, L);

    TreeConfig pc = cfg.tree;
    pc.epsilon = eps;
    const EventTree ptree = build_tree(pc);
    row.lower = lower_bound_value(ptree, cfg.payoff, cfg.market, eps, opts);
    row.primal_partition = primal_lp(ptree, cfg.payoff, cfg.market, opts).value;

    if (cfg.has_dyadic && row.kt_upper) {
        TreeConfig dc = cfg.dyadic;
        dc.epsilon = eps;
        const EventTree dtree = build_tree(dc);
        row.upper = upper_bound_value(dtree, cfg.payoff, cfg.market, eps, cfg.lambda, opts);
        row.primal_dyadic = primal_lp(dtree, cfg.payoff, cfg.market, opts).value;
    }
    return row;
}

}  // namespace

int cmd_bounds(const ExperimentConfig& cfg) {
    if (cfg.epsilons.empty()) throw ConfigInvalid("bounds needs a nonempty 'epsilons' list");
    if (cfg.market.statics.empty())
        throw ConfigInvalid("bounds needs the quadratic static option");
    Manifest mf = begin_run(cfg, "bounds");

    std::vector<BoundsRow> rows(cfg.epsilons.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::string> task_errors(cfg.epsilons.size());
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.epsilons.size()) return;
            try {
                rows[i] = bounds_row(cfg, cfg.epsilons[i]);
            } catch (const std::exception& e) {
                task_errors[i] = e.what();
            }
        }
    };
    const int nw = std::min<int>(cfg.workers, static_cast<int>(cfg.epsilons.size()));
    std::vector<std::thread> threads;
    for (int w = 1; w < nw; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    for (std::size_t i = 0; i < task_errors.size(); ++i)
        if (!task_errors[i].empty())
            throw NumericalBreakdown("bounds task at epsilon " + fmt(cfg.epsilons[i]) +
                                     " failed: " + task_errors[i]);

    // csv: fixed column order (see docs/formats.md)
    std::ostringstream csv;
    csv << "epsilon,kappa_tilde_lower,kappa_tilde_upper,supnorm_bound,cap_slack,corr_lower,"
           "corr_upper,adjusted_prices,lower_value,lower_raw,lower_feasible,upper_value,"
           "upper_raw,upper_feasible,primal_partition,primal_dyadic\n";
    json jrows = json::array();
    for (const BoundsRow& r : rows) {
        std::string adj;
        for (std::size_t i = 0; i < r.adjusted.size(); ++i)
            adj += (i ? ";" : "") + fmt(r.adjusted[i]);
        csv << fmt(r.epsilon) << ',' << (r.kt_lower ? fmt(*r.kt_lower) : "none") << ','
            << (r.kt_upper ? fmt(*r.kt_upper) : "none") << ',' << fmt(r.supnorm_bound) << ','
            << fmt(r.cap_slack) << ',' << fmt(r.corr_lower) << ',' << fmt(r.corr_upper) << ','
            << adj << ',' << fmt(r.lower.value) << ',' << fmt(r.lower.raw_dual) << ','
            << (r.lower.feasible ? 1 : 0) << ',' << fmt(r.upper.value) << ','
            << fmt(r.upper.raw_dual) << ',' << (r.upper.feasible ? 1 : 0) << ','
            << fmt(r.primal_partition) << ',' << fmt(r.primal_dyadic) << '\n';

        json jr;
        jr["epsilon"] = r.epsilon;
        jr["kappa_tilde_lower"] = r.kt_lower ? json(*r.kt_lower) : json(nullptr);
        jr["kappa_tilde_upper"] = r.kt_upper ? json(*r.kt_upper) : json(nullptr);
        jr["supnorm_bound"] = r.supnorm_bound;
        jr["cap_slack"] = r.cap_slack;
        jr["corr_lower"] = r.corr_lower;
        jr["corr_upper"] = r.corr_upper;
        jr["adjusted_prices"] = r.adjusted;
        jr["lower"] = json{{"value", number_or_string(r.lower.value)},
                           {"raw", r.lower.raw_dual},
                           {"feasible", r.lower.feasible},
                           {"flagged_empty", r.lower.flagged_empty}};
        jr["upper"] = json{{"value", number_or_string(r.upper.value)},
                           {"raw", r.upper.raw_dual},
                           {"feasible", r.upper.feasible}};
        jr["primal_partition"] = r.primal_partition;
        jr["primal_dyadic"] = r.primal_dyadic;
        jrows.push_back(jr);
    }
    write_atomic(fs::path(cfg.out_dir) / "bounds.csv", csv.str());
    mf.add_file("bounds.csv");
    json out;
    out["command"] = "bounds";
    out["rows"] = jrows;
    write_json_file(fs::path(cfg.out_dir) / "bounds.json", out);
    mf.add_file("bounds.json");
    mf.add_task("bounds", "ok");
    write_manifest(cfg, mf);
    std::printf("bounds: %zu epsilon rows written\n", rows.size());
    return 0;
}

int cmd_hedge_verify(const ExperimentConfig& cfg) {
    Manifest mf = begin_run(cfg, "hedge-verify");
    LpOptions opts;
    opts.tol = cfg.lp_tol;

    // pathwise doubling-hedge corpus
    std::size_t doubling_violations = 0;
    double min_margin = kInf;
    for (std::size_t i = 0; i < cfg.doubling_paths; ++i) {
        const SampledPath path = sample_gbm(0.0, cfg.doubling_sigma, cfg.sampler.n,
                                            cfg.tree.horizon, mix_seed(cfg.seed, i));
        const DoublingReport rep =
            verify_doubling(path, cfg.market, cfg.doubling_cq, cfg.tail_level);
        if (!rep.ok) ++doubling_violations;
        min_margin = std::min(min_margin, rep.margin_main);
    }

    // lifted tree hedge on fresh continuous paths; the plan super-replicates
    // on the tree at the widened band rate
    if (!cfg.has_dyadic) throw ConfigInvalid("hedge-verify needs a dyadic tree section");
    const EventTree dtree = build_tree(cfg.dyadic);
    const double band = widened_band_kappa(cfg.market.kappa, cfg.dyadic.epsilon);
    const PriceResult plan = primal_lp_banded(dtree, cfg.payoff, cfg.market, band, opts);
    const McStats stats =
        monte_carlo_verify(plan.plan, dtree, cfg.sampler, cfg.mc_paths, cfg.market, cfg.payoff,
                           cfg.dyadic.epsilon, mix_seed(cfg.seed, 0x4c696674));

    json out;
    out["command"] = "hedge-verify";
    out["doubling"] = json{{"paths", cfg.doubling_paths},
                           {"violations", doubling_violations},
                           {"min_margin", min_margin},
                           {"c_q", cfg.doubling_cq},
                           {"tail_level", cfg.tail_level}};
    out["lifted"] = json{{"paths", stats.n_total},
                         {"checked", stats.n_checked},
                         {"excluded_depth", stats.n_excluded_depth},
                         {"excluded_grid", stats.n_excluded_grid},
                         {"excluded_fraction", stats.excluded_fraction},
                         {"violations", stats.violations},
                         {"min_margin", number_or_string(stats.min_margin)},
                         {"mean_shortfall", stats.mean_shortfall},
                         {"plan_cost", plan.value},
                         {"plan_kappa", band}};
    write_json_file(fs::path(cfg.out_dir) / "hedge.json", out);
    mf.add_file("hedge.json");

    // shortfall histogram, 40 bins over the observed range
    std::ostringstream csv;
    csv << "bin_lo,bin_hi,count\n";
    if (!stats.shortfalls.empty()) {
        double lo = kInf, hi = -kInf;
        for (double s : stats.shortfalls) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi <= lo) hi = lo + 1e-12;
        const int nbins = 40;
        std::vector<std::size_t> count(nbins, 0);
        for (double s : stats.shortfalls) {
            int b = static_cast<int>((s - lo) / (hi - lo) * nbins);
            b = std::min(std::max(b, 0), nbins - 1);
            ++count[b];
        }
        for (int b = 0; b < nbins; ++b)
            csv << fmt(lo + (hi - lo) * b / nbins) << ',' << fmt(lo + (hi - lo) * (b + 1) / nbins)
                << ',' << count[b] << '\n';
    }
    write_atomic(fs::path(cfg.out_dir) / "shortfall_hist.csv", csv.str());
    mf.add_file("shortfall_hist.csv");
    mf.add_task("hedge-verify", "ok");
    write_manifest(cfg, mf);

    std::printf("hedge-verify: doubling violations=%zu lifted violations=%zu excluded=%.1f%%\n",
                doubling_violations, stats.violations, 100.0 * stats.excluded_fraction);
    return (doubling_violations == 0 && stats.violations == 0) ? 0 : 4;
}

int cmd_check_assumptions(const ExperimentConfig& cfg) {
    Manifest mf = begin_run(cfg, "check-assumptions");
    json out;
    out["command"] = "check-assumptions";

    // payoff regularity
    const LipschitzReport supn = check_lipschitz_supnorm(cfg.payoff, 200, cfg.seed);
    const LipschitzReport tshift = check_lipschitz_timeshift(cfg.payoff, 200, cfg.seed + 1);
    out["payoff_regularity"] =
        json{{"supnorm", json{{"pass", supn.pass}, {"worst_ratio", supn.worst_ratio},
                              {"declared_L", supn.declared_L}}},
             {"timeshift", json{{"pass", tshift.pass},
                                {"applicable", tshift.applicable},
                                {"worst_ratio", tshift.worst_ratio},
                                {"note", tshift.note}}}};

    // static option family regularity
    json statics;
    bool statics_ok = true;
    try {
        cfg.market.statics.validate();
        statics["pass"] = true;
        if (!cfg.market.statics.empty())
            statics["growth_constant"] = cfg.market.statics.growth_constant();
    } catch (const std::exception& e) {
        statics_ok = false;
        statics["pass"] = false;
        statics["error"] = e.what();
    }
    out["static_options"] = statics;

    // strict consistent pricing rule on the configured tree
    const EventTree tree = build_tree(cfg.tree);
    LpOptions opts;
    opts.tol = cfg.lp_tol;
    const NoArbReport arb = check_no_arbitrage(tree, cfg.market, 1e-9, opts);
    out["no_arbitrage"] = json{{"pass", arb.ok},
                               {"slack", number_or_string(arb.slack)},
                               {"witness_p", arb.witness.p}};

    write_json_file(fs::path(cfg.out_dir) / "assumptions.json", out);
    mf.add_file("assumptions.json");
    mf.add_task("check-assumptions", "ok");
    write_manifest(cfg, mf);

    std::printf("payoff regularity (supnorm):   %s\n", supn.pass ? "PASS" : "FAIL");
    std::printf("payoff regularity (timeshift): %s\n",
                !tshift.applicable ? "SKIP" : (tshift.pass ? "PASS" : "FAIL"));
    std::printf("static option family:          %s\n", statics_ok ? "PASS" : "FAIL");
    std::printf("no-arbitrage (slack %.6g):     %s\n", arb.slack, arb.ok ? "PASS" : "FAIL");
    return 0;
}

}  // namespace friction
