// irpolar: construction, polarization, capacity and link-simulation CLI.
//
// Subcommands: polarize, capacity, simulate, oracle.  Every command takes
// an optional JSON config (--config); explicitly passed flags win over
// config values.  Exit codes: 0 success, 1 usage/config error, 2 budget or
// chain-infeasibility error, 3 oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "irpolar/awtc.hpp"
#include "irpolar/channel.hpp"
#include "irpolar/csvio.hpp"
#include "irpolar/metrics.hpp"
#include "irpolar/polarize.hpp"
#include "irpolar/rng.hpp"

using nlohmann::json;
using namespace irpolar;

namespace {

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// flags win over config; config wins over defaults
template <typename T>
void overlay(const CLI::App* cmd, const std::string& flag, const json& cfg,
             const std::string& key, T& value) {
    if (cmd->count(flag) > 0) return;  // flag already parsed into value
    if (cfg.contains(key)) {
        try {
            value = cfg.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("IRPOLAR_OUT_DIR"); dir && *dir)
        return (std::filesystem::path(dir) / p).string();
    return path;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<DiscreteChannel> load_leaf_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open leaf profile");
    std::vector<DiscreteChannel> leaves;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        try {
            if (kind == "bec") {
                double e;
                if (!(ls >> e)) throw ConfigError("bec needs an erasure probability");
                leaves.push_back(make_bec(e));
            } else if (kind == "bsc") {
                double p;
                if (!(ls >> p)) throw ConfigError("bsc needs a crossover probability");
                leaves.push_back(make_bsc(p));
            } else if (kind == "noiseless") {
                leaves.push_back(make_bec(0.0));
            } else if (kind == "file" || kind == "table") {
                std::string sub;
                if (!(ls >> sub)) throw ConfigError(kind + " needs a path");
                leaves.push_back(load_channel_file(sub));
            } else {
                throw ConfigError("unknown leaf kind '" + kind + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    if (leaves.empty()) throw ConfigError(path + ": profile lists no channels");
    return leaves;
}

std::vector<double> random_bec_profile(int n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xbecULL));
    std::vector<double> eps(n);
    for (auto& e : eps) e = rng.uniform01();
    return eps;
}

ConstructMethod parse_method_name(const std::string& m) {
    if (m == "exact") return ConstructMethod::exact;
    if (m == "bec_exact") return ConstructMethod::bec_exact;
    if (m == "merge") return ConstructMethod::merge;
    if (m == "monte_carlo") return ConstructMethod::monte_carlo;
    throw ConfigError("unknown method '" + m + "'");
}

ConstructMethod parse_method(const std::string& m, const ChannelArray& leaves) {
    if (m == "auto") return pick_method(leaves, ConstructMethod::merge);
    return parse_method_name(m);
}

// ---------------------------------------------------------------- polarize

struct PolarizeArgs {
    std::string config, profile, method = "auto", out_prefix = "polarize";
    std::vector<std::int64_t> random_bec;  // N seed
    int mu = 128, trials = 10000, threads = 0;
    std::uint64_t mc_seed = 1;
};

int run_polarize(const CLI::App* cmd, PolarizeArgs& a) {
    const json cfg = load_config(a.config);
    overlay(cmd, "--profile", cfg, "profile", a.profile);
    overlay(cmd, "--method", cfg, "method", a.method);
    overlay(cmd, "--mu", cfg, "mu", a.mu);
    overlay(cmd, "--trials", cfg, "trials", a.trials);
    overlay(cmd, "--threads", cfg, "threads", a.threads);
    overlay(cmd, "--mc-seed", cfg, "mc_seed", a.mc_seed);
    overlay(cmd, "--out-prefix", cfg, "out_prefix", a.out_prefix);
    if (cmd->count("--random-bec") == 0 && cfg.contains("random_bec")) {
        a.random_bec = {cfg.at("random_bec").at("n").get<std::int64_t>(),
                        cfg.at("random_bec").at("seed").get<std::int64_t>()};
    }

    SynthChannelParams params;
    if (!a.random_bec.empty()) {
        if (a.random_bec.size() != 2)
            throw ConfigError("--random-bec takes exactly two values: N seed");
        const int n = static_cast<int>(a.random_bec[0]);
        if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("--random-bec N must be a power of two");
        params = bec_recursion(
            random_bec_profile(n, static_cast<std::uint64_t>(a.random_bec[1])));
    } else if (!a.profile.empty()) {
        ChannelArray leaves(load_leaf_profile(a.profile));
        ConstructOptions opt;
        opt.mu = a.mu;
        opt.trials = a.trials;
        opt.seed = a.mc_seed;
        opt.threads = resolve_threads(a.threads);
        params = construct(leaves, parse_method(a.method, leaves), opt);
    } else {
        throw ConfigError("polarize needs --profile or --random-bec (or config equivalents)");
    }

    const std::string index_csv = synth_params_csv(params);
    const std::string hist_csv = icap_histogram_csv(params);
    write_file_atomic(resolve_out(a.out_prefix + "_index.csv"), index_csv);
    write_file_atomic(resolve_out(a.out_prefix + "_hist.csv"), hist_csv);
    double mean_i = 0.0;
    for (double ic : params.i_cap) mean_i += ic;
    mean_i /= params.size();
    std::cout << "N=" << params.size() << " method=" << to_string(params.method)
              << " mean_i_cap=" << format_double(mean_i) << "\n"
              << "wrote " << a.out_prefix << "_index.csv, " << a.out_prefix << "_hist.csv\n";
    return 0;
}

// ---------------------------------------------------------------- capacity

struct CapacityArgs {
    std::string config, main_spec, wiretap_spec, out;
    double rho_r = 0.0, rho_w = 0.0;
};

std::string special_case_label(const DiscreteChannel& w, const DiscreteChannel& wt, double rho_r,
                               double rho_w) {
    const bool noiseless_main = bhattacharyya(w) <= 1e-9;
    const bool noiseless_wire = bhattacharyya(wt) <= 1e-9;
    const bool same = w.alphabet_size() == wt.alphabet_size() && [&] {
        for (std::size_t i = 0; i < w.alphabet_size(); ++i)
            if (std::abs(w.row0()[i] - wt.row0()[i]) > 1e-12 ||
                std::abs(w.row1()[i] - wt.row1()[i]) > 1e-12)
                return false;
        return true;
    }();
    if (noiseless_main && noiseless_wire) return "A-WTC (noiseless)";
    if (rho_w == 0.0 && noiseless_wire) return "extended WTC-II (noiseless wiretap)";
    if (rho_w == 0.0 && same) return "extended WTC-II (equal channels)";
    if (rho_w == 0.0 && rho_r == 0.0) return "non-degraded WTC";
    return "";
}

int run_capacity(const CLI::App* cmd, CapacityArgs& a) {
    const json cfg = load_config(a.config);
    overlay(cmd, "--main", cfg, "main", a.main_spec);
    overlay(cmd, "--wiretap", cfg, "wiretap", a.wiretap_spec);
    overlay(cmd, "--rho-r", cfg, "rho_r", a.rho_r);
    overlay(cmd, "--rho-w", cfg, "rho_w", a.rho_w);
    overlay(cmd, "--out", cfg, "out", a.out);
    if (a.main_spec.empty() || a.wiretap_spec.empty())
        throw ConfigError("capacity needs --main and --wiretap channel specs");
    const auto w = parse_channel_spec(a.main_spec);
    const auto wt = parse_channel_spec(a.wiretap_spec);
    const double cs = secrecy_capacity(w, wt, a.rho_r, a.rho_w);
    std::string label = special_case_label(w, wt, a.rho_r, a.rho_w);
    // WTC-II: rho_w = 0 and both channels noiseless
    if (a.rho_w == 0.0 && label == "A-WTC (noiseless)") label = "WTC-II";
    std::cout << "secrecy capacity = " << format_double(cs);
    if (!label.empty()) std::cout << "  [" << label << "]";
    std::cout << "\n";
    if (!a.out.empty()) {
        std::string csv = "main,wiretap,rho_r,rho_w,secrecy_capacity,label\n";
        csv += csv_row({a.main_spec, a.wiretap_spec, format_double(a.rho_r),
                        format_double(a.rho_w), format_double(cs), label});
        write_file_atomic(resolve_out(a.out), csv);
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config, main_spec, wiretap_spec, method = "auto", out;
    int n = 0, t = 1, mu = 128, trials = 1000, threads = 0;
    double rho_r = 0.0, rho_w = 0.0, beta = 0.3;
    std::uint64_t seed = 1, adversary_seed = 2, preshared_seed = 3;
    bool exact_leakage = false;
};

std::vector<std::vector<std::int32_t>> sets_from_json(const json& arr, int n,
                                                      const std::string& key) {
    std::vector<std::vector<std::int32_t>> out;
    for (const auto& block : arr) {
        std::vector<std::int32_t> s;
        for (const auto& v : block) {
            const auto idx = v.get<std::int64_t>();
            if (idx < 1 || idx > n)
                throw ConfigError(key + ": index " + std::to_string(idx) + " outside [1," +
                                  std::to_string(n) + "]");
            s.push_back(static_cast<std::int32_t>(idx - 1));  // config is 1-based
        }
        out.push_back(std::move(s));
    }
    return out;
}

int run_simulate(const CLI::App* cmd, SimulateArgs& a) {
    const json cfg = load_config(a.config);
    overlay(cmd, "--main", cfg, "main", a.main_spec);
    overlay(cmd, "--wiretap", cfg, "wiretap", a.wiretap_spec);
    overlay(cmd, "--n", cfg, "n", a.n);
    overlay(cmd, "--t", cfg, "t", a.t);
    overlay(cmd, "--rho-r", cfg, "rho_r", a.rho_r);
    overlay(cmd, "--rho-w", cfg, "rho_w", a.rho_w);
    overlay(cmd, "--beta", cfg, "beta", a.beta);
    overlay(cmd, "--method", cfg, "method", a.method);
    overlay(cmd, "--mu", cfg, "mu", a.mu);
    overlay(cmd, "--trials", cfg, "trials", a.trials);
    overlay(cmd, "--seed", cfg, "seed", a.seed);
    overlay(cmd, "--adversary-seed", cfg, "adversary_seed", a.adversary_seed);
    overlay(cmd, "--preshared-seed", cfg, "preshared_seed", a.preshared_seed);
    overlay(cmd, "--threads", cfg, "threads", a.threads);
    overlay(cmd, "--exact-leakage", cfg, "exact_leakage", a.exact_leakage);
    overlay(cmd, "--out", cfg, "out", a.out);

    if (a.main_spec.empty() || a.wiretap_spec.empty())
        throw ConfigError("simulate needs --main and --wiretap channel specs");
    if (a.n < 2) throw ConfigError("simulate needs --n (power of two, >= 2)");
    if (a.trials < 1) throw ConfigError("trials must be >= 1");

    const auto w = parse_channel_spec(a.main_spec);
    const auto wt = parse_channel_spec(a.wiretap_spec);

    AdversarySpec adv = [&] {
        if (cfg.contains("read_sets") || cfg.contains("write_sets")) {
            if (!cfg.contains("read_sets") || !cfg.contains("write_sets"))
                throw ConfigError("explicit adversary config needs both read_sets and write_sets");
            auto spec = AdversarySpec::explicit_sets(
                a.n, a.rho_r, a.rho_w, sets_from_json(cfg.at("read_sets"), a.n, "read_sets"),
                sets_from_json(cfg.at("write_sets"), a.n, "write_sets"));
            const bool t_given = cmd->count("--t") > 0 || cfg.contains("t");
            if (t_given && a.t != spec.t_blocks)
                throw ConfigError("t = " + std::to_string(a.t) + " but explicit sets cover " +
                                  std::to_string(spec.t_blocks) + " blocks");
            return spec;
        }
        return AdversarySpec::random(a.n, a.t, a.rho_r, a.rho_w, a.adversary_seed);
    }();

    ConstructOptions copt;
    copt.mu = a.mu;
    copt.seed = derive_seed(a.seed, 0xc0ULL);
    copt.threads = resolve_threads(a.threads);
    const ConstructMethod fallback =
        (a.method == "auto") ? ConstructMethod::merge : parse_method_name(a.method);
    const auto plan = plan_session(w, wt, adv, a.beta, fallback, copt);

    SimOptions sopt;
    sopt.trials = a.trials;
    sopt.master_seed = a.seed;
    sopt.preshared_seed = a.preshared_seed;
    sopt.threads = resolve_threads(a.threads);
    sopt.exact_leakage = a.exact_leakage;
    SimReport rep = simulate_session(plan, w, wt, adv, sopt);
    rep.main_desc = a.main_spec;
    rep.wiretap_desc = a.wiretap_spec;
    rep.adversary_seed = a.adversary_seed;

    std::cout << sim_report_summary(rep);
    if (!a.out.empty())
        write_file_atomic(resolve_out(a.out), sim_report_csv_header() + sim_report_csv_row(rep));
    return 0;
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
    std::string config, profile, out;
};

int run_oracle(const CLI::App* cmd, OracleArgs& a) {
    const json cfg = load_config(a.config);
    overlay(cmd, "--profile", cfg, "profile", a.profile);
    overlay(cmd, "--out", cfg, "out", a.out);
    if (a.profile.empty()) throw ConfigError("oracle needs --profile");
    ChannelArray leaves(load_leaf_profile(a.profile));
    if (leaves.size() > 8) throw BudgetError("oracle comparison is limited to N <= 8");
    const auto params = construct(leaves, ConstructMethod::exact);
    std::string csv = "index,z_oracle,z_construct,abs_diff\n";
    double max_diff = 0.0;
    for (int i = 0; i < leaves.size(); ++i) {
        const auto oracle = brute_force_synth(leaves, i);
        const double zo = bhattacharyya(oracle);
        const double zc = params.z[i];
        const double d = std::abs(zo - zc);
        max_diff = std::max(max_diff, d);
        csv += csv_row({std::to_string(i + 1), format_double(zo), format_double(zc),
                        format_double(d)});
    }
    if (!a.out.empty()) write_file_atomic(resolve_out(a.out), csv);
    std::cout << "max |z_oracle - z_construct| = " << format_double(max_diff) << "\n";
    if (max_diff > 1e-9) {
        std::cerr << "oracle mismatch: construction disagrees with brute force\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"irregular channel polarization and secure polar coding toolkit"};
    app.require_subcommand(1);

    PolarizeArgs pa;
    auto* polarize = app.add_subcommand(
        "polarize", "construct synthesized-channel reliabilities, write index + histogram CSVs");
    polarize->add_option("--config", pa.config, "JSON config file");
    polarize->add_option("--profile", pa.profile, "leaf profile file (one channel per line)");
    polarize->add_option("--random-bec", pa.random_bec,
                         "N seed: N BECs with uniform random erasure probabilities")
        ->expected(2);
    polarize->add_option("--method", pa.method,
                         "auto|exact|bec_exact|merge|monte_carlo (default auto)");
    polarize->add_option("--mu", pa.mu, "merge alphabet cap (default 128)");
    polarize->add_option("--trials", pa.trials, "monte_carlo trials (default 10000)");
    polarize->add_option("--mc-seed", pa.mc_seed, "monte_carlo seed (default 1)");
    polarize->add_option("--threads", pa.threads, "worker threads (default: machine)");
    polarize->add_option("--out-prefix", pa.out_prefix, "output prefix (default polarize)");

    CapacityArgs ca;
    auto* capacity_cmd =
        app.add_subcommand("capacity", "secrecy capacity for a channel pair and adversary");
    capacity_cmd->add_option("--config", ca.config, "JSON config file");
    capacity_cmd->add_option("--main", ca.main_spec, "main channel (bec:E | bsc:P | file | noiseless)");
    capacity_cmd->add_option("--wiretap", ca.wiretap_spec, "wiretap channel spec");
    capacity_cmd->add_option("--rho-r", ca.rho_r, "read fraction (default 0)");
    capacity_cmd->add_option("--rho-w", ca.rho_w, "write fraction (default 0)");
    capacity_cmd->add_option("--out", ca.out, "CSV output path");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "end-to-end secure transmission simulation");
    simulate->add_option("--config", sa.config, "JSON config file");
    simulate->add_option("--main", sa.main_spec, "main channel spec");
    simulate->add_option("--wiretap", sa.wiretap_spec, "wiretap channel spec");
    simulate->add_option("--n", sa.n, "block length (power of two)");
    simulate->add_option("--t", sa.t, "blocks per session (default 1)");
    simulate->add_option("--rho-r", sa.rho_r, "adversary read fraction");
    simulate->add_option("--rho-w", sa.rho_w, "adversary write fraction");
    simulate->add_option("--beta", sa.beta, "rate exponent, 0 < beta < 1/2 (default 0.3)");
    simulate->add_option("--method", sa.method, "construction for non-BEC leaves (default merge)");
    simulate->add_option("--mu", sa.mu, "merge alphabet cap");
    simulate->add_option("--trials", sa.trials, "Monte-Carlo trials (default 1000)");
    simulate->add_option("--seed", sa.seed, "master seed");
    simulate->add_option("--adversary-seed", sa.adversary_seed, "adversary set seed");
    simulate->add_option("--preshared-seed", sa.preshared_seed, "pre-shared bit seed");
    simulate->add_option("--threads", sa.threads, "worker threads (default: machine)");
    simulate->add_flag("--exact-leakage", sa.exact_leakage,
                       "also enumerate exact I(M;Z) (tiny N, T=1 only)");
    simulate->add_option("--out", sa.out, "CSV output path");

    OracleArgs oa;
    auto* oracle = app.add_subcommand(
        "oracle", "compare exact construction against the brute-force channel oracle");
    oracle->add_option("--config", oa.config, "JSON config file");
    oracle->add_option("--profile", oa.profile, "leaf profile file (N <= 8)");
    oracle->add_option("--out", oa.out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (polarize->parsed()) return run_polarize(polarize, pa);
        if (capacity_cmd->parsed()) return run_capacity(capacity_cmd, ca);
        if (simulate->parsed()) return run_simulate(simulate, sa);
        if (oracle->parsed()) return run_oracle(oracle, oa);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleChainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
