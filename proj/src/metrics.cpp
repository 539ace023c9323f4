#include "irpolar/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace irpolar {

ConstructMethod pick_method(const ChannelArray& leaves, ConstructMethod fallback) {
    return leaves.erasure_probs() ? ConstructMethod::bec_exact : fallback;
}

SessionPlan plan_session(const DiscreteChannel& w, const DiscreteChannel& w_tilde,
                         const AdversarySpec& adversary, double beta,
                         ConstructMethod fallback_method,
                         const ConstructOptions& construct_options) {
    SessionPlan plan;
    plan.n = adversary.n;
    plan.t_blocks = adversary.t_blocks;
    plan.beta = beta;
    std::vector<std::vector<double>> z_main;
    for (int t = 0; t < plan.t_blocks; ++t) {
        ChannelArray main_eq = equivalent_main(w, adversary, t);
        ChannelArray wire_eq = equivalent_wiretap(w_tilde, adversary, t);
        auto mp = construct(main_eq, pick_method(main_eq, fallback_method), construct_options);
        auto wp = construct(wire_eq, pick_method(wire_eq, fallback_method), construct_options);
        const auto low_main = polarized_sets(mp, beta);
        const auto high_wire = polarized_sets(wp, beta);
        plan.delta = low_main.delta;
        plan.partitions.push_back(partition(low_main.low, high_wire.high, plan.n));
        z_main.push_back(mp.z);
        plan.main_params.push_back(std::move(mp));
        plan.wiretap_params.push_back(std::move(wp));
        plan.main_leaves.push_back(std::move(main_eq));
    }
    chain_plan(plan.partitions, z_main);
    return plan;
}

namespace {

// observation alphabet: W's outputs followed by "?" when W lacks one
struct ObsAlphabet {
    std::vector<std::string> labels;
    std::int32_t erasure = -1;
};

ObsAlphabet obs_alphabet(const DiscreteChannel& w) {
    if (!w.labeled())
        throw ConfigError("simulation requires labeled physical channel outputs");
    ObsAlphabet a;
    a.labels = w.labels();
    a.erasure = w.find_output("?");
    if (a.erasure < 0) {
        a.labels.push_back("?");
        a.erasure = static_cast<std::int32_t>(a.labels.size()) - 1;
    }
    return a;
}

// per-position map from observation symbol to equivalent-leaf output index
std::vector<std::vector<std::int32_t>> obs_to_leaf_maps(const ObsAlphabet& obs,
                                                        const ChannelArray& leaves) {
    std::vector<std::vector<std::int32_t>> maps(leaves.size());
    for (int i = 0; i < leaves.size(); ++i) {
        auto& m = maps[i];
        m.assign(obs.labels.size(), -1);
        for (std::size_t s = 0; s < obs.labels.size(); ++s)
            m[s] = leaves.leaves[i].find_output(obs.labels[s]);
    }
    return maps;
}

}  // namespace

double leakage_upper_bound(std::span<const SynthChannelParams> wiretap_params,
                           std::span<const IndexPartition> partitions) {
    if (wiretap_params.size() != partitions.size())
        throw ConfigError("leakage_upper_bound: need one wiretap parameter set per block");
    double total = 0.0;
    for (std::size_t t = 0; t < partitions.size(); ++t) {
        const auto& params = wiretap_params[t];
        const bool exact = params.method == ConstructMethod::exact ||
                           params.method == ConstructMethod::bec_exact;
        auto add = [&](const std::vector<std::int32_t>& set) {
            for (auto i : set) {
                if (exact)
                    total += params.i_cap[i];
                else
                    total += std::sqrt(std::max(0.0, 1.0 - params.z[i] * params.z[i]));
            }
        };
        add(partitions[t].info);
        add(partitions[t].frozen);
    }
    return total;
}

double secrecy_rate(std::span<const IndexPartition> partitions) {
    if (partitions.empty()) throw ConfigError("secrecy_rate: no partitions");
    double bits = 0.0;
    for (const auto& p : partitions) bits += static_cast<double>(p.message_bits());
    return bits / (static_cast<double>(partitions.size()) * partitions[0].n);
}

std::pair<double, double> wilson_interval(long errors, long trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 95%
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = (errors == 0) ? 0.0 : std::max(0.0, center - half);
    const double hi = (errors == trials) ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

SimReport simulate_session(const SessionPlan& plan, const DiscreteChannel& w,
                           const DiscreteChannel& w_tilde, const AdversarySpec& adversary,
                           const SimOptions& options) {
    if (plan.n != adversary.n || plan.t_blocks != adversary.t_blocks)
        throw ConfigError("simulate_session: plan and adversary disagree on N or T");
    if (options.trials < 1) throw ConfigError("simulate_session: trials must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    const auto obs = obs_alphabet(w);
    std::vector<ScTables> tables;
    std::vector<std::vector<std::vector<std::int32_t>>> maps;
    std::vector<std::vector<std::int32_t>> msg_idx;
    tables.reserve(plan.t_blocks);
    for (int t = 0; t < plan.t_blocks; ++t) {
        tables.emplace_back(plan.main_leaves[t]);
        maps.push_back(obs_to_leaf_maps(obs, plan.main_leaves[t]));
        msg_idx.push_back(message_indices(plan.partitions[t]));
    }

    const int chunk = 16;
    const int nchunks = (options.trials + chunk - 1) / chunk;
    std::vector<long> chunk_session_err(nchunks, 0), chunk_block_err(nchunks, 0);

    auto run_chunk = [&](int c) {
        std::vector<std::int32_t> v(plan.n), y(plan.n);
        const int lo = c * chunk, hi = std::min(options.trials, lo + chunk);
        for (int trial = lo; trial < hi; ++trial) {
            Rng rng(derive_seed(options.master_seed, static_cast<std::uint64_t>(trial), 0x01ULL));
            const auto preshared = preshared_bits(
                derive_seed(options.preshared_seed, static_cast<std::uint64_t>(trial)),
                plan.partitions[0].chained.size());
            std::vector<std::uint8_t> chain_enc = preshared;
            std::vector<std::uint8_t> chain_dec = preshared;
            bool session_err = false;
            for (int t = 0; t < plan.t_blocks; ++t) {
                const auto& part = plan.partitions[t];
                const auto msg = rng.bits(msg_idx[t].size());
                const auto enc = encode_block(part, msg, chain_enc, rng);
                chain_enc = enc.relay_out;
                // physical main channel, then the adversary's rewriting
                for (int i = 0; i < plan.n; ++i)
                    v[i] = sample_output(w, enc.x[i], rng.uniform01());
                const auto y_obs = apply_rewrite(v, adversary, t, obs.erasure);
                for (int i = 0; i < plan.n; ++i) {
                    y[i] = maps[t][i][y_obs[i]];
                    if (y[i] < 0)
                        throw ConfigError("received symbol not in equivalent leaf alphabet");
                }
                const auto u_hat = sc_decode_block(tables[t], part, y, chain_dec);
                chain_dec = extract_bits(u_hat, part.relay);
                const auto m_hat = extract_bits(u_hat, msg_idx[t]);
                if (m_hat != msg) {
                    ++chunk_block_err[c];
                    session_err = true;
                }
            }
            if (session_err) ++chunk_session_err[c];
        }
    };
    parallel_for(nchunks, options.threads, run_chunk);

    SimReport rep;
    rep.n = plan.n;
    rep.t_blocks = plan.t_blocks;
    rep.rho_r = adversary.rho_r;
    rep.rho_w = adversary.rho_w;
    rep.beta = plan.beta;
    rep.method = to_string(plan.main_params[0].method);
    rep.trials = options.trials;
    rep.master_seed = options.master_seed;
    rep.preshared_seed = options.preshared_seed;
    for (int c = 0; c < nchunks; ++c) {
        rep.session_errors += chunk_session_err[c];
        rep.block_errors += chunk_block_err[c];
    }
    rep.p_e = static_cast<double>(rep.session_errors) / options.trials;
    std::tie(rep.p_e_lo, rep.p_e_hi) = wilson_interval(rep.session_errors, options.trials);
    rep.leakage_bound_bits = leakage_upper_bound(plan.wiretap_params, plan.partitions);
    rep.secrecy_rate_bits = secrecy_rate(plan.partitions);
    rep.secrecy_capacity_bits = secrecy_capacity(w, w_tilde, adversary.rho_r, adversary.rho_w);
    if (options.exact_leakage) {
        if (plan.t_blocks != 1)
            throw ConfigError("exact leakage enumeration requires T = 1");
        rep.leakage_exact_bits = leakage_exact_small(w_tilde, adversary, plan.partitions[0]);
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

double leakage_exact_small(const DiscreteChannel& w_tilde, const AdversarySpec& adversary,
                           const IndexPartition& part) {
    const int n = part.n;
    if (n > 8) throw BudgetError("exact leakage enumeration is limited to N <= 8");
    if (adversary.n != n) throw ConfigError("leakage_exact_small: adversary and partition N differ");
    if (adversary.t_blocks != 1)
        throw ConfigError("leakage_exact_small: enumeration covers single-block sessions only");
    const auto& read = adversary.read_sets[0];
    const int n_msg = static_cast<int>(part.info.size());     // E empty for T=1
    const int n_fill = static_cast<int>(part.random.size() + part.chained.size());
    const int kz = static_cast<int>(w_tilde.alphabet_size());
    // state budget: message x fills x Eve outcome space
    double states = std::ldexp(1.0, n_msg + n_fill);
    for (std::size_t j = 0; j < read.size(); ++j) states *= kz;
    if (states > std::ldexp(1.0, 26))
        throw BudgetError("exact leakage enumeration exceeds the 2^26 state budget");
    if (n_msg == 0) return 0.0;  // no message, nothing to leak

    std::vector<std::int32_t> fill_idx = part.random;
    fill_idx.insert(fill_idx.end(), part.chained.begin(), part.chained.end());

    std::size_t zspace = 1;
    for (std::size_t j = 0; j < read.size(); ++j) zspace *= kz;

    const std::size_t n_m = std::size_t{1} << n_msg;
    const std::size_t n_f = std::size_t{1} << n_fill;
    std::vector<double> joint(n_m * zspace, 0.0);
    const double w_uf = 1.0 / (static_cast<double>(n_m) * static_cast<double>(n_f));

    std::vector<std::uint8_t> u(n, 0), x(n);
    std::vector<std::size_t> zdig(read.size());
    for (std::size_t m = 0; m < n_m; ++m) {
        for (int k = 0; k < n_msg; ++k) u[part.info[k]] = (m >> k) & 1u;
        for (std::size_t f = 0; f < n_f; ++f) {
            for (int k = 0; k < n_fill; ++k) u[fill_idx[k]] = (f >> k) & 1u;
            x = u;
            gn_transform_inplace(x);
            // enumerate Eve's readings with an odometer over read positions
            std::fill(zdig.begin(), zdig.end(), 0);
            for (std::size_t zf = 0; zf < zspace; ++zf) {
                double p = w_uf;
                for (std::size_t j = 0; j < read.size(); ++j)
                    p *= w_tilde.p(static_cast<int>(zdig[j]), x[read[j]]);
                joint[m * zspace + zf] += p;
                for (std::size_t j = read.size(); j-- > 0;) {
                    if (++zdig[j] < static_cast<std::size_t>(kz)) break;
                    zdig[j] = 0;
                }
            }
        }
    }

    std::vector<double> pz(zspace, 0.0);
    for (std::size_t m = 0; m < n_m; ++m)
        for (std::size_t zf = 0; zf < zspace; ++zf) pz[zf] += joint[m * zspace + zf];
    const double pm = 1.0 / static_cast<double>(n_m);
    double mi = 0.0;
    for (std::size_t m = 0; m < n_m; ++m) {
        for (std::size_t zf = 0; zf < zspace; ++zf) {
            const double j = joint[m * zspace + zf];
            if (j > 0.0) mi += j * std::log2(j / (pm * pz[zf]));
        }
    }
    return std::max(0.0, mi);
}

std::vector<std::vector<std::uint8_t>> gn_matrix(int n) {
    if (n < 1 || (n & (n - 1)) != 0) throw ConfigError("gn_matrix: n must be a power of two");
    int levels = 0;
    for (int m = n; m > 1; m >>= 1) ++levels;
    // F^{xn} by Kronecker powers of F = [[1,0],[1,1]]
    std::vector<std::vector<std::uint8_t>> f = {{1}};
    for (int l = 0; l < levels; ++l) {
        const int m = static_cast<int>(f.size());
        std::vector<std::vector<std::uint8_t>> g(2 * m, std::vector<std::uint8_t>(2 * m, 0));
        for (int i = 0; i < 2 * m; ++i)
            for (int j = 0; j < 2 * m; ++j) {
                // F[a][b] with F = [[1,0],[1,1]]: zero only at (0,1)
                const std::uint8_t fo = (i / m >= j / m) ? 1 : 0;
                g[i][j] = static_cast<std::uint8_t>(fo & f[i % m][j % m]);
            }
        f = std::move(g);
    }
    // bit reversal on the input index: row i of G is row bitrev(i) of F^{xn}
    auto bitrev = [&](int i) {
        int r = 0;
        for (int b = 0; b < levels; ++b) {
            r = (r << 1) | (i & 1);
            i >>= 1;
        }
        return r;
    };
    std::vector<std::vector<std::uint8_t>> g(n);
    for (int i = 0; i < n; ++i) g[i] = f[bitrev(i)];
    return g;
}

DiscreteChannel brute_force_synth(const ChannelArray& leaves, int index0) {
    const int n = leaves.size();
    if (n > 8) throw BudgetError("brute_force_synth is limited to N <= 8");
    if (index0 < 0 || index0 >= n) throw ConfigError("brute_force_synth: index outside [1,N]");
    std::size_t y_total = 1;
    for (const auto& ch : leaves.leaves) {
        y_total *= ch.alphabet_size();
        if (y_total > (std::size_t{1} << 20))
            throw BudgetError("brute_force_synth: output space exceeds 2^20");
    }
    const std::size_t prefixes = std::size_t{1} << index0;
    const std::size_t outputs = y_total * prefixes;
    if (outputs > (std::size_t{1} << 24))
        throw BudgetError("brute_force_synth: channel table exceeds the 2^24 output budget");

    const auto g = gn_matrix(n);
    std::vector<double> p0(outputs, 0.0), p1(outputs, 0.0);
    const double weight = std::ldexp(1.0, -(n - 1));

    std::vector<std::uint8_t> u(n), x(n);
    std::vector<std::size_t> digit(n);
    std::vector<double> pref(n + 1);
    for (std::size_t uv = 0; uv < (std::size_t{1} << n); ++uv) {
        for (int i = 0; i < n; ++i) u[i] = (uv >> i) & 1u;
        for (int j = 0; j < n; ++j) {
            std::uint8_t b = 0;
            for (int i = 0; i < n; ++i) b ^= static_cast<std::uint8_t>(u[i] & g[i][j]);
            x[j] = b;
        }
        std::size_t prefix = 0;
        for (int i = 0; i < index0; ++i) prefix |= static_cast<std::size_t>(u[i]) << i;
        auto& row = (u[index0] == 0) ? p0 : p1;

        // odometer over y with running prefix products, last digit fastest
        std::fill(digit.begin(), digit.end(), 0);
        pref[0] = weight;
        for (int j = 0; j < n; ++j)
            pref[j + 1] = pref[j] * leaves.leaves[j].p(0, x[j]);
        for (std::size_t yf = 0;; ++yf) {
            row[yf * prefixes + prefix] += pref[n];
            int j = n - 1;
            for (; j >= 0; --j) {
                if (++digit[j] < leaves.leaves[j].alphabet_size()) break;
                digit[j] = 0;
            }
            if (j < 0) break;
            for (; j < n; ++j)
                pref[j + 1] = pref[j] * leaves.leaves[j].p(static_cast<int>(digit[j]), x[j]);
        }
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

}  // namespace irpolar
