// Acceptance suite.  Each criterion prints one pass/fail line; the exit
// code is the number of failed criteria.  Run all with no arguments or a
// single criterion by number.
//
// Criteria 3 and 4 are implemented exactly as stated and currently FAIL:
// their tolerances assume asymptotic polarization at desk-scale N.  The
// measured values are printed alongside the stated thresholds; companion
// unit tests (test_polarize.cpp) show the same quantities converging at
// larger N and lower selection rates.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "irpolar/awtc.hpp"
#include "irpolar/csvio.hpp"
#include "irpolar/metrics.hpp"
#include "irpolar/polarize.hpp"
#include "irpolar/rng.hpp"
#include "irpolar/secure_code.hpp"

using namespace irpolar;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- helpers

DiscreteChannel random_channel(Rng& rng, int kind) {
    switch (kind % 3) {
        case 0: return make_bec(rng.uniform01());
        case 1: return make_bsc(rng.uniform01() * 0.5);
        default: {
            std::vector<double> p0(4), p1(4);
            for (auto* row : {&p0, &p1}) {
                double s = 0.0;
                for (auto& p : *row) {
                    p = rng.uniform01() + 1e-9;
                    s += p;
                }
                for (auto& p : *row) p /= s;
                double s2 = 0.0;
                for (double p : *row) s2 += p;
                (*row)[0] += 1.0 - s2;
            }
            return DiscreteChannel(p0, p1);
        }
    }
}

std::vector<double> uniform_eps(int n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xbecULL));  // same stream as the CLI --random-bec
    std::vector<double> eps(n);
    for (auto& e : eps) e = rng.uniform01();
    return eps;
}

// -------------------------------------------------------------- criterion 1

Outcome criterion1() {
    const auto t0 = Clock::now();
    Rng rng(0xacce97ULL);
    double max_cons = 0.0, max_prod = 0.0, max_minus_violation = 0.0, max_bec_gap = 0.0;
    int bec_pairs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto w1 = random_channel(rng, trial);
        const auto w2 = random_channel(rng, trial / 3 + 1);
        const auto minus = kernel_minus(w1, w2);
        const auto plus = kernel_plus(w1, w2);
        const double i1 = capacity(w1), i2 = capacity(w2);
        const double z1 = bhattacharyya(w1), z2 = bhattacharyya(w2);
        max_cons = std::max(max_cons,
                            std::abs(capacity(minus) + capacity(plus) - (i1 + i2)));
        max_prod = std::max(max_prod, std::abs(bhattacharyya(plus) - z1 * z2));
        const double zm = bhattacharyya(minus);
        const double bound = z1 + z2 - z1 * z2;
        max_minus_violation = std::max(max_minus_violation, zm - bound);
        if (trial % 3 == 0 && (trial / 3 + 1) % 3 == 0) {  // both BECs
            ++bec_pairs;
            max_bec_gap = std::max(max_bec_gap, std::abs(zm - bound));
        }
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = max_cons <= 1e-9 && max_prod <= 1e-9 && max_minus_violation <= 1e-9 &&
             max_bec_gap <= 1e-9 && bec_pairs >= 50 && dt < 10.0;
    o.detail = "1000 pairs; |I-+I+-I1-I2|<=" + fmt(max_cons) + ", |Z+-Z1Z2|<=" + fmt(max_prod) +
               ", minus slack<=" + fmt(max_minus_violation) + ", BEC equality gap<=" +
               fmt(max_bec_gap) + " over " + std::to_string(bec_pairs) + " BEC pairs (" +
               fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 2

Outcome criterion2() {
    const auto t0 = Clock::now();
    double max_dz = 0.0, max_di = 0.0;
    for (int n : {2, 4, 8}) {
        for (int profile = 0; profile < 50; ++profile) {
            Rng rng(derive_seed(0xacc2ULL + n, profile));
            std::vector<DiscreteChannel> leaves;
            for (int i = 0; i < n; ++i)
                leaves.push_back(rng.bit() ? make_bec(rng.uniform01())
                                           : make_bsc(rng.uniform01() * 0.5));
            const ChannelArray arr(leaves);
            const auto exact = construct(arr, ConstructMethod::exact);
            for (int i = 0; i < n; ++i) {
                const auto oracle = brute_force_synth(arr, i);
                max_dz = std::max(max_dz, std::abs(bhattacharyya(oracle) - exact.z[i]));
                max_di = std::max(max_di, std::abs(capacity(oracle) - exact.i_cap[i]));
            }
        }
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = max_dz <= 1e-9 && max_di <= 1e-9 && dt < 120.0;
    o.detail = "N in {2,4,8} x 50 profiles; max |dZ|=" + fmt(max_dz) + ", max |dI|=" +
               fmt(max_di) + " (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 3

Outcome criterion3() {
    const auto t0 = Clock::now();
    const int n = 1 << 10;
    const auto eps = uniform_eps(n, 7);
    const auto params = bec_recursion(eps);
    double mean_i = 0.0;
    for (double e : eps) mean_i += 1.0 - e;
    mean_i /= n;
    double hi = 0.0, lo = 0.0;
    for (double ic : params.i_cap) {
        if (ic > 0.99) ++hi;
        if (ic < 0.01) ++lo;
    }
    hi /= n;
    lo /= n;
    const double middle = 1.0 - hi - lo;
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = std::abs(hi - mean_i) <= 0.03 && std::abs(lo - (1.0 - mean_i)) <= 0.03 &&
             middle < 0.10 && dt < 1.0;
    o.detail = "N=2^10 seed 7: frac(i_cap>0.99)=" + fmt(hi) + " vs mean_I=" + fmt(mean_i) +
               " (tol 0.03), frac(<0.01)=" + fmt(lo) + " vs " + fmt(1.0 - mean_i) +
               ", middle=" + fmt(middle) + " (required <0.10) (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 4

Outcome criterion4() {
    const auto t0 = Clock::now();
    Rng rng(derive_seed(7, 0xbecULL));
    std::vector<double> base(64);
    for (auto& e : base) e = rng.uniform01();
    double mean_i = 0.0;
    for (double e : base) mean_i += 1.0 - e;
    mean_i /= 64.0;
    const double rate = 0.8 * mean_i;
    std::vector<double> sums;
    bool decreasing = true;
    for (int n_exp = 6; n_exp <= 12; ++n_exp) {
        std::vector<double> eps;
        eps.reserve(std::size_t{1} << n_exp);
        while (eps.size() < (std::size_t{1} << n_exp))
            eps.insert(eps.end(), base.begin(), base.end());
        sums.push_back(selected_z_sum(bec_recursion(eps), rate));
        if (sums.size() > 1 && sums.back() >= sums[sums.size() - 2]) decreasing = false;
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = decreasing && sums.back() < 1e-4 && dt < 5.0;
    std::string seq;
    for (double s : sums) seq += fmt(s) + " ";
    o.detail = "R=0.8*mean(I)=" + fmt(rate) + "; sums over N=2^6..2^12: " + seq +
               (decreasing ? "(strictly decreasing) " : "(NOT strictly decreasing) ") +
               "final vs 1e-4 threshold (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 5

Outcome criterion5() {
    const auto t0 = Clock::now();
    Rng rng(0xe975ULL);
    double worst_main = 0.0, worst_wire = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 32;
        const int kr = static_cast<int>(rng.below(n + 1));
        const int kw = static_cast<int>(rng.below(n + 1));
        const auto adv =
            AdversarySpec::random(n, 1, kr / static_cast<double>(n), kw / static_cast<double>(n),
                                  derive_seed(0x5e75ULL, trial));
        const auto w = random_channel(rng, trial);
        const auto wt = random_channel(rng, trial + 1);
        const auto eq = equivalent_channels(w, wt, adv, 0);
        double main_sum = 0.0, wire_sum = 0.0;
        for (const auto& leaf : eq.main_eq.leaves) main_sum += capacity(leaf);
        for (const auto& leaf : eq.wiretap_eq.leaves) wire_sum += capacity(leaf);
        worst_main = std::max(worst_main,
                              std::abs(main_sum - (1.0 - adv.rho_w) * n * capacity(w)));
        worst_wire = std::max(worst_wire, std::abs(wire_sum - adv.rho_r * n * capacity(wt)));
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = worst_main <= 1e-6 && worst_wire <= 1e-6 && dt < 5.0;
    o.detail = "100 random specs at N=32; max main residual=" + fmt(worst_main) +
               ", max wiretap residual=" + fmt(worst_wire) + " (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 6

Outcome criterion6() {
    const auto t0 = Clock::now();
    const int n = 1 << 10;
    const double rho_r = 0.25, rho_w = 0.25;
    const auto adv = AdversarySpec::random(n, 1, rho_r, rho_w, 0x6adULL);
    const auto w = make_bec(0.0);
    const auto plan = plan_session(w, w, adv, 0.3);
    const auto& zw = plan.main_params[0].z;
    const auto& zr = plan.wiretap_params[0].z;
    bool exact01 = true;
    long count_w1 = 0, count_r0 = 0;
    for (int i = 0; i < n; ++i) {
        if (zw[i] != 0.0 && zw[i] != 1.0) exact01 = false;
        if (zr[i] != 0.0 && zr[i] != 1.0) exact01 = false;
        if (zw[i] == 1.0) ++count_w1;
        if (zr[i] == 0.0) ++count_r0;
    }
    const double leak = leakage_upper_bound(plan.wiretap_params, plan.partitions);
    const double rate = secrecy_rate(plan.partitions);
    const double target = 1.0 - rho_r - rho_w;
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = exact01 && count_w1 == static_cast<long>(n * rho_w) &&
             count_r0 == static_cast<long>(n * rho_r) && leak == 0.0 &&
             std::abs(rate - target) <= 0.05 && dt < 2.0;
    o.detail = "z values exactly 0/1: " + std::string(exact01 ? "yes" : "NO") +
               "; |z_w=1|/N=" + fmt(count_w1 / static_cast<double>(n)) + ", |z_r=0|/N=" +
               fmt(count_r0 / static_cast<double>(n)) + "; leakage bound=" + fmt(leak) +
               "; rate=" + fmt(rate) + " vs " + fmt(target) + " +/-0.05 (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 7

// golden regression value frozen from the first verified run
constexpr long kFrozenSessionErrors = 3;

Outcome criterion7() {
    const auto t0 = Clock::now();
    const int n = 256, t_blocks = 4;
    // beta stays a free design parameter here (the criterion fixes N, T,
    // channels, fractions and the threshold); 0.45 keeps the partition
    // conservative enough for desk-scale N
    const double beta = 0.45;
    const auto adv = AdversarySpec::random(n, t_blocks, 0.25, 0.125, 7);
    const auto w = make_bec(0.1);
    const auto wt = make_bec(0.4);
    const auto plan = plan_session(w, wt, adv, beta);
    SimOptions opt;
    opt.trials = 1000;
    opt.master_seed = 20250810;
    opt.preshared_seed = 11;
    opt.threads = 4;
    const auto rep = simulate_session(plan, w, wt, adv, opt);
    const double dt = seconds_since(t0);
    Outcome o;
    const bool frozen_ok =
        (kFrozenSessionErrors < 0) || (rep.session_errors == kFrozenSessionErrors);
    o.pass = rep.p_e < 0.02 && frozen_ok && dt < 120.0;
    o.detail = "N=256 T=4 BEC(0.1)/BEC(0.4) rho_r=0.25 rho_w=0.125 beta=" + fmt(beta) +
               ", 1000 trials: session errors=" + std::to_string(rep.session_errors) +
               " (p_e=" + fmt(rep.p_e) + ", required <0.02)" +
               (kFrozenSessionErrors >= 0
                    ? (", frozen=" + std::to_string(kFrozenSessionErrors))
                    : "") +
               " rate=" + fmt(rep.secrecy_rate_bits) + " (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 8

Outcome criterion8() {
    const auto t0 = Clock::now();
    const auto adv = AdversarySpec::explicit_sets(4, 0.5, 0.0, {{0, 2}}, {{}});
    // noiseless wiretap: exact leakage must be exactly zero
    const auto plan0 = plan_session(make_bec(0.0), make_bec(0.0), adv, 0.3);
    const double mi0 = leakage_exact_small(make_bec(0.0), adv, plan0.partitions[0]);
    // noisy wiretap: exact leakage bounded by the analytic bound
    const auto plan1 = plan_session(make_bec(0.0), make_bec(0.5), adv, 0.3);
    const double mi1 = leakage_exact_small(make_bec(0.5), adv, plan1.partitions[0]);
    const double bound1 = leakage_upper_bound(plan1.wiretap_params, plan1.partitions);
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = mi0 == 0.0 && mi1 <= bound1 + 1e-9 && !plan0.partitions[0].info.empty() &&
             dt < 30.0;
    o.detail = "N=4: noiseless wiretap I(M;Z)=" + fmt(mi0) + " (|I|=" +
               std::to_string(plan0.partitions[0].info.size()) + "); BEC(0.5) wiretap I(M;Z)=" +
               fmt(mi1) + " <= bound " + fmt(bound1) + " (" + fmt(dt) + " s)";
    return o;
}

// -------------------------------------------------------------- criterion 9

Outcome criterion9() {
    const auto t0 = Clock::now();
    const double beta = 0.3;
    const auto w = make_bec(0.1);
    const auto wt = make_bec(0.4);
    const double cap = secrecy_capacity(w, wt, 0.25, 0.125);
    std::vector<double> rates;
    for (int n_exp : {8, 10, 12}) {
        const int n = 1 << n_exp;
        const auto adv = AdversarySpec::random(n, 4, 0.25, 0.125, 0x916ULL + n_exp);
        const auto plan = plan_session(w, wt, adv, beta);
        rates.push_back(secrecy_rate(plan.partitions));
    }
    const double dt = seconds_since(t0);
    Outcome o;
    const bool nondecreasing = rates[0] <= rates[1] && rates[1] <= rates[2];
    const bool bounded = rates[0] <= cap + 0.05 && rates[1] <= cap + 0.05 &&
                         rates[2] <= cap + 0.05;
    o.pass = nondecreasing && bounded && dt < 10.0;
    o.detail = "beta=0.3, T=4: rates " + fmt(rates[0]) + " -> " + fmt(rates[1]) + " -> " +
               fmt(rates[2]) + " toward capacity " + fmt(cap) + " (" + fmt(dt) + " s)";
    return o;
}

// ------------------------------------------------------------- criterion 10

std::string run_and_capture_file(const std::string& args, const std::filesystem::path& file) {
    std::filesystem::remove(file);
    const std::string cmd = std::string(IRPOLAR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) return "<command failed>";
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    const auto t0 = Clock::now();
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "irpolar_acceptance";
    fs::create_directories(dir);
    bool all_equal = true;
    std::string which;

    {  // polarize
        const auto out = dir / "p_index.csv";
        const std::string args = "polarize --random-bec 64 7 --out-prefix " +
                                 (dir / "p").string();
        const auto a = run_and_capture_file(args, out);
        const auto b = run_and_capture_file(args, out);
        if (a != b || a.empty()) {
            all_equal = false;
            which += "polarize ";
        }
    }
    {  // capacity
        const auto out = dir / "cap.csv";
        const std::string args =
            "capacity --main bec:0.1 --wiretap bec:0.4 --rho-r 0.3 --rho-w 0.2 --out " +
            out.string();
        const auto a = run_and_capture_file(args, out);
        const auto b = run_and_capture_file(args, out);
        if (a != b || a.empty()) {
            all_equal = false;
            which += "capacity ";
        }
    }
    {  // simulate across thread counts
        const auto out = dir / "sim.csv";
        const std::string base =
            "simulate --main bec:0.1 --wiretap bec:0.4 --n 32 --t 2 --rho-r 0.25 --rho-w 0.125 "
            "--trials 60 --seed 13 --adversary-seed 3 --preshared-seed 5 --out " +
            out.string();
        const auto a = run_and_capture_file(base + " --threads 1", out);
        const auto b = run_and_capture_file(base + " --threads 8", out);
        const auto c = run_and_capture_file(base + " --threads 3", out);
        if (a != b || b != c || a.empty()) {
            all_equal = false;
            which += "simulate ";
        }
    }
    {  // oracle
        const auto profile = dir / "leaves.txt";
        std::ofstream(profile) << "bec 0.2\nbsc 0.1\nbec 0.5\nbsc 0.3\n";
        const auto out = dir / "oracle.csv";
        const std::string args =
            "oracle --profile " + profile.string() + " --out " + out.string();
        const auto a = run_and_capture_file(args, out);
        const auto b = run_and_capture_file(args, out);
        if (a != b || a.empty()) {
            all_equal = false;
            which += "oracle ";
        }
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = all_equal;
    o.detail = all_equal ? ("all four commands byte-identical across reruns and thread counts (" +
                            fmt(dt) + " s)")
                         : ("MISMATCH in: " + which + "(" + fmt(dt) + " s)");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"kernel identities (conservation, Z product, Z minus)", criterion1},
        {"oracle equivalence of construct(exact) for N in {2,4,8}", criterion2},
        {"polarization fractions at N=2^10 (stated tolerances)", criterion3},
        {"selected z-sum decay at R=0.8*mean(I) (stated thresholds)", criterion4},
        {"equivalent-channel capacity sum identities", criterion5},
        {"noiseless A-WTC exactness and secrecy rate", criterion6},
        {"end-to-end reliability at N=256, T=4", criterion7},
        {"exact leakage at tiny scale", criterion8},
        {"secrecy-rate convergence across N", criterion9},
        {"CLI determinism under reruns and thread counts", criterion10},
    };

    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
        if (selected < 1 || selected > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [1.." << criteria.size() << "]\n";
            return 64;
        }
    }

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (selected && static_cast<int>(i + 1) != selected) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
                  << criteria[i].first << " :: " << o.detail << "\n";
    }
    return failures;
}
