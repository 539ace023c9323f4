// Session simulation, reliability/leakage accounting, and exact
// brute-force oracles for small N.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irpolar/awtc.hpp"
#include "irpolar/polarize.hpp"
#include "irpolar/secure_code.hpp"

namespace irpolar {

// Everything derived from (W, W~, adversary, beta) that encoding/decoding
// needs, computed once per session configuration.
struct SessionPlan {
    int n = 0;
    int t_blocks = 0;
    double beta = 0.0;
    double delta = 0.0;
    std::vector<IndexPartition> partitions;        // relay sets filled
    std::vector<SynthChannelParams> main_params;   // equivalent main, per block
    std::vector<SynthChannelParams> wiretap_params;
    std::vector<ChannelArray> main_leaves;         // equivalent main arrays
};

// bec_exact when every leaf is BEC-equivalent, otherwise the given fallback
ConstructMethod pick_method(const ChannelArray& leaves, ConstructMethod fallback);

SessionPlan plan_session(const DiscreteChannel& w, const DiscreteChannel& w_tilde,
                         const AdversarySpec& adversary, double beta,
                         ConstructMethod fallback_method = ConstructMethod::merge,
                         const ConstructOptions& construct_options = {});

struct SimOptions {
    int trials = 1000;
    std::uint64_t master_seed = 1;
    std::uint64_t preshared_seed = 2;
    int threads = 1;
    bool exact_leakage = false;  // enumerate I(M;Z) when the budget allows
};

struct SimReport {
    // inputs echoed
    int n = 0;
    int t_blocks = 0;
    double rho_r = 0.0, rho_w = 0.0, beta = 0.0;
    std::string main_desc, wiretap_desc, method;
    int trials = 0;
    std::uint64_t master_seed = 0, preshared_seed = 0, adversary_seed = 0;
    // results
    long block_errors = 0;
    long session_errors = 0;
    double p_e = 0.0;
    double p_e_lo = 0.0, p_e_hi = 0.0;  // Wilson 95%
    double leakage_bound_bits = 0.0;
    std::optional<double> leakage_exact_bits;
    double secrecy_rate_bits = 0.0;
    double secrecy_capacity_bits = 0.0;
    // summary-only metadata (never serialized to CSV; reruns stay identical)
    double runtime_seconds = 0.0;
};

SimReport simulate_session(const SessionPlan& plan, const DiscreteChannel& w,
                           const DiscreteChannel& w_tilde, const AdversarySpec& adversary,
                           const SimOptions& options);

// sum over blocks of sum_{i in I^t u F^t} I(W_rN^(i)); exact and bec_exact
// use i_cap directly, other methods the bound sqrt(1 - z^2).
double leakage_upper_bound(std::span<const SynthChannelParams> wiretap_params,
                           std::span<const IndexPartition> partitions);

// Exact I(M;Z) by joint enumeration (single block).  Message on I,
// uniform fills on R and B, frozen 0; Eve sees the read positions through
// w_tilde.  Refuses instances whose state space exceeds 2^26.
double leakage_exact_small(const DiscreteChannel& w_tilde, const AdversarySpec& adversary,
                           const IndexPartition& part);

double secrecy_rate(std::span<const IndexPartition> partitions);

// (1/(1+z^2/n)) Wilson score interval at 95%
std::pair<double, double> wilson_interval(long errors, long trials);

// --- brute-force oracle --------------------------------------------------
//
// W_N^(i)(y^{1:N}, u^{1:i-1} | u^i) computed directly from
// W^{1:N}(y | u G_N): average over uniform u^{i+1:N}.  The G_N here is an
// explicit matrix built independently of gn_transform.  index0 is 0-based.
// Requires N <= 8 and an output table within budget.

DiscreteChannel brute_force_synth(const ChannelArray& leaves, int index0);

// G_N = R F^{xn} as a row-major 0/1 matrix; x = u G is
// x[j] = xor_i u[i] G[i][j].
std::vector<std::vector<std::uint8_t>> gn_matrix(int n);

}  // namespace irpolar
