// Irregular channel polarization over N heterogeneous binary-input leaves.
//
// The 2x2 kernel pair (W1,W2) -> (W-, W+):
//
//   W-(y1,y2     | u1) = 1/2 sum_{u2} W1(y1|u1^u2) W2(y2|u2)
//   W+((y1,y2),u1| u2) = 1/2        W1(y1|u1^u2) W2(y2|u2)
//
// is applied level by level to an array of N = 2^n leaf channels: at level
// q (block size Q = 2^q) the element j of block 2k combines with element j
// of block 2k+1, and the minus/plus results land interleaved at local
// positions 2j and 2j+1 of the merged block.  With leaves indexed by
// codeword position this reproduces the synthesized channels of the
// transform x = u * G_N, G_N = R * F^{xn} (bit-reversal included); the
// brute-force oracle in metrics pins that convention in tests.

#pragma once

#include <cstdint>
#include <vector>

#include "irpolar/channel.hpp"

namespace irpolar {

struct ChannelArray {
    std::vector<DiscreteChannel> leaves;

    explicit ChannelArray(std::vector<DiscreteChannel> l);

    int size() const { return static_cast<int>(leaves.size()); }
    int levels() const;  // log2(N)

    // erasure probabilities when every leaf is BEC-equivalent
    std::optional<std::vector<double>> erasure_probs() const;
};

enum class ConstructMethod { exact, bec_exact, merge, monte_carlo };

const char* to_string(ConstructMethod m);

struct ConstructOptions {
    int mu = 128;                             // merge: output alphabet cap
    int trials = 10000;                       // monte_carlo: trials (each covers all indices)
    std::uint64_t seed = 0;                   // monte_carlo
    int threads = 1;                          // monte_carlo trial parallelism
    std::size_t alphabet_budget = 1u << 22;   // exact: per-channel alphabet guard
};

struct SynthChannelParams {
    std::vector<double> z;      // Z(W_N^(i))
    std::vector<double> i_cap;  // I(W_N^(i))
    ConstructMethod method = ConstructMethod::bec_exact;
    std::vector<DiscreteChannel> exact_channels;  // exact method only

    int size() const { return static_cast<int>(z.size()); }
};

// Kernel operations; output alphabets are positional:
//   minus: (y1,y2)     at index  y1*|Y2| + y2
//   plus:  ((y1,y2),u1) at index (y1*|Y2| + y2)*2 + u1
DiscreteChannel kernel_minus(const DiscreteChannel& w1, const DiscreteChannel& w2);
DiscreteChannel kernel_plus(const DiscreteChannel& w1, const DiscreteChannel& w2);

// Exact synthesized capacities for BEC leaves via the closed-form
// recursion I- = I1*I2, I+ = I1+I2-I1*I2; z = 1 - i_cap.
SynthChannelParams bec_recursion(const std::vector<double>& eps);

SynthChannelParams construct(const ChannelArray& leaves, ConstructMethod method,
                             const ConstructOptions& options = {});

struct PolarizedSets {
    std::vector<std::int32_t> high;  // z >= 1 - delta  (full noise)
    std::vector<std::int32_t> low;   // z <= delta      (noiseless)
    double beta = 0.0;
    double delta = 0.0;
};

// delta = 2^(-N^beta); requires 0 < beta < 1/2.
PolarizedSets polarized_sets(const SynthChannelParams& params, double beta);

// Sum of z over the floor(N*rate) indices with smallest z.
// Requires 0 < rate < mean(i_cap).
double selected_z_sum(const SynthChannelParams& params, double rate);

}  // namespace irpolar
