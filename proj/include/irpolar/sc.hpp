// Successive-cancellation likelihood recursion over heterogeneous leaves.
//
// L_M^(i) follows the same pairing as the channel construction: the first
// half of the leaf range carries u_odd ^ u_even, the second half u_even.
// Log domain, saturated to +/-40 so near-noiseless leaves stay finite.
// Erasure-like outputs (equal rows) give LLR 0 without special casing.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "irpolar/polarize.hpp"

namespace irpolar {

inline constexpr double kLlrSaturation = 40.0;

double llr_combine_f(double a, double b);                 // minus branch
double llr_combine_g(double a, double b, std::uint8_t u);  // plus branch, known u1

// Per-leaf LLR lookup and sampling tables; shared, immutable.
class ScTables {
  public:
    explicit ScTables(const ChannelArray& leaves);

    int block_size() const { return n_; }
    double leaf_llr(int leaf, std::int32_t y) const { return llr_[leaf][y]; }

  private:
    int n_;
    std::vector<std::vector<double>> llr_;
};

// One decoding/estimation context; owns scratch, so one instance per thread.
class ScComputer {
  public:
    explicit ScComputer(const ScTables& tables);

    // LLR of u^i (0-based) given received symbols y (leaf output indices)
    // and the i previous bits prefix[0..i-1].
    double llr(std::span<const std::int32_t> y, std::span<const std::uint8_t> prefix, int i);

  private:
    double recurse(int leaf_off, int m, std::span<const std::int32_t> y,
                   const std::uint8_t* prefix, int target, int depth);

    const ScTables* tables_;
    std::vector<std::vector<std::uint8_t>> fold_;  // per-depth prefix scratch
};

// Inverse-CDF sample of a channel output given input bit x and u ~ U[0,1).
std::int32_t sample_output(const DiscreteChannel& ch, int x, double u01);

// Chunked deterministic parallel loop: fn(i) for i in [0, count).
// fn must only write state owned by iteration i.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace irpolar
