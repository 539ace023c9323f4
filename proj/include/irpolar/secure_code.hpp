// Per-block index partition, multi-block chaining, encoding and SC decoding.
//
// Partition of [0,N) from the polarized sets of the two equivalent-channel
// arrays (L = noiseless-for-Bob, H = full-noise-for-Eve):
//
//   I = L & H     information bits (reliable and secret)
//   F = ~L & H    frozen bits, fixed to 0
//   R = L & ~H    uniform random fill (reliable, not secret)
//   B = ~L & ~H   bits Bob cannot decode and Eve may see: pre-shared for
//                 the first block, afterwards carried inside E of the
//                 previous block (E subset of I, |E^t| = |B^{t+1}|)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irpolar/polarize.hpp"
#include "irpolar/rng.hpp"
#include "irpolar/sc.hpp"

namespace irpolar {

struct IndexPartition {
    int n = 0;
    std::vector<std::int32_t> info;     // I
    std::vector<std::int32_t> frozen;   // F
    std::vector<std::int32_t> random;   // R
    std::vector<std::int32_t> chained;  // B
    std::vector<std::int32_t> relay;    // E, subset of I (chain_plan fills it)

    int message_bits() const { return static_cast<int>(info.size() - relay.size()); }
};

IndexPartition partition(const std::vector<std::int32_t>& low_main,
                         const std::vector<std::int32_t>& high_wiretap, int n);

// Fills relay sets: E^t = the |B^{t+1}| indices of I^t with smallest main-
// channel z (ties to the lowest index); E^T = empty.  Throws
// InfeasibleChainError when |B^{t+1}| > |I^t|.
void chain_plan(std::vector<IndexPartition>& partitions,
                const std::vector<std::vector<double>>& z_main);

// x = u * G_N over GF(2), G_N = R F^{xn} (bit reversal included).
// Self-inverse.
void gn_transform_inplace(std::span<std::uint8_t> u);
std::vector<std::uint8_t> gn_transform(std::vector<std::uint8_t> u);

struct EncodedBlock {
    std::vector<std::uint8_t> u;
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> relay_out;  // u[E^t], feeds B^{t+1}
};

// chain_in carries the B^t values: pre-shared bits for the first block,
// the previous block's relay_out afterwards.  R and E get fresh bits from
// rng (the encoder's seeded generator).
EncodedBlock encode_block(const IndexPartition& part, std::span<const std::uint8_t> message,
                          std::span<const std::uint8_t> chain_in, Rng& rng);

// SC decode of one block.  y holds leaf-alphabet output indices for the
// equivalent main channels behind tables.  chain_in as in encode_block
// (the decoder's view: pre-shared or previously decoded relay bits).
// Ties (LLR exactly 0) resolve to 0.
std::vector<std::uint8_t> sc_decode_block(const ScTables& tables, const IndexPartition& part,
                                          std::span<const std::int32_t> y,
                                          std::span<const std::uint8_t> chain_in);

std::vector<std::uint8_t> extract_bits(std::span<const std::uint8_t> u,
                                       const std::vector<std::int32_t>& idx);

// message positions I \ E, ascending
std::vector<std::int32_t> message_indices(const IndexPartition& part);

// pre-shared bits for the first block, derived from a seed both parties hold
std::vector<std::uint8_t> preshared_bits(std::uint64_t seed, std::size_t count);

}  // namespace irpolar
