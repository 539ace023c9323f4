// Static adversarial wiretap channel model.
//
// The adversary rewrites positions S_w of the main-channel output to "?"
// and reads positions S_r of the wiretap-channel output (the rest of its
// view is "?").  Both set families are fixed per block and known to the
// legitimate parties.  Each behavior has an equivalent channel form:
// cascading the physical channel with a degenerate BEC (eps 0 or 1).

#pragma once

#include <cstdint>
#include <vector>

#include "irpolar/channel.hpp"
#include "irpolar/polarize.hpp"
#include "irpolar/rng.hpp"

namespace irpolar {

struct AdversarySpec {
    int n = 0;  // block length
    int t_blocks = 0;
    double rho_r = 0.0;
    double rho_w = 0.0;
    std::vector<std::vector<std::int32_t>> read_sets;   // S_r per block, 0-based ascending
    std::vector<std::vector<std::int32_t>> write_sets;  // S_w per block

    // |S_r| = round(n*rho_r), |S_w| = round(n*rho_w), half away from zero.
    static int set_size(int n, double rho);

    // uniformly random sets per block
    static AdversarySpec random(int n, int t_blocks, double rho_r, double rho_w,
                                std::uint64_t seed);
    // explicit sets; sizes and ranges validated
    static AdversarySpec explicit_sets(int n, double rho_r, double rho_w,
                                       std::vector<std::vector<std::int32_t>> read_sets,
                                       std::vector<std::vector<std::int32_t>> write_sets);
};

// y[i] = erasure_sym for i in S_w^t, else v[i]
std::vector<std::int32_t> apply_rewrite(const std::vector<std::int32_t>& v,
                                        const AdversarySpec& spec, int t,
                                        std::int32_t erasure_sym);

// z[i] = v_tilde[i] for i in S_r^t, else erasure_sym
std::vector<std::int32_t> apply_read(const std::vector<std::int32_t>& v_tilde,
                                     const AdversarySpec& spec, int t,
                                     std::int32_t erasure_sym);

// Equivalent leaf arrays for block t.  Main: rewritten positions are
// cascaded with the full-erasure BEC, the rest pass through unchanged.
// Wiretap: read positions pass through, the rest are fully erased.
ChannelArray equivalent_main(const DiscreteChannel& w, const AdversarySpec& spec, int t);
ChannelArray equivalent_wiretap(const DiscreteChannel& w_tilde, const AdversarySpec& spec, int t);

struct EquivalentChannels {
    ChannelArray main_eq;
    ChannelArray wiretap_eq;
};

EquivalentChannels equivalent_channels(const DiscreteChannel& w, const DiscreteChannel& w_tilde,
                                       const AdversarySpec& spec, int t);

// (1-rho_w) I(W) - rho_r I(W~), clamped at 0.
double secrecy_capacity(const DiscreteChannel& w, const DiscreteChannel& w_tilde, double rho_r,
                        double rho_w);

}  // namespace irpolar
