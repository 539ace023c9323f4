#include "irpolar/awtc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irpolar {

int AdversarySpec::set_size(int n, double rho) {
    return static_cast<int>(std::llround(n * rho));
}

AdversarySpec AdversarySpec::random(int n, int t_blocks, double rho_r, double rho_w,
                                    std::uint64_t seed) {
    if (n < 1 || t_blocks < 1) throw ConfigError("adversary spec needs n >= 1 and T >= 1");
    if (!(rho_r >= 0.0 && rho_r <= 1.0 && rho_w >= 0.0 && rho_w <= 1.0))
        throw ConfigError("read/write fractions must lie in [0,1]");
    AdversarySpec spec;
    spec.n = n;
    spec.t_blocks = t_blocks;
    spec.rho_r = rho_r;
    spec.rho_w = rho_w;
    const int kr = set_size(n, rho_r), kw = set_size(n, rho_w);
    for (int t = 0; t < t_blocks; ++t) {
        Rng rr(derive_seed(seed, static_cast<std::uint64_t>(t), 0x72ULL));
        Rng rw(derive_seed(seed, static_cast<std::uint64_t>(t), 0x77ULL));
        spec.read_sets.push_back(sample_subset(n, kr, rr));
        spec.write_sets.push_back(sample_subset(n, kw, rw));
    }
    return spec;
}

AdversarySpec AdversarySpec::explicit_sets(int n, double rho_r, double rho_w,
                                           std::vector<std::vector<std::int32_t>> read_sets,
                                           std::vector<std::vector<std::int32_t>> write_sets) {
    if (read_sets.size() != write_sets.size() || read_sets.empty())
        throw ConfigError("adversary sets: need the same nonzero number of read and write blocks");
    AdversarySpec spec;
    spec.n = n;
    spec.t_blocks = static_cast<int>(read_sets.size());
    spec.rho_r = rho_r;
    spec.rho_w = rho_w;
    auto check = [&](std::vector<std::int32_t>& s, int want, const char* what, int t) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ConfigError(std::string(what) + " set of block " + std::to_string(t + 1) +
                              " has duplicate indices");
        for (auto i : s)
            if (i < 0 || i >= n)
                throw ConfigError(std::string(what) + " set of block " + std::to_string(t + 1) +
                                  " has an index outside [1,N]");
        if (static_cast<int>(s.size()) != want)
            throw ConfigError(std::string(what) + " set of block " + std::to_string(t + 1) +
                              " has " + std::to_string(s.size()) + " indices, expected " +
                              std::to_string(want));
    };
    for (int t = 0; t < spec.t_blocks; ++t) {
        check(read_sets[t], set_size(n, rho_r), "read", t);
        check(write_sets[t], set_size(n, rho_w), "write", t);
    }
    spec.read_sets = std::move(read_sets);
    spec.write_sets = std::move(write_sets);
    return spec;
}

namespace {

void check_block(const AdversarySpec& spec, int t) {
    if (t < 0 || t >= spec.t_blocks)
        throw ConfigError("block index " + std::to_string(t + 1) + " outside [1," +
                          std::to_string(spec.t_blocks) + "]");
}

std::vector<bool> mask_of(const std::vector<std::int32_t>& set, int n) {
    std::vector<bool> m(n, false);
    for (auto i : set) m[i] = true;
    return m;
}

}  // namespace

std::vector<std::int32_t> apply_rewrite(const std::vector<std::int32_t>& v,
                                        const AdversarySpec& spec, int t,
                                        std::int32_t erasure_sym) {
    check_block(spec, t);
    std::vector<std::int32_t> y = v;
    for (auto i : spec.write_sets[t]) y[i] = erasure_sym;
    return y;
}

std::vector<std::int32_t> apply_read(const std::vector<std::int32_t>& v_tilde,
                                     const AdversarySpec& spec, int t,
                                     std::int32_t erasure_sym) {
    check_block(spec, t);
    std::vector<std::int32_t> z(v_tilde.size(), erasure_sym);
    for (auto i : spec.read_sets[t]) z[i] = v_tilde[i];
    return z;
}

ChannelArray equivalent_main(const DiscreteChannel& w, const AdversarySpec& spec, int t) {
    check_block(spec, t);
    const auto rewritten = mask_of(spec.write_sets[t], spec.n);
    std::vector<DiscreteChannel> leaves;
    leaves.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i)
        leaves.push_back(cascade(
            w, degenerate_bec(rewritten[i] ? DegenerateBec::eps1 : DegenerateBec::eps0)));
    return ChannelArray(std::move(leaves));
}

ChannelArray equivalent_wiretap(const DiscreteChannel& w_tilde, const AdversarySpec& spec, int t) {
    check_block(spec, t);
    const auto read = mask_of(spec.read_sets[t], spec.n);
    std::vector<DiscreteChannel> leaves;
    leaves.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i)
        leaves.push_back(cascade(
            w_tilde, degenerate_bec(read[i] ? DegenerateBec::eps0 : DegenerateBec::eps1)));
    return ChannelArray(std::move(leaves));
}

EquivalentChannels equivalent_channels(const DiscreteChannel& w, const DiscreteChannel& w_tilde,
                                       const AdversarySpec& spec, int t) {
    return {equivalent_main(w, spec, t), equivalent_wiretap(w_tilde, spec, t)};
}

double secrecy_capacity(const DiscreteChannel& w, const DiscreteChannel& w_tilde, double rho_r,
                        double rho_w) {
    if (!(rho_r >= 0.0 && rho_r <= 1.0 && rho_w >= 0.0 && rho_w <= 1.0))
        throw ConfigError("read/write fractions must lie in [0,1]");
    const double cs = (1.0 - rho_w) * capacity(w) - rho_r * capacity(w_tilde);
    return std::max(0.0, cs);
}

}  // namespace irpolar
