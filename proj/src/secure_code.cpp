#include "irpolar/secure_code.hpp"

#include <algorithm>
#include <string>

namespace irpolar {

IndexPartition partition(const std::vector<std::int32_t>& low_main,
                         const std::vector<std::int32_t>& high_wiretap, int n) {
    std::vector<bool> low(n, false), high(n, false);
    for (auto i : low_main) {
        if (i < 0 || i >= n) throw ConfigError("partition: low set index outside [1,N]");
        low[i] = true;
    }
    for (auto i : high_wiretap) {
        if (i < 0 || i >= n) throw ConfigError("partition: high set index outside [1,N]");
        high[i] = true;
    }
    IndexPartition p;
    p.n = n;
    for (int i = 0; i < n; ++i) {
        if (low[i] && high[i])
            p.info.push_back(i);
        else if (!low[i] && high[i])
            p.frozen.push_back(i);
        else if (low[i] && !high[i])
            p.random.push_back(i);
        else
            p.chained.push_back(i);
    }
    return p;
}

void chain_plan(std::vector<IndexPartition>& partitions,
                const std::vector<std::vector<double>>& z_main) {
    if (partitions.size() != z_main.size())
        throw ConfigError("chain_plan: need one z vector per block");
    const int t_blocks = static_cast<int>(partitions.size());
    for (int t = 0; t < t_blocks; ++t) {
        auto& part = partitions[t];
        part.relay.clear();
        const int need = (t + 1 < t_blocks)
                             ? static_cast<int>(partitions[t + 1].chained.size())
                             : 0;  // E^T stays empty
        if (need == 0) continue;
        if (need > static_cast<int>(part.info.size()))
            throw InfeasibleChainError(
                "block " + std::to_string(t + 2) + " needs " + std::to_string(need) +
                " chained bits but block " + std::to_string(t + 1) + " has only " +
                std::to_string(part.info.size()) + " information indices");
        std::vector<std::int32_t> byz = part.info;
        std::stable_sort(byz.begin(), byz.end(), [&](std::int32_t a, std::int32_t b) {
            return z_main[t][a] < z_main[t][b];
        });
        part.relay.assign(byz.begin(), byz.begin() + need);
        std::sort(part.relay.begin(), part.relay.end());
    }
}

void gn_transform_inplace(std::span<std::uint8_t> u) {
    const std::size_t n = u.size();
    if (n == 0 || (n & (n - 1)) != 0) throw ConfigError("gn_transform: length must be 2^n");
    std::vector<std::uint8_t> scratch(n);
    const auto rec = [&](auto&& self, std::uint8_t* v, std::size_t m) -> void {
        if (m == 1) return;
        for (std::size_t j = 0; j < m / 2; ++j) {
            scratch[j] = static_cast<std::uint8_t>(v[2 * j] ^ v[2 * j + 1]);
            scratch[m / 2 + j] = v[2 * j + 1];
        }
        std::copy(scratch.begin(), scratch.begin() + m, v);
        self(self, v, m / 2);
        self(self, v + m / 2, m / 2);
    };
    rec(rec, u.data(), n);
}

std::vector<std::uint8_t> gn_transform(std::vector<std::uint8_t> u) {
    gn_transform_inplace(u);
    return u;
}

namespace {

// u-index -> role/value lookup used by both encode and decode
enum class Role : std::uint8_t { info, frozen, random, chained };

std::vector<Role> roles_of(const IndexPartition& p) {
    std::vector<Role> roles(p.n, Role::frozen);
    for (auto i : p.info) roles[i] = Role::info;
    for (auto i : p.frozen) roles[i] = Role::frozen;
    for (auto i : p.random) roles[i] = Role::random;
    for (auto i : p.chained) roles[i] = Role::chained;
    return roles;
}

void check_partition_cover(const IndexPartition& p) {
    const std::size_t total =
        p.info.size() + p.frozen.size() + p.random.size() + p.chained.size();
    if (static_cast<int>(total) != p.n)
        throw ConfigError("partition does not cover [1,N] exactly");
}

}  // namespace

std::vector<std::int32_t> message_indices(const IndexPartition& part) {
    std::vector<std::int32_t> out;
    out.reserve(part.info.size() - part.relay.size());
    std::set_difference(part.info.begin(), part.info.end(), part.relay.begin(), part.relay.end(),
                        std::back_inserter(out));
    return out;
}

EncodedBlock encode_block(const IndexPartition& part, std::span<const std::uint8_t> message,
                          std::span<const std::uint8_t> chain_in, Rng& rng) {
    check_partition_cover(part);
    const auto msg_idx = message_indices(part);
    if (message.size() != msg_idx.size())
        throw ConfigError("encode_block: message has " + std::to_string(message.size()) +
                          " bits, partition carries " + std::to_string(msg_idx.size()));
    if (chain_in.size() != part.chained.size())
        throw ConfigError("encode_block: chained bits missing (" +
                          std::to_string(chain_in.size()) + " given, " +
                          std::to_string(part.chained.size()) + " needed)");
    EncodedBlock out;
    out.u.assign(part.n, 0);
    for (std::size_t k = 0; k < msg_idx.size(); ++k) out.u[msg_idx[k]] = message[k];
    for (auto i : part.frozen) out.u[i] = 0;
    for (auto i : part.random) out.u[i] = rng.bit();
    for (auto i : part.relay) out.u[i] = rng.bit();
    for (std::size_t k = 0; k < part.chained.size(); ++k) out.u[part.chained[k]] = chain_in[k];
    out.relay_out = extract_bits(out.u, part.relay);
    out.x = out.u;
    gn_transform_inplace(out.x);
    return out;
}

std::vector<std::uint8_t> sc_decode_block(const ScTables& tables, const IndexPartition& part,
                                          std::span<const std::int32_t> y,
                                          std::span<const std::uint8_t> chain_in) {
    check_partition_cover(part);
    if (static_cast<int>(y.size()) != part.n || tables.block_size() != part.n)
        throw ConfigError("sc_decode_block: length mismatch between y, tables and partition");
    if (chain_in.size() != part.chained.size())
        throw ConfigError("sc_decode_block: chained bits missing");
    const auto roles = roles_of(part);
    std::vector<std::uint8_t> known(part.n, 0);
    for (std::size_t k = 0; k < part.chained.size(); ++k) known[part.chained[k]] = chain_in[k];

    ScComputer sc(tables);
    std::vector<std::uint8_t> u_hat(part.n, 0);
    for (int i = 0; i < part.n; ++i) {
        switch (roles[i]) {
            case Role::frozen:
                u_hat[i] = 0;
                break;
            case Role::chained:
                u_hat[i] = known[i];
                break;
            default: {
                const double l = sc.llr(y, std::span<const std::uint8_t>(u_hat.data(), i), i);
                u_hat[i] = (l < 0.0) ? 1 : 0;  // tie -> 0
                break;
            }
        }
    }
    return u_hat;
}

std::vector<std::uint8_t> extract_bits(std::span<const std::uint8_t> u,
                                       const std::vector<std::int32_t>& idx) {
    std::vector<std::uint8_t> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(u[i]);
    return out;
}

std::vector<std::uint8_t> preshared_bits(std::uint64_t seed, std::size_t count) {
    Rng rng(derive_seed(seed, 0x707265ULL));
    return rng.bits(count);
}

}  // namespace irpolar
