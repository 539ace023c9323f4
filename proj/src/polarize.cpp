#include "irpolar/polarize.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "irpolar/rng.hpp"
#include "irpolar/sc.hpp"
#include "irpolar/secure_code.hpp"

namespace irpolar {

namespace {

bool power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// One level of the recursive transform on an arbitrary value type:
// element j of block 2k pairs with element j of block 2k+1, results land
// interleaved in the merged block.
template <typename T, typename Combine>
std::vector<T> transform_level(const std::vector<T>& cur, int Q, Combine&& combine) {
    const int n = static_cast<int>(cur.size());
    std::vector<T> out;
    out.reserve(n);
    for (int pos = 0; pos < n; ++pos) {
        const int block = pos / (2 * Q);
        const int local = pos % (2 * Q);
        const int j = local / 2;
        const int base = 2 * block * Q;
        const T& a = cur[base + j];
        const T& b = cur[base + Q + j];
        out.push_back(combine(a, b, /*plus=*/(local & 1) != 0));
    }
    return out;
}

}  // namespace

ChannelArray::ChannelArray(std::vector<DiscreteChannel> l) : leaves(std::move(l)) {
    if (!power_of_two(leaves.size()))
        throw ConfigError("channel array length must be a power of two, at least 2");
}

int ChannelArray::levels() const {
    int n = 0;
    for (std::size_t m = leaves.size(); m > 1; m >>= 1) ++n;
    return n;
}

std::optional<std::vector<double>> ChannelArray::erasure_probs() const {
    std::vector<double> eps;
    eps.reserve(leaves.size());
    for (const auto& ch : leaves) {
        const auto e = bec_erasure_probability(ch);
        if (!e) return std::nullopt;
        eps.push_back(*e);
    }
    return eps;
}

const char* to_string(ConstructMethod m) {
    switch (m) {
        case ConstructMethod::exact: return "exact";
        case ConstructMethod::bec_exact: return "bec_exact";
        case ConstructMethod::merge: return "merge";
        case ConstructMethod::monte_carlo: return "monte_carlo";
    }
    return "?";
}

DiscreteChannel kernel_minus(const DiscreteChannel& w1, const DiscreteChannel& w2) {
    const std::size_t k1 = w1.alphabet_size(), k2 = w2.alphabet_size();
    std::vector<double> p0(k1 * k2), p1(k1 * k2);
    for (std::size_t y1 = 0; y1 < k1; ++y1) {
        const double a0 = w1.row0()[y1], a1 = w1.row1()[y1];
        for (std::size_t y2 = 0; y2 < k2; ++y2) {
            const double b0 = w2.row0()[y2], b1 = w2.row1()[y2];
            const std::size_t o = y1 * k2 + y2;
            p0[o] = 0.5 * (a0 * b0 + a1 * b1);
            p1[o] = 0.5 * (a1 * b0 + a0 * b1);
        }
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

DiscreteChannel kernel_plus(const DiscreteChannel& w1, const DiscreteChannel& w2) {
    const std::size_t k1 = w1.alphabet_size(), k2 = w2.alphabet_size();
    std::vector<double> p0(2 * k1 * k2), p1(2 * k1 * k2);
    for (std::size_t y1 = 0; y1 < k1; ++y1) {
        for (std::size_t y2 = 0; y2 < k2; ++y2) {
            const double b0 = w2.row0()[y2], b1 = w2.row1()[y2];
            for (int u1 = 0; u1 < 2; ++u1) {
                const std::size_t o = (y1 * k2 + y2) * 2 + u1;
                // W1 sees u1^u2 on its input
                const double w1_u2_0 = (u1 == 0) ? w1.row0()[y1] : w1.row1()[y1];
                const double w1_u2_1 = (u1 == 0) ? w1.row1()[y1] : w1.row0()[y1];
                p0[o] = 0.5 * w1_u2_0 * b0;
                p1[o] = 0.5 * w1_u2_1 * b1;
            }
        }
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

SynthChannelParams bec_recursion(const std::vector<double>& eps) {
    if (!power_of_two(eps.size()))
        throw ConfigError("bec_recursion: length must be a power of two, at least 2");
    for (double e : eps)
        if (!(e >= 0.0 && e <= 1.0))
            throw ConfigError("bec_recursion: erasure probabilities must lie in [0,1]");
    const int n = static_cast<int>(eps.size());
    std::vector<double> ic(n);
    for (int i = 0; i < n; ++i) ic[i] = 1.0 - eps[i];
    for (int Q = 1; Q < n; Q *= 2) {
        ic = transform_level(ic, Q, [](double a, double b, bool plus) {
            return plus ? a + b - a * b : a * b;
        });
    }
    SynthChannelParams out;
    out.method = ConstructMethod::bec_exact;
    out.i_cap = std::move(ic);
    out.z.resize(n);
    for (int i = 0; i < n; ++i) out.z[i] = 1.0 - out.i_cap[i];
    return out;
}

namespace {

// Degrading merge down to at most mu outputs.  Operates on the canonical
// form (columns sorted by posterior) and repeatedly merges the adjacent
// pair with the smallest capacity loss, ties to the lowest position.
// Restricting to adjacent-in-likelihood-order pairs is the standard
// Tal/Vardy degrading step: the optimal pair to merge is always adjacent.
// Lazy min-heap with per-position versions keeps this O(K log K).
DiscreteChannel degrade_to(const DiscreteChannel& canonical, int mu) {
    const int k = static_cast<int>(canonical.alphabet_size());
    if (k <= mu) return canonical;
    struct Col {
        double p0, p1;
    };
    std::vector<Col> cols(k);
    for (int i = 0; i < k; ++i) cols[i] = {canonical.row0()[i], canonical.row1()[i]};
    std::vector<int> next(k), prev(k);
    std::vector<std::uint32_t> version(k, 0);
    std::vector<bool> dead(k, false);
    for (int i = 0; i < k; ++i) {
        next[i] = i + 1;
        prev[i] = i - 1;
    }
    auto col_cap = [](double a, double b) {
        const double m = 0.5 * (a + b);
        double t = 0.0;
        if (a > 0.0) t += 0.5 * a * std::log2(a / m);
        if (b > 0.0) t += 0.5 * b * std::log2(b / m);
        return t;
    };
    auto loss = [&](int i) {  // merge cost of (i, next[i])
        const int j = next[i];
        return col_cap(cols[i].p0, cols[i].p1) + col_cap(cols[j].p0, cols[j].p1) -
               col_cap(cols[i].p0 + cols[j].p0, cols[i].p1 + cols[j].p1);
    };
    using Entry = std::tuple<double, int, std::uint32_t>;  // (loss, position, version)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int i = 0; i + 1 < k; ++i) heap.emplace(loss(i), i, 0);
    int alive = k;
    while (alive > mu) {
        const auto [l, i, v] = heap.top();
        heap.pop();
        if (dead[i] || v != version[i] || next[i] >= k) continue;  // stale entry
        const int j = next[i];
        cols[i].p0 += cols[j].p0;
        cols[i].p1 += cols[j].p1;
        dead[j] = true;
        next[i] = next[j];
        if (next[j] < k) prev[next[j]] = i;
        --alive;
        ++version[i];
        if (next[i] < k) heap.emplace(loss(i), i, version[i]);
        if (prev[i] >= 0) {
            ++version[prev[i]];
            heap.emplace(loss(prev[i]), prev[i], version[prev[i]]);
        }
    }
    std::vector<double> p0, p1;
    p0.reserve(alive);
    p1.reserve(alive);
    for (int i = 0; i >= 0 && i < k; i = next[i]) {
        p0.push_back(cols[i].p0);
        p1.push_back(cols[i].p1);
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

SynthChannelParams construct_by_kernels(const ChannelArray& leaves, ConstructMethod method,
                                        const ConstructOptions& opt) {
    const int n = leaves.size();
    std::vector<DiscreteChannel> cur;
    cur.reserve(n);
    for (const auto& ch : leaves.leaves) cur.push_back(canonicalized(ch));
    for (int Q = 1; Q < n; Q *= 2) {
        cur = transform_level(cur, Q, [&](const DiscreteChannel& a, const DiscreteChannel& b,
                                          bool plus) {
            if (method == ConstructMethod::exact) {
                const std::size_t need = (plus ? 2 : 1) * a.alphabet_size() * b.alphabet_size();
                if (need > opt.alphabet_budget)
                    throw BudgetError("exact construction alphabet would reach " +
                                      std::to_string(need) + " outputs (budget " +
                                      std::to_string(opt.alphabet_budget) + ")");
            }
            DiscreteChannel k = plus ? kernel_plus(a, b) : kernel_minus(a, b);
            DiscreteChannel c = canonicalized(k);
            if (method == ConstructMethod::merge) return degrade_to(c, opt.mu);
            return c;
        });
    }
    SynthChannelParams out;
    out.method = method;
    out.z.reserve(n);
    out.i_cap.reserve(n);
    for (const auto& ch : cur) {
        out.z.push_back(bhattacharyya(ch));
        out.i_cap.push_back(capacity(ch));
    }
    if (method == ConstructMethod::exact) out.exact_channels = std::move(cur);
    return out;
}

SynthChannelParams construct_monte_carlo(const ChannelArray& leaves, const ConstructOptions& opt) {
    const int n = leaves.size();
    const int trials = std::max(1, opt.trials);
    const ScTables tables(leaves);

    // fixed-size chunks summed in order: results independent of threading
    const int chunk = 64;
    const int nchunks = (trials + chunk - 1) / chunk;
    std::vector<std::vector<double>> partial(nchunks, std::vector<double>(n, 0.0));

    auto run_chunk = [&](int c) {
        ScComputer sc(tables);
        std::vector<std::uint8_t> u(n), x(n);
        std::vector<std::int32_t> y(n);
        std::vector<double> llr(n);
        const int lo = c * chunk, hi = std::min(trials, lo + chunk);
        for (int t = lo; t < hi; ++t) {
            Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(t), 0x6d63ULL));
            for (int i = 0; i < n; ++i) u[i] = rng.bit();
            x = u;
            gn_transform_inplace(x);
            for (int i = 0; i < n; ++i)
                y[i] = sample_output(leaves.leaves[i], x[i], rng.uniform01());
            // genie-aided pass: condition each index on the true prefix
            for (int i = 0; i < n; ++i) llr[i] = sc.llr(y, u, i);
            for (int i = 0; i < n; ++i) {
                const double signed_llr = (u[i] == 0) ? llr[i] : -llr[i];
                partial[c][i] += std::exp(-0.5 * signed_llr);
            }
        }
    };
    parallel_for(nchunks, opt.threads, run_chunk);

    SynthChannelParams out;
    out.method = ConstructMethod::monte_carlo;
    out.z.assign(n, 0.0);
    for (const auto& part : partial)
        for (int i = 0; i < n; ++i) out.z[i] += part[i];
    out.i_cap.resize(n);
    for (int i = 0; i < n; ++i) {
        out.z[i] = std::min(1.0, out.z[i] / trials);
        // Eq. 15 upper bound as the capacity surrogate
        out.i_cap[i] = std::sqrt(std::max(0.0, 1.0 - out.z[i] * out.z[i]));
    }
    return out;
}

}  // namespace

SynthChannelParams construct(const ChannelArray& leaves, ConstructMethod method,
                             const ConstructOptions& options) {
    switch (method) {
        case ConstructMethod::bec_exact: {
            const auto eps = leaves.erasure_probs();
            if (!eps)
                throw ConfigError("bec_exact requires every leaf to be BEC-equivalent");
            return bec_recursion(*eps);
        }
        case ConstructMethod::exact:
            if (leaves.size() > 16)
                throw ConfigError("exact construction is refused beyond N=16");
            return construct_by_kernels(leaves, method, options);
        case ConstructMethod::merge:
            return construct_by_kernels(leaves, method, options);
        case ConstructMethod::monte_carlo:
            return construct_monte_carlo(leaves, options);
    }
    throw ConfigError("unknown construction method");
}

PolarizedSets polarized_sets(const SynthChannelParams& params, double beta) {
    if (!(beta > 0.0 && beta < 0.5))
        throw ConfigError("beta must satisfy 0 < beta < 1/2");
    const int n = params.size();
    PolarizedSets out;
    out.beta = beta;
    out.delta = std::exp2(-std::pow(static_cast<double>(n), beta));
    for (int i = 0; i < n; ++i) {
        if (params.z[i] >= 1.0 - out.delta) out.high.push_back(i);
        if (params.z[i] <= out.delta) out.low.push_back(i);
    }
    return out;
}

double selected_z_sum(const SynthChannelParams& params, double rate) {
    const int n = params.size();
    double mean_i = 0.0;
    for (double ic : params.i_cap) mean_i += ic;
    mean_i /= n;
    if (!(rate > 0.0 && rate < mean_i))
        throw ConfigError("rate must satisfy 0 < R < mean(i_cap)");
    std::vector<double> z = params.z;
    std::sort(z.begin(), z.end());
    const int k = std::max(1, static_cast<int>(std::floor(n * rate)));
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += z[i];
    return s;
}

}  // namespace irpolar
