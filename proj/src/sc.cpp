#include "irpolar/sc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace irpolar {

namespace {

double clamp_llr(double v) { return std::clamp(v, -kLlrSaturation, kLlrSaturation); }

}  // namespace

double llr_combine_f(double a, double b) {
    // log((1 + e^{a+b}) / (e^a + e^b)), numerically stable form
    const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double m = std::min(std::abs(a), std::abs(b));
    const double v = sgn * m + std::log1p(std::exp(-std::abs(a + b))) -
                     std::log1p(std::exp(-std::abs(a - b)));
    return clamp_llr(v);
}

double llr_combine_g(double a, double b, std::uint8_t u) {
    return clamp_llr(u ? b - a : b + a);
}

ScTables::ScTables(const ChannelArray& leaves) : n_(leaves.size()) {
    llr_.reserve(n_);
    for (const auto& ch : leaves.leaves) {
        std::vector<double> t(ch.alphabet_size());
        for (std::size_t y = 0; y < ch.alphabet_size(); ++y) {
            const double a = ch.row0()[y];
            const double b = ch.row1()[y];
            if (a == b)
                t[y] = 0.0;
            else if (b == 0.0)
                t[y] = kLlrSaturation;
            else if (a == 0.0)
                t[y] = -kLlrSaturation;
            else
                t[y] = clamp_llr(std::log(a / b));
        }
        llr_.push_back(std::move(t));
    }
}

ScComputer::ScComputer(const ScTables& tables) : tables_(&tables) {
    int m = tables.block_size();
    while (m > 1) {
        fold_.emplace_back(static_cast<std::size_t>(m / 2));
        m /= 2;
    }
}

double ScComputer::llr(std::span<const std::int32_t> y, std::span<const std::uint8_t> prefix,
                       int i) {
    return recurse(0, tables_->block_size(), y, prefix.data(), i, 0);
}

double ScComputer::recurse(int leaf_off, int m, std::span<const std::int32_t> y,
                           const std::uint8_t* prefix, int target, int depth) {
    if (m == 1) return tables_->leaf_llr(leaf_off, y[leaf_off]);
    const int j = target >> 1;
    auto& buf = fold_[depth];
    // child a: u_odd ^ u_even of the known prefix
    for (int t = 0; t < j; ++t) buf[t] = static_cast<std::uint8_t>(prefix[2 * t] ^ prefix[2 * t + 1]);
    const double a = recurse(leaf_off, m / 2, y, buf.data(), j, depth + 1);
    // child b: u_even; buffer reusable, a's fold is dead
    for (int t = 0; t < j; ++t) buf[t] = prefix[2 * t + 1];
    const double b = recurse(leaf_off + m / 2, m / 2, y, buf.data(), j, depth + 1);
    if ((target & 1) == 0) return llr_combine_f(a, b);
    return llr_combine_g(a, b, prefix[2 * j]);
}

std::int32_t sample_output(const DiscreteChannel& ch, int x, double u01) {
    const auto& row = (x == 0) ? ch.row0() : ch.row1();
    double acc = 0.0;
    const int k = static_cast<int>(row.size());
    for (int i = 0; i < k; ++i) {
        acc += row[i];
        if (u01 < acc) return i;
    }
    return k - 1;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(threads, count);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace irpolar
