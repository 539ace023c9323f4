#include "irpolar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace irpolar {

namespace {

// compensated summation; channel rows can get large after kernel products
double kahan_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

constexpr double kRowSumTol = 1e-12;

}  // namespace

DiscreteChannel::DiscreteChannel(std::vector<double> p0, std::vector<double> p1)
    : p0_(std::move(p0)), p1_(std::move(p1)) {
    validate();
}

DiscreteChannel::DiscreteChannel(std::vector<std::string> labels, std::vector<double> p0,
                                 std::vector<double> p1)
    : labels_(std::move(labels)), p0_(std::move(p0)), p1_(std::move(p1)) {
    validate();
}

void DiscreteChannel::validate() const {
    if (p0_.empty() || p0_.size() != p1_.size())
        throw ConfigError("channel rows must be nonempty and equal length");
    if (!labels_.empty()) {
        if (labels_.size() != p0_.size())
            throw ConfigError("channel label count does not match alphabet size");
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second) throw ConfigError("duplicate output symbol '" + l + "'");
    }
    for (const auto* row : {&p0_, &p1_}) {
        for (double p : *row)
            if (!(p >= 0.0) || !std::isfinite(p))
                throw ConfigError("channel probabilities must be finite and >= 0");
        const double s = kahan_sum(*row);
        if (std::abs(s - 1.0) > kRowSumTol)
            throw ConfigError("channel row does not sum to 1 (sum = " + std::to_string(s) + ")");
    }
}

int DiscreteChannel::find_output(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    return -1;
}

ErasureChannel::ErasureChannel(double e) : eps(e) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("erasure probability must lie in [0,1]");
}

DiscreteChannel ErasureChannel::expand() const {
    return DiscreteChannel({"0", "1", "?"}, {1.0 - eps, 0.0, eps}, {0.0, 1.0 - eps, eps});
}

ErasureChannel degenerate_bec(DegenerateBec kind) {
    return ErasureChannel(kind == DegenerateBec::eps0 ? 0.0 : 1.0);
}

double bhattacharyya(const DiscreteChannel& ch) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        const double x = std::sqrt(ch.row0()[i] * ch.row1()[i]);
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double capacity(const DiscreteChannel& ch) {
    // I(X;Y) with uniform input, 0 log 0 := 0
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        const double a = ch.row0()[i];
        const double b = ch.row1()[i];
        const double m = 0.5 * (a + b);
        double term = 0.0;
        if (a > 0.0) term += 0.5 * a * std::log2(a / m);
        if (b > 0.0) term += 0.5 * b * std::log2(b / m);
        const double y = term - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

ChannelStats stats(const DiscreteChannel& ch) { return {capacity(ch), bhattacharyya(ch)}; }

double bhattacharyya(const ErasureChannel& ch) { return ch.eps; }
double capacity(const ErasureChannel& ch) { return 1.0 - ch.eps; }

DiscreteChannel cascade(const DiscreteChannel& a, const DiscreteChannel& b) {
    if (!a.labeled()) throw ConfigError("cascade: first channel has no binary output labels");
    // a's outputs must be interpretable as b's binary inputs
    std::vector<int> as_input(a.alphabet_size());
    for (std::size_t v = 0; v < a.alphabet_size(); ++v) {
        const auto& l = a.label(static_cast<int>(v));
        if (l == "0")
            as_input[v] = 0;
        else if (l == "1")
            as_input[v] = 1;
        else
            throw ConfigError("cascade: output symbol '" + l + "' is not a valid binary input");
    }
    const std::size_t kz = b.alphabet_size();
    std::vector<double> p0(kz, 0.0), p1(kz, 0.0);
    for (std::size_t z = 0; z < kz; ++z) {
        for (std::size_t v = 0; v < a.alphabet_size(); ++v) {
            p0[z] += a.row0()[v] * b.p(static_cast<int>(z), as_input[v]);
            p1[z] += a.row1()[v] * b.p(static_cast<int>(z), as_input[v]);
        }
    }
    if (b.labeled()) return DiscreteChannel(b.labels(), std::move(p0), std::move(p1));
    return DiscreteChannel(std::move(p0), std::move(p1));
}

DiscreteChannel cascade(const DiscreteChannel& a, const ErasureChannel& b) {
    if (b.eps == 0.0) return a;
    if (b.eps == 1.0) return DiscreteChannel({"?"}, {1.0}, {1.0});
    if (!a.labeled()) throw ConfigError("cascade: erasure cascade needs labeled outputs");
    const double keep = 1.0 - b.eps;
    std::vector<std::string> labels = a.labels();
    std::vector<double> p0(a.row0()), p1(a.row1());
    for (auto& p : p0) p *= keep;
    for (auto& p : p1) p *= keep;
    int q = a.find_output("?");
    if (q < 0) {
        labels.push_back("?");
        p0.push_back(0.0);
        p1.push_back(0.0);
        q = static_cast<int>(labels.size()) - 1;
    }
    p0[q] += b.eps;
    p1[q] += b.eps;
    return DiscreteChannel(std::move(labels), std::move(p0), std::move(p1));
}

ErasureChannel cascade(const ErasureChannel& a, const ErasureChannel& b) {
    return ErasureChannel(1.0 - (1.0 - a.eps) * (1.0 - b.eps));
}

std::optional<double> bec_erasure_probability(const DiscreteChannel& ch, double tol) {
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        const double a = ch.row0()[i];
        const double b = ch.row1()[i];
        if (a <= tol * (a + b) || b <= tol * (a + b)) continue;  // revealing output
        if (std::abs(a - b) <= tol * (a + b)) {                  // erasure-class output
            e0 += a;
            e1 += b;
            continue;
        }
        return std::nullopt;
    }
    return 0.5 * (e0 + e1);
}

DiscreteChannel canonicalized(const DiscreteChannel& ch, double rtol) {
    struct Col {
        double r, p0, p1;
    };
    std::vector<Col> cols;
    cols.reserve(ch.alphabet_size());
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i) {
        const double a = ch.row0()[i];
        const double b = ch.row1()[i];
        if (a + b == 0.0) continue;
        cols.push_back({b / (a + b), a, b});
    }
    std::sort(cols.begin(), cols.end(), [](const Col& x, const Col& y) { return x.r < y.r; });
    std::vector<double> p0, p1;
    p0.reserve(cols.size());
    p1.reserve(cols.size());
    double last_r = -1.0;
    for (const auto& c : cols) {
        if (!p0.empty() && std::abs(c.r - last_r) <= rtol) {
            p0.back() += c.p0;
            p1.back() += c.p1;
        } else {
            p0.push_back(c.p0);
            p1.push_back(c.p1);
            last_r = c.r;
        }
    }
    return DiscreteChannel(std::move(p0), std::move(p1));
}

DiscreteChannel make_bec(double eps) { return ErasureChannel(eps).expand(); }

DiscreteChannel make_bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("bsc crossover must lie in [0,1]");
    return DiscreteChannel({"0", "1"}, {1.0 - p, p}, {p, 1.0 - p});
}

namespace {

double parse_prob(const std::string& tok, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(context + ": not a number: '" + tok + "'");
    }
}

}  // namespace

DiscreteChannel parse_channel_spec(const std::string& spec) {
    if (spec == "noiseless") return make_bec(0.0);
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const std::string arg = spec.substr(colon + 1);
        if (kind == "bec") return make_bec(parse_prob(arg, "bec spec"));
        if (kind == "bsc") return make_bsc(parse_prob(arg, "bsc spec"));
        if (kind == "file") return load_channel_file(arg);
        throw ConfigError("unknown channel kind '" + kind + "' (expected bec, bsc or file)");
    }
    return load_channel_file(spec);
}

DiscreteChannel load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open channel profile");

    std::string kind;
    double eps = -1.0, p = -1.0;
    std::vector<std::string> outputs;
    std::vector<double> row0, row1;
    bool have_row0 = false, have_row1 = false;

    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "kind") {
            if (!(ls >> kind)) fail("missing kind value");
        } else if (key == "eps") {
            std::string tok;
            if (!(ls >> tok)) fail("missing eps value");
            eps = parse_prob(tok, path + ":" + std::to_string(lineno));
        } else if (key == "p") {
            std::string tok;
            if (!(ls >> tok)) fail("missing p value");
            p = parse_prob(tok, path + ":" + std::to_string(lineno));
        } else if (key == "outputs") {
            std::string tok;
            while (ls >> tok) outputs.push_back(tok);
            if (outputs.empty()) fail("outputs line lists no symbols");
        } else if (key == "row0" || key == "row1") {
            auto& row = (key == "row0") ? row0 : row1;
            (key == "row0" ? have_row0 : have_row1) = true;
            std::string tok;
            while (ls >> tok) row.push_back(parse_prob(tok, path + ":" + std::to_string(lineno)));
            double s = 0.0;
            for (double v : row) s += v;
            if (std::abs(s - 1.0) > 1e-9)
                fail(key + " sums to " + std::to_string(s) + ", expected 1 within 1e-9");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (kind == "bec") {
        if (eps < 0.0) throw ConfigError(path + ": kind bec requires an eps line");
        return make_bec(eps);
    }
    if (kind == "bsc") {
        if (p < 0.0) throw ConfigError(path + ": kind bsc requires a p line");
        return make_bsc(p);
    }
    if (kind == "table") {
        if (outputs.empty() || !have_row0 || !have_row1)
            throw ConfigError(path + ": kind table requires outputs, row0 and row1 lines");
        if (row0.size() != outputs.size() || row1.size() != outputs.size())
            throw ConfigError(path + ": row width does not match outputs count");
        return DiscreteChannel(outputs, row0, row1);
    }
    if (kind.empty()) throw ConfigError(path + ": missing kind line");
    throw ConfigError(path + ": unknown kind '" + kind + "' (expected bec, bsc or table)");
}

}  // namespace irpolar
