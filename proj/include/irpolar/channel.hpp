// Binary-input discrete memoryless channels.
//
// A channel is a pair of probability rows over a finite output alphabet.
// Output symbols are abstract: identity is the column position, and an
// optional label list gives them printable names ("0", "1", "?", ...).
// Synthesized channels produced by kernel operations stay anonymous;
// their alphabets are positional.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irpolar/errors.hpp"

namespace irpolar {

struct ChannelStats {
    double capacity = 0.0;  // I(W), bits/use, uniform input
    double bhatta = 0.0;    // Z(W)
};

class DiscreteChannel {
  public:
    // Anonymous outputs (identity = position).
    DiscreteChannel(std::vector<double> p0, std::vector<double> p1);
    // Labeled outputs; labels must be distinct and match the row width.
    DiscreteChannel(std::vector<std::string> labels, std::vector<double> p0,
                    std::vector<double> p1);

    std::size_t alphabet_size() const { return p0_.size(); }
    double p(int output, int input) const { return input == 0 ? p0_[output] : p1_[output]; }
    const std::vector<double>& row0() const { return p0_; }
    const std::vector<double>& row1() const { return p1_; }

    bool labeled() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int output) const { return labels_[output]; }
    // -1 when absent
    int find_output(const std::string& label) const;

  private:
    void validate() const;

    std::vector<std::string> labels_;  // empty => anonymous
    std::vector<double> p0_, p1_;
};

// Binary erasure channel by erasure probability; expands on demand to the
// explicit {0,1,?} table.
struct ErasureChannel {
    double eps = 0.0;

    explicit ErasureChannel(double e);
    DiscreteChannel expand() const;
};

enum class DegenerateBec { eps0, eps1 };

ErasureChannel degenerate_bec(DegenerateBec kind);

double bhattacharyya(const DiscreteChannel& ch);
double capacity(const DiscreteChannel& ch);
ChannelStats stats(const DiscreteChannel& ch);

double bhattacharyya(const ErasureChannel& ch);
double capacity(const ErasureChannel& ch);

// General cascade: a's outputs must be labeled "0"/"1" and are fed into b.
// P(z|x) = sum_v Pa(v|x) Pb(z|v).  Throws ConfigError on alphabet mismatch.
DiscreteChannel cascade(const DiscreteChannel& a, const DiscreteChannel& b);

// Symbol-wise erasure cascade: each output of a passes unchanged with
// probability 1-eps and becomes "?" with probability eps.  eps==0 returns a
// unchanged; eps==1 collapses to the single-output "?" channel.
DiscreteChannel cascade(const DiscreteChannel& a, const ErasureChannel& b);

// Erasure channels compose by survival probability.
ErasureChannel cascade(const ErasureChannel& a, const ErasureChannel& b);

// eps when every output ratio is 0, 1 or infinity (within tol), i.e. the
// channel is equivalent to a BEC; nullopt otherwise.
std::optional<double> bec_erasure_probability(const DiscreteChannel& ch, double tol = 1e-9);

// Drops zero-probability outputs and merges outputs with equal likelihood
// ratio (relative posterior difference <= rtol).  Capacity and Z preserved;
// result is anonymous, sorted by posterior P(1|y).
DiscreteChannel canonicalized(const DiscreteChannel& ch, double rtol = 1e-11);

// --- channel profile loading -------------------------------------------
//
// Inline specs: "bec:0.3", "bsc:0.1", "noiseless", or a path to a profile
// file.  Profile files are line oriented:
//
//     kind table
//     outputs 0 1 ?
//     row0 0.8 0.0 0.2
//     row1 0.0 0.8 0.2
//
// or "kind bec" + "eps 0.3", or "kind bsc" + "p 0.1".  Rows must each sum
// to 1 within 1e-9; violations raise ConfigError with the line number.

DiscreteChannel parse_channel_spec(const std::string& spec);
DiscreteChannel load_channel_file(const std::string& path);
DiscreteChannel make_bec(double eps);
DiscreteChannel make_bsc(double p);

}  // namespace irpolar
