#include "irpolar/csvio.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace irpolar {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string synth_params_csv(const SynthChannelParams& params) {
    std::string out = "index,z,i_cap,method\n";
    for (int i = 0; i < params.size(); ++i)
        out += csv_row({std::to_string(i + 1), format_double(params.z[i]),
                        format_double(params.i_cap[i]), to_string(params.method)});
    return out;
}

std::string icap_histogram_csv(const SynthChannelParams& params) {
    constexpr int kBins = 100;
    std::vector<long> counts(kBins, 0);
    for (double ic : params.i_cap) {
        int b = static_cast<int>(ic * kBins);
        if (b >= kBins) b = kBins - 1;  // i_cap == 1 lands in the top bin
        if (b < 0) b = 0;
        ++counts[b];
    }
    std::string out = "bin_low,bin_high,count\n";
    for (int b = 0; b < kBins; ++b)
        out += csv_row({format_double(b / static_cast<double>(kBins)),
                        format_double((b + 1) / static_cast<double>(kBins)),
                        std::to_string(counts[b])});
    return out;
}

std::string sim_report_csv_header() {
    return "n,t,rho_r,rho_w,beta,main,wiretap,method,trials,master_seed,preshared_seed,"
           "adversary_seed,block_errors,session_errors,p_e,p_e_lo,p_e_hi,leakage_bound_bits,"
           "leakage_exact_bits,secrecy_rate,secrecy_capacity\n";
}

std::string sim_report_csv_row(const SimReport& r) {
    return csv_row({std::to_string(r.n), std::to_string(r.t_blocks), format_double(r.rho_r),
                    format_double(r.rho_w), format_double(r.beta), r.main_desc, r.wiretap_desc,
                    r.method, std::to_string(r.trials), std::to_string(r.master_seed),
                    std::to_string(r.preshared_seed), std::to_string(r.adversary_seed),
                    std::to_string(r.block_errors), std::to_string(r.session_errors),
                    format_double(r.p_e), format_double(r.p_e_lo), format_double(r.p_e_hi),
                    format_double(r.leakage_bound_bits),
                    r.leakage_exact_bits ? format_double(*r.leakage_exact_bits) : std::string(),
                    format_double(r.secrecy_rate_bits),
                    format_double(r.secrecy_capacity_bits)});
}

std::string sim_report_summary(const SimReport& r) {
    std::ostringstream os;
    os << "session: N=" << r.n << " T=" << r.t_blocks << " rho_r=" << r.rho_r
       << " rho_w=" << r.rho_w << " beta=" << r.beta << " method=" << r.method << "\n"
       << "channels: main=" << r.main_desc << " wiretap=" << r.wiretap_desc << "\n"
       << "seeds: master=" << r.master_seed << " preshared=" << r.preshared_seed
       << " adversary=" << r.adversary_seed << "\n"
       << "trials: " << r.trials << "  session errors: " << r.session_errors
       << "  block errors: " << r.block_errors << "\n"
       << "P_e = " << format_double(r.p_e) << "  (95% Wilson [" << format_double(r.p_e_lo) << ", "
       << format_double(r.p_e_hi) << "])\n"
       << "leakage bound = " << format_double(r.leakage_bound_bits) << " bits";
    if (r.leakage_exact_bits)
        os << "  exact leakage = " << format_double(*r.leakage_exact_bits) << " bits";
    os << "\n"
       << "secrecy rate = " << format_double(r.secrecy_rate_bits)
       << " bits/use  (capacity reference " << format_double(r.secrecy_capacity_bits) << ")\n"
       << "runtime: " << format_double(r.runtime_seconds) << " s\n";
    return os.str();
}

std::string symbols_to_text(const std::vector<std::int32_t>& v,
                            const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back(' ');
        out += labels.at(static_cast<std::size_t>(v[i]));
    }
    return out;
}

std::vector<std::int32_t> symbols_from_text(const std::string& text,
                                            const std::vector<std::string>& labels) {
    std::vector<std::int32_t> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        std::int32_t idx = -1;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == tok) {
                idx = static_cast<std::int32_t>(i);
                break;
            }
        if (idx < 0) throw ConfigError("unknown symbol token '" + tok + "'");
        out.push_back(idx);
    }
    return out;
}

}  // namespace irpolar
