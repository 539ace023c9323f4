// CSV and text serialization.  Doubles use the shortest round-trip
// representation; files are UTF-8 with LF endings and are written whole
// (temp file + rename) so failures never leave partial output.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irpolar/metrics.hpp"
#include "irpolar/polarize.hpp"

namespace irpolar {

std::string format_double(double v);

std::string csv_row(const std::vector<std::string>& cells);

void write_file_atomic(const std::string& path, const std::string& content);

// columns: index (1-based), z, i_cap, method
std::string synth_params_csv(const SynthChannelParams& params);

// 100-bin histogram of i_cap over [0,1]; the last bin includes 1.0.
// columns: bin_low, bin_high, count
std::string icap_histogram_csv(const SynthChannelParams& params);

std::string sim_report_csv_header();
std::string sim_report_csv_row(const SimReport& rep);
std::string sim_report_summary(const SimReport& rep);

// symbol vectors for golden tests: space-separated labels, e.g. "0 1 ? 1"
std::string symbols_to_text(const std::vector<std::int32_t>& v,
                            const std::vector<std::string>& labels);
std::vector<std::int32_t> symbols_from_text(const std::string& text,
                                            const std::vector<std::string>& labels);

}  // namespace irpolar
