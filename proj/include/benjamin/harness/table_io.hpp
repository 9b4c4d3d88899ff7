#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "benjamin/diagnostics.hpp"

namespace benjamin::harness {

// %.17g: round-trips every double.
std::string format_double(double v);

// Shortest %g form that round-trips.
std::string format_short(double v);

// Fixed column set: t,mass,energy,sobolev_s,gevrey[sigma;s]...,sigma_fit,sigma_r,sigma_resid.
std::string timeseries_header(const std::vector<GevreyIndex>& gevrey);
std::string timeseries_line(const DiagnosticsRow& row);

// Writes (truncating) and flushes; throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Two columns (k, |u_hat(k)|) over m = 0..N/2.
std::string spectrum_table(const SpectralField& u_hat);
std::string spectrum_file_name(long step);

}  // namespace benjamin::harness
