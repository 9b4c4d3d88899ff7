#include "benjamin/harness/table_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace benjamin::harness {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string timeseries_header(const std::vector<GevreyIndex>& gevrey) {
  std::string out = "t,mass,energy,sobolev_s";
  for (const GevreyIndex& g : gevrey)
    out += ",gevrey[" + format_short(g.sigma) + ";" + format_short(g.s) + "]";
  return out + ",sigma_fit,sigma_r,sigma_resid";
}

std::string timeseries_line(const DiagnosticsRow& row) {
  std::string out = format_double(row.t) + "," + format_double(row.mass) + "," +
                    format_double(row.energy) + "," + format_double(row.sobolev);
  for (double g : row.gevrey) out += "," + format_double(g);
  for (const auto& v : {row.sigma_fit, row.sigma_r, row.sigma_resid})
    out += "," + (v ? format_double(*v) : std::string("nan"));
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string spectrum_table(const SpectralField& u_hat) {
  std::string out;
  for (int m = 0; m < u_hat.modes(); ++m)
    out += format_double(u_hat.grid().wavenumber(m)) + " " + format_double(std::abs(u_hat[m])) +
           "\n";
  return out;
}

std::string spectrum_file_name(long step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "spectrum_%06ld.txt", step);
  return buf;
}

}  // namespace benjamin::harness
