#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace benjamin::harness {

struct PlotReport {
  std::vector<std::string> written;  // script file names, relative to the run directory
  std::vector<std::string> notices;  // one per skipped plot
};

// Writes gnuplot scripts into run_dir for every plot whose inputs exist:
//   plot_norms.gp     timeseries.csv
//   plot_spectrum.gp  last spectra/spectrum_*.txt (+ fitted envelope from summary.json)
//   plot_sigma.gp     timeseries.csv + summary.json (decay-law annotation)
//   plot_audit.gp     audit.csv
// Scripts use paths relative to run_dir only.
PlotReport emit_plot_scripts(const std::filesystem::path& run_dir);

}  // namespace benjamin::harness
