#include "benjamin/harness/plots.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "benjamin/harness/table_io.hpp"

namespace fs = std::filesystem;

namespace benjamin::harness {

namespace {

std::optional<nlohmann::json> load_summary(const fs::path& run_dir) {
  const fs::path path = run_dir / "summary.json";
  if (!fs::exists(path)) return std::nullopt;
  try {
    return nlohmann::json::parse(read_text_file(path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

const char* kPreamble =
    "set terminal pngcairo size 900,600\n"
    "set datafile separator ','\n"
    "set key outside\n";

}  // namespace

PlotReport emit_plot_scripts(const fs::path& run_dir) {
  PlotReport report;
  const bool have_series = fs::exists(run_dir / "timeseries.csv");
  const auto summary = load_summary(run_dir);

  if (have_series) {
    // Columns 5 .. 4+G hold the Gevrey norms.
    std::string header;
    {
      std::istringstream in(read_text_file(run_dir / "timeseries.csv"));
      std::getline(in, header);
    }
    const int columns = static_cast<int>(std::count(header.begin(), header.end(), ',')) + 1;
    std::string plot =
        "plot 'timeseries.csv' using 1:(abs($2)) with lines title 'mass', \\\n"
        "     '' using 1:(abs($3)) with lines title '|energy|', \\\n"
        "     '' using 1:4 with lines title 'sobolev_s'";
    for (int c = 5; c <= columns - 3; ++c)
      plot += ", \\\n     '' using 1:" + std::to_string(c) + " with lines title columnhead(" +
              std::to_string(c) + ")";
    write_text_file(run_dir / "plot_norms.gp", std::string(kPreamble) +
                                                   "set output 'norms.png'\n"
                                                   "set xlabel 't'\n"
                                                   "set logscale y\n" +
                                                   plot + "\n");
    report.written.push_back("plot_norms.gp");
  } else {
    report.notices.push_back("plot_norms.gp skipped: timeseries.csv missing");
  }

  std::vector<fs::path> spectra;
  if (fs::is_directory(run_dir / "spectra"))
    for (const auto& entry : fs::directory_iterator(run_dir / "spectra"))
      if (entry.path().extension() == ".txt") spectra.push_back(entry.path());
  if (!spectra.empty()) {
    std::sort(spectra.begin(), spectra.end());
    const std::string name = "spectra/" + spectra.back().filename().string();
    std::string script = std::string(kPreamble) +
                         "set datafile separator whitespace\n"
                         "set output 'spectrum.png'\n"
                         "set xlabel 'k'\n"
                         "set ylabel '|u_hat(k)|'\n"
                         "set logscale y\n";
    std::string plot = "plot '" + name + "' using 1:2 with points pt 7 ps 0.4 title '" +
                       spectra.back().stem().string() + "'";
    if (summary && summary->contains("radius") && (*summary)["radius"].contains("final_fit") &&
        (*summary)["radius"]["final_fit"].is_object()) {
      const auto& fit = (*summary)["radius"]["final_fit"];
      script += "logC = " + format_double(fit["logC"].get<double>()) + "\n" +
                "r = " + format_double(fit["r"].get<double>()) + "\n" +
                "sigma = " + format_double(fit["raw_sigma"].get<double>()) + "\n";
      plot += ", (x > 0 ? exp(logC - r*log(x) - sigma*x) : 1/0) with lines title 'fitted envelope'";
    }
    write_text_file(run_dir / "plot_spectrum.gp", script + plot + "\n");
    report.written.push_back("plot_spectrum.gp");
  } else {
    report.notices.push_back("plot_spectrum.gp skipped: no spectrum dumps in spectra/");
  }

  if (have_series && summary) {
    std::string script = std::string(kPreamble) +
                         "set output 'sigma.png'\n"
                         "set xlabel 't'\n"
                         "set ylabel 'sigma(t)'\n"
                         "set logscale xy\n";
    std::string plot = "plot 'timeseries.csv' using 1:'sigma_fit' with linespoints title 'sigma_fit'";
    const auto law = summary->value("decay_law", nlohmann::json::object());
    if (law.contains("gamma")) {
      const std::string gamma = format_double(law["gamma"].get<double>());
      script += "gamma = " + gamma + "\n" + "c = " + format_double(law["c"].get<double>()) + "\n" +
                "set label 1 'gamma = " + gamma + "' at graph 0.05, graph 0.1\n";
      plot += ", c*x**(-gamma) with lines title 'c t^{-gamma}'";
    } else {
      script += "set label 1 'decay law: " + law.value("status", std::string("none")) +
                "' at graph 0.05, graph 0.1\n";
    }
    write_text_file(run_dir / "plot_sigma.gp", script + plot + "\n");
    report.written.push_back("plot_sigma.gp");
  } else {
    report.notices.push_back("plot_sigma.gp skipped: timeseries.csv or summary.json missing");
  }

  if (fs::exists(run_dir / "audit.csv")) {
    write_text_file(run_dir / "plot_audit.gp",
                    std::string(kPreamble) +
                        "set output 'audit.png'\n"
                        "set xlabel 'sigma'\n"
                        "set ylabel 'delta / (sigma^theta B)'\n"
                        "set logscale x\n"
                        "plot 'audit.csv' every ::1 using 1:4 "
                        "with linespoints title 'ratio'\n");
    report.written.push_back("plot_audit.gp");
  } else {
    report.notices.push_back("plot_audit.gp skipped: audit.csv missing");
  }
  return report;
}

}  // namespace benjamin::harness
