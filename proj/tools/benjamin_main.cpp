#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "benjamin/errors.hpp"
#include "benjamin/harness/config.hpp"
#include "benjamin/harness/experiment.hpp"
#include "benjamin/harness/plots.hpp"
#include "benjamin/harness/probe.hpp"
#include "benjamin/harness/sweep.hpp"
#include "benjamin/harness/table_io.hpp"
#include "benjamin/soliton.hpp"

namespace fs = std::filesystem;
using namespace benjamin;
using namespace benjamin::harness;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

int cmd_run(const fs::path& config, const fs::path& out, const std::optional<fs::path>& resume,
            std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_run_config(config);
  if (seed) cfg.seed = *seed;
  const Json summary = run_experiment(cfg, out, RunOptions{resume});
  std::cout << "run: " << summary["rows"].get<std::size_t>() << " rows, t = "
            << format_double(summary["final"]["t"].get<double>()) << ", outputs in "
            << out.string() << "\n";
  return kOk;
}

struct SolitonArgs {
  double l = 0.0;
  int p = 1;
  double c = -1.0;
  int n_points = 512;
  double length = 80.0;
  double tol = 1e-12;
  int max_iter = 500;
};

int cmd_soliton(const SolitonArgs& a, const fs::path& out) {
  const ModelParams params{a.l, a.p};
  params.validate();
  const Grid grid(a.n_points, a.length);
  const SolitaryWave wave = petviashvili_solitary_wave(params, a.c, grid, a.tol, a.max_iter);
  fs::create_directories(out);
  std::string table;
  for (int j = 0; j < grid.size(); ++j) table += format_double(wave.profile[j]) + "\n";
  write_text_file(out / "profile.txt", table);
  const std::string line = "residual " + format_double(wave.residual) + " iterations " +
                           std::to_string(wave.iterations) + "\n";
  write_text_file(out / "residual.txt", line);
  std::cout << line;
  return kOk;
}

int cmd_probe(long samples, std::uint64_t seed, const std::vector<double>& point,
              const std::optional<fs::path>& out) {
  Json report;
  if (!point.empty()) {
    if (point.size() != 4) throw PreconditionError("--point expects alpha,beta,sigma,theta");
    report = to_json(probe_point(point[0], point[1], point[2], point[3]));
  } else {
    report = to_json(run_probe(ProbeSpec{samples, seed}));
  }
  const std::string text = report.dump(2) + "\n";
  if (out) {
    fs::create_directories(*out);
    write_text_file(*out / "probe.json", text);
  }
  std::cout << text;
  return kOk;
}

int cmd_sweep(const fs::path& study, const fs::path& out, int jobs,
              std::optional<std::uint64_t> seed) {
  const SweepResult result = run_sweep(load_study(study), out, jobs, seed);
  for (const MemberResult& m : result.members) {
    std::cout << "member " << m.index << ": " << m.status;
    if (!m.error.empty()) std::cout << " (" << m.error << ")";
    std::cout << "\n";
  }
  return result.exit_code;
}

int cmd_plots(const fs::path& dir) {
  const PlotReport report = emit_plot_scripts(dir);
  for (const std::string& name : report.written) std::cout << "wrote " << name << "\n";
  for (const std::string& notice : report.notices) std::cout << "notice: " << notice << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral simulator and analyticity diagnostics for the generalized Benjamin equation"};
  app.require_subcommand(1);

  fs::path config, out = "out";
  std::optional<fs::path> resume;
  std::optional<std::uint64_t> seed;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Integrate one configuration");
  run->add_option("--config", config, "Run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory");
  run->add_option("--resume", resume, "Checkpoint to continue from")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the configured seed");

  SolitonArgs sol;
  auto* soliton = app.add_subcommand("soliton", "Compute a solitary-wave profile");
  soliton->add_option("--l", sol.l, "Dispersion parameter l");
  soliton->add_option("--p", sol.p, "Nonlinearity power p");
  soliton->add_option("--c", sol.c, "Wave speed (c < -l^2/4)");
  soliton->add_option("--n-points", sol.n_points, "Grid points");
  soliton->add_option("--length", sol.length, "Period L");
  soliton->add_option("--tol", sol.tol, "Residual tolerance");
  soliton->add_option("--max-iter", sol.max_iter, "Iteration limit");
  soliton->add_option("--out", out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter study");
  sweep->add_option("--config", config, "Study file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--jobs", jobs, "Concurrent members")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "Seed for every member");

  long samples = 1000000;
  std::uint64_t probe_seed = 0;
  std::vector<double> point;
  std::optional<fs::path> probe_out;
  auto* probe = app.add_subcommand("probe", "Monte Carlo check of the exponential lemma");
  probe->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  probe->add_option("--seed", probe_seed, "RNG seed");
  probe->add_option("--point", point, "Single point alpha,beta,sigma,theta")->delimiter(',');
  probe->add_option("--out", probe_out, "Directory for probe.json");

  auto* plots = app.add_subcommand("plots", "Write plot scripts for a run directory");
  plots->add_option("--out", out, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config, out, resume, seed);
    if (*soliton) return cmd_soliton(sol, out);
    if (*sweep) return cmd_sweep(config, out, jobs, seed);
    if (*probe) return cmd_probe(samples, probe_seed, point, probe_out);
    if (*plots) return cmd_plots(out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
