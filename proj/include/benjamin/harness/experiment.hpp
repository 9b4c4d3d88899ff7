#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "benjamin/harness/config.hpp"

namespace benjamin::harness {

using Json = nlohmann::ordered_json;

// Diagnostics of one solver state (norms, energy, radius fit when enabled).
DiagnosticsRow diagnostics_row(const SolverState& state, const RunConfig& cfg);

struct RunOptions {
  std::optional<std::filesystem::path> resume;  // checkpoint to continue from
};

// Integrates the configured problem and writes into out_dir:
//   timeseries.csv, summary.json, [spectra/spectrum_NNNNNN.txt],
//   [audit.csv], [checkpoint.bin], [plot_*.gp].
// Returns the summary. Throws ConfigError for a checkpoint of another
// configuration; on a solver failure the partial table, checkpoint and a
// summary with status "failed" are written before the NumericalError
// propagates.
Json run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir,
                    const RunOptions& opts = {});

}  // namespace benjamin::harness
