#include "benjamin/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "benjamin/analyticity.hpp"
#include "benjamin/bourgain.hpp"
#include "benjamin/diagnostics.hpp"
#include "benjamin/errors.hpp"
#include "benjamin/harness/checkpoint.hpp"
#include "benjamin/harness/initial_data.hpp"
#include "benjamin/harness/plots.hpp"
#include "benjamin/harness/table_io.hpp"

namespace fs = std::filesystem;

namespace benjamin::harness {

namespace {

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double relative_drift(const std::vector<DiagnosticsRow>& rows, double DiagnosticsRow::*field) {
  if (rows.empty()) return 0.0;
  const double ref = rows.front().*field;
  const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
  double worst = 0.0;
  for (const DiagnosticsRow& row : rows) worst = std::max(worst, std::abs(row.*field - ref) / scale);
  return worst;
}

Json fit_json(const RadiusFit& fit) {
  return Json{{"sigma", fit.sigma},         {"raw_sigma", fit.raw_sigma},
              {"clamped", fit.clamped},     {"r", fit.r},
              {"logC", fit.logC},           {"k_lo", fit.k_lo},
              {"k_hi", fit.k_hi},           {"rms_residual", fit.rms_residual},
              {"n_points", fit.n_points_used}};
}

// Decay law and lower-bound verdict from the running minimum of sigma_fit
// over rows in [decay_t_lo, t_final].
Json decay_law_json(const std::vector<DiagnosticsRow>& rows, const RunConfig& cfg) {
  const DiagnosticsSpec& diag = cfg.diagnostics;
  if (!diag.radius_fit) return Json{{"status", "skipped"}, {"message", "radius fit disabled"}};
  const double t_hi = rows.empty() ? 0.0 : rows.back().t;
  if (!(t_hi > diag.decay_t_lo))
    return Json{{"status", "skipped"}, {"message", "run ends before decay_t_lo"}};

  std::vector<RadiusRow> series;
  double running = std::numeric_limits<double>::infinity();
  for (const DiagnosticsRow& row : rows) {
    RadiusRow r{row.t, std::nullopt, {}};
    if (row.sigma_fit) {
      running = std::min(running, *row.sigma_fit);
      RadiusFit fit;
      fit.sigma = running;
      r.fit = fit;
    } else {
      r.flag = "no fit";
    }
    series.push_back(r);
  }
  try {
    const DecayLawResult law = fit_decay_law(series, diag.decay_t_lo, t_hi);
    const LowerBoundVerdict v = lower_bound_audit(law, cfg.model, diag.epsilon);
    Json out{{"status", law.plateau ? "plateau" : "fit"}, {"sigma0", law.sigma0}};
    if (law.fit) {
      out["gamma"] = law.fit->gamma;
      out["c"] = law.fit->c;
      out["t_lo"] = law.fit->t_lo;
      out["t_hi"] = law.fit->t_hi;
      out["n_rows"] = law.fit->n_rows;
      out["rms_residual"] = law.fit->rms_residual;
    }
    out["verdict"] = to_string(v.verdict);
    out["gamma_bound"] = v.gamma_bound;
    out["tolerance"] = v.tolerance;
    out["epsilon"] = v.epsilon;
    return out;
  } catch (const std::exception& e) {
    return Json{{"status", "error"}, {"message", e.what()}};
  }
}

Json audit_json(const AlmostConservationAudit& audit) {
  Json rows = Json::array();
  for (const AuditRow& row : audit.rows) {
    Json r{{"sigma", row.sigma}, {"delta", row.delta}, {"bourgain", row.bourgain}};
    r["ratio"] = row.ratio ? Json(*row.ratio) : Json(nullptr);
    rows.push_back(r);
  }
  Json out{{"T", audit.horizon}, {"theta", audit.theta}, {"b", audit.b}, {"rows", rows}};
  out["theta_fit"] = audit.theta_fit ? Json(*audit.theta_fit) : Json(nullptr);
  return out;
}

std::string audit_table(const AlmostConservationAudit& audit) {
  std::string out = "sigma,delta,bourgain,ratio\n";
  for (const AuditRow& row : audit.rows)
    out += format_double(row.sigma) + "," + format_double(row.delta) + "," +
           format_double(row.bourgain) + "," +
           (row.ratio ? format_double(*row.ratio) : std::string("nan")) + "\n";
  out += "theta_fit," + (audit.theta_fit ? format_double(*audit.theta_fit) : std::string("nan")) +
         "\n";
  return out;
}

}  // namespace

DiagnosticsRow diagnostics_row(const SolverState& state, const RunConfig& cfg) {
  const RealField u = to_real(state.u_hat);
  DiagnosticsRow row;
  row.t = state.t;
  row.mass = mass(u);
  row.energy = energy(u, cfg.model);
  row.sobolev = gevrey_norm(state.u_hat, GevreyIndex{0.0, cfg.diagnostics.sobolev_s});
  for (const GevreyIndex& g : cfg.diagnostics.gevrey) row.gevrey.push_back(gevrey_norm(state.u_hat, g));
  if (cfg.diagnostics.radius_fit) {
    try {
      const RadiusFit fit = fit_radius(state.u_hat, cfg.radius_options());
      row.sigma_fit = fit.sigma;
      row.sigma_r = fit.r;
      row.sigma_resid = fit.rms_residual;
    } catch (const NumericalError&) {
      // Row keeps empty fit columns.
    }
  }
  return row;
}

Json run_experiment(const RunConfig& cfg, const fs::path& out_dir, const RunOptions& opts) {
  fs::create_directories(out_dir);
  const fs::path spectra_dir = out_dir / "spectra";
  if (cfg.output.spectra) fs::create_directories(spectra_dir);

  const Grid grid = cfg.grid();
  const std::uint64_t hash = config_hash(cfg);
  const bool want_bourgain = !cfg.diagnostics.bourgain.empty();

  std::vector<DiagnosticsRow> rows;
  std::vector<double> snap_times;
  std::vector<SpectralField> snaps;
  std::mt19937_64 rng(cfg.seed);
  std::optional<SolverState> start;
  std::optional<SolverState> last;

  const RealField u0 = make_initial_data(cfg);

  if (opts.resume) {
    Checkpoint ck = read_checkpoint(*opts.resume);
    if (ck.config_hash != hash)
      throw ConfigError(opts.resume->string(), 0,
                        "checkpoint config hash " + hex(ck.config_hash) +
                            " does not match the configuration (" + hex(hash) + ")");
    if (ck.state.step_count > cfg.solver.total_steps())
      throw ConfigError(opts.resume->string(), 0, "checkpoint lies beyond solver.t_end");
    std::istringstream(ck.rng_state) >> rng;
    rows = std::move(ck.rows);
    snap_times = std::move(ck.snapshot_times);
    snaps = std::move(ck.snapshots);
    const fs::path old_spectra = opts.resume->parent_path() / "spectra";
    if (cfg.output.spectra && fs::is_directory(old_spectra) &&
        !fs::equivalent(old_spectra, spectra_dir)) {
      for (const auto& entry : fs::directory_iterator(old_spectra))
        fs::copy_file(entry.path(), spectra_dir / entry.path().filename(),
                      fs::copy_options::overwrite_existing);
    }
    start = std::move(ck.state);
    last = start;
  }

  const Sink record = [&](const SolverState& s) {
    rows.push_back(diagnostics_row(s, cfg));
    if (cfg.output.spectra)
      write_text_file(spectra_dir / spectrum_file_name(s.step_count), spectrum_table(s.u_hat));
    if (want_bourgain) {
      snap_times.push_back(s.t);
      snaps.push_back(s.u_hat);
    }
    last = s;
  };
  const std::vector<Sink> sinks{record};
  const IntegrateOptions iopts{false, Direction::forward};

  auto flush = [&](const std::string& status, const std::string& error) {
    std::string table = timeseries_header(cfg.diagnostics.gevrey) + "\n";
    for (const DiagnosticsRow& row : rows) table += timeseries_line(row) + "\n";
    write_text_file(out_dir / "timeseries.csv", table);

    if (cfg.output.checkpoint && last) {
      std::ostringstream rng_text;
      rng_text << rng;
      write_checkpoint(out_dir / "checkpoint.bin",
                       Checkpoint{hash, *last, rng_text.str(), rows, snap_times, snaps});
    }

    Json summary;
    summary["status"] = status;
    if (!error.empty()) summary["error"] = error;
    summary["config_hash"] = hex(hash);
    summary["model"] = Json{{"l", cfg.model.l}, {"p", cfg.model.p}};
    summary["grid"] = Json{{"n_points", cfg.n_points}, {"length", cfg.length}};
    summary["solver"] = Json{{"dt", cfg.solver.dt},
                             {"t_end", cfg.solver.t_end},
                             {"integrator", to_string(cfg.solver.integrator)},
                             {"dealias", to_string(cfg.solver.dealias)}};
    summary["steps"] = last ? last->step_count : 0;
    summary["rows"] = rows.size();
    if (!rows.empty()) {
      const DiagnosticsRow& first = rows.front();
      const DiagnosticsRow& fin = rows.back();
      summary["initial"] = Json{{"mass", first.mass}, {"energy", first.energy}};
      Json gev = Json::array();
      for (std::size_t i = 0; i < cfg.diagnostics.gevrey.size(); ++i)
        gev.push_back(Json{{"sigma", cfg.diagnostics.gevrey[i].sigma},
                           {"s", cfg.diagnostics.gevrey[i].s},
                           {"norm", fin.gevrey[i]}});
      summary["final"] = Json{{"t", fin.t},
                              {"mass", fin.mass},
                              {"energy", fin.energy},
                              {"sobolev_s", cfg.diagnostics.sobolev_s},
                              {"sobolev", fin.sobolev},
                              {"gevrey", gev}};
      summary["drift"] = Json{{"mass_rel", relative_drift(rows, &DiagnosticsRow::mass)},
                              {"energy_rel", relative_drift(rows, &DiagnosticsRow::energy)}};
    }
    if (cfg.diagnostics.radius_fit && last) {
      try {
        summary["radius"] = Json{{"final_fit", fit_json(fit_radius(last->u_hat, cfg.radius_options()))}};
      } catch (const NumericalError& e) {
        summary["radius"] = Json{{"final_fit", nullptr}, {"flag", e.what()}};
      }
      summary["decay_law"] = decay_law_json(rows, cfg);
    }
    if (cfg.diagnostics.exact && last) {
      if (auto exact = exact_solution(cfg, u0, last->t)) {
        const RealField u = to_real(last->u_hat);
        double err = 0.0;
        for (int j = 0; j < grid.size(); ++j) err = std::max(err, std::abs(u[j] - (*exact)[j]));
        summary["exact"] = Json{{"t", last->t}, {"linf_error", err}};
      }
    }
    return summary;
  };

  Json summary;
  try {
    if (start) {
      integrate_from(*start, cfg.solver, sinks, iopts);
    } else {
      integrate(u0, cfg.model, cfg.solver, sinks, iopts);
    }
  } catch (const IntegrationError& e) {
    last = e.last_good();
    write_text_file(out_dir / "summary.json", flush("failed", e.what()).dump(2) + "\n");
    throw;
  }
  summary = flush("ok", "");

  if (want_bourgain) {
    Json list = Json::array();
    const Trajectory traj{grid, cfg.model, snap_times, snaps};
    const double T = cfg.solver.t_end;
    for (const BourgainIndex& idx : cfg.diagnostics.bourgain) {
      Json entry{{"sigma", idx.sigma}, {"s", idx.s}, {"b", idx.b},
                 {"window", Json::array({T / 3.0, 2.0 * T / 3.0})}};
      try {
        entry["norm"] = bourgain_norm_window(traj, idx, TimeWindow(T / 3.0, 2.0 * T / 3.0), cfg.model);
      } catch (const std::exception& e) {
        entry["norm"] = nullptr;
        entry["flag"] = e.what();
      }
      list.push_back(entry);
    }
    summary["bourgain"] = list;
  }

  if (!cfg.diagnostics.audit_sigmas.empty()) {
    const double T = cfg.diagnostics.audit_T.value_or(cfg.solver.t_end);
    try {
      const AlmostConservationAudit audit =
          almost_conservation_audit(u0, cfg.model, cfg.solver, cfg.diagnostics.audit_sigmas, T,
                                    cfg.diagnostics.audit_theta, cfg.diagnostics.audit_b);
      summary["audit"] = audit_json(audit);
      write_text_file(out_dir / "audit.csv", audit_table(audit));
    } catch (const PreconditionError& e) {
      throw ConfigError("diagnostics.audit_sigmas", 0, e.what());
    } catch (const NumericalError& e) {
      summary["status"] = "failed";
      summary["error"] = std::string("audit: ") + e.what();
      write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
      throw;
    }
  }

  write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
  if (cfg.output.plots) emit_plot_scripts(out_dir);
  return summary;
}

}  // namespace benjamin::harness
