#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "benjamin/errors.hpp"
#include "benjamin/operators.hpp"
#include "benjamin/spectral.hpp"

namespace benjamin {

enum class Integrator { ifrk4, etdrk4 };
enum class Dealias { two_thirds, none };

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::ifrk4;
  Dealias dealias = Dealias::two_thirds;
  std::optional<MollifierSpec> mollifier;
  int snapshot_stride = 1;
  double cfl_guard = 1.0;
  // Turns off the nonlinear term; the step is then the exact linear flow.
  bool nonlinear = true;

  void validate() const;
  long total_steps() const;
};

struct SolverState {
  double t = 0.0;
  SpectralField u_hat;
  long step_count = 0;
  ModelParams params;
};

// Modes with |k| above this are zeroed around every nonlinear product:
// 2/3 k_max for p = 1, k_max * 2/(p+2) in general (exact for a degree p+1
// product). Dealias::none keeps everything below Nyquist.
double dealias_cutoff(const Grid& grid, int p, Dealias dealias);

// dt_cap = C_int / (k_cut * max|u|^p): explicit limit for the advective
// nonlinear term. The linear part is integrated exactly and imposes none.
double dt_cap(const Grid& grid, const ModelParams& params, Dealias dealias, double max_abs_u,
              double c_int = 1.0);

// Spectrum of -(1/(p+1)) d_x (v^{p+1}) with v = u (or mollify(u)); products
// are formed on the grid after truncation and the result truncated again.
SpectralField nonlinear_term(const SpectralField& u_hat, const ModelParams& params,
                             Dealias dealias, const MollifierSpec* mollifier = nullptr);

// Precomputed single-step integrator for a fixed (signed) dt.
class Stepper {
 public:
  Stepper(const Grid& grid, const ModelParams& params, const SolverConfig& cfg, double dt);

  // Advances in place; throws NumericalError when the result is not finite
  // (the state is left untouched in that case).
  void advance(SolverState& state) const;

  double dt() const { return dt_; }

 private:
  SpectralField nonlinear(const SpectralField& u) const;
  SpectralField advance_ifrk4(const SpectralField& u) const;
  SpectralField advance_etdrk4(const SpectralField& u) const;

  Grid grid_;
  ModelParams params_;
  SolverConfig cfg_;
  double dt_;
  std::vector<Complex> half_;  // exp(i phi dt / 2)
  std::vector<Complex> full_;  // exp(i phi dt)
  std::vector<Complex> q_, f1_, f2_, f3_;
};

// Single step with cfg.dt.
SolverState step(const SolverState& state, const SolverConfig& cfg);

// Initial state: transform, drop Nyquist, and (with dealiasing) truncate to
// the dealiased band so the run evolves the Galerkin-truncated system.
SolverState initial_state(const RealField& u0, const ModelParams& params,
                          const SolverConfig& cfg);

struct Trajectory {
  Grid grid;
  ModelParams params;
  std::vector<double> times;
  std::vector<SpectralField> snapshots;

  bool empty() const { return times.empty(); }
  std::size_t size() const { return times.size(); }
};

using Sink = std::function<void(const SolverState&)>;

enum class Direction { forward, backward };

struct IntegrateOptions {
  bool keep_snapshots = true;
  Direction direction = Direction::forward;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, SolverState last_good, Trajectory partial)
      : NumericalError(what), last_good_(std::move(last_good)), partial_(std::move(partial)) {}

  const SolverState& last_good() const { return last_good_; }
  const Trajectory& partial() const { return partial_; }
  long step_index() const { return last_good_.step_count; }

 private:
  SolverState last_good_;
  Trajectory partial_;
};

// Runs to t_end, calling every sink at step counts divisible by
// snapshot_stride and at the final step. Backward runs visit t = -step*dt.
Trajectory integrate(const RealField& u0, const ModelParams& params, const SolverConfig& cfg,
                     std::span<const Sink> sinks = {}, const IntegrateOptions& opts = {});

// Continues from an existing state (step_count > 0 resumes a run; the
// starting state is not re-emitted to the sinks then).
Trajectory integrate_from(SolverState state, const SolverConfig& cfg,
                          std::span<const Sink> sinks = {}, const IntegrateOptions& opts = {});

}  // namespace benjamin
