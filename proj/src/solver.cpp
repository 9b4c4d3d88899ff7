#include "benjamin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace benjamin {

namespace {

const Complex kI(0.0, 1.0);

// Contour points for the ETD coefficient averages. The linear symbol is
// purely imaginary, so the full circle is used (no conjugate folding).
constexpr int kContourPoints = 64;

double integer_power(double v, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= v;
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("solver: dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw PreconditionError("solver: t_end must be >= 0");
  if (snapshot_stride < 1) throw PreconditionError("solver: snapshot_stride must be >= 1");
  if (!(cfl_guard > 0.0 && cfl_guard <= 1.0))
    throw PreconditionError("solver: cfl_guard must lie in (0, 1]");
  if (mollifier && !(mollifier->n > 0.0))
    throw PreconditionError("solver: mollifier cutoff must be positive");
  const double steps = t_end / dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
    throw PreconditionError("solver: t_end must be an integer multiple of dt");
}

long SolverConfig::total_steps() const { return std::lround(t_end / dt); }

double dealias_cutoff(const Grid& grid, int p, Dealias dealias) {
  if (dealias == Dealias::none) return grid.k_max();
  return grid.k_max() * 2.0 / (p + 2.0);
}

double dt_cap(const Grid& grid, const ModelParams& params, Dealias dealias, double max_abs_u,
              double c_int) {
  const double rate = dealias_cutoff(grid, params.p, dealias) * integer_power(max_abs_u, params.p);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return c_int / rate;
}

SpectralField nonlinear_term(const SpectralField& u_hat, const ModelParams& params,
                             Dealias dealias, const MollifierSpec* mollifier) {
  const Grid& grid = u_hat.grid();
  const double cutoff = dealias_cutoff(grid, params.p, dealias);
  SpectralField v = mollifier ? mollify(u_hat, *mollifier) : u_hat;
  for (int m = 0; m < grid.modes(); ++m)
    if (grid.wavenumber(m) > cutoff) v[m] = 0.0;
  v.zero_nyquist();

  RealField field = to_real(v);
  if (!field.all_finite()) throw NumericalError("nonlinear term: non-finite field");
  for (double& x : field.values()) x = integer_power(x, params.p + 1);
  if (!field.all_finite()) throw NumericalError("nonlinear term: power overflowed");
  SpectralField power = to_spectral(field);

  SpectralField out(grid);
  const double scale = -1.0 / (params.p + 1.0);
  for (int m = 1; m < grid.nyquist(); ++m) {
    const double k = grid.wavenumber(m);
    if (k > cutoff) break;
    out[m] = scale * kI * k * power[m];
  }
  return out;
}

Stepper::Stepper(const Grid& grid, const ModelParams& params, const SolverConfig& cfg,
                 double dt)
    : grid_(grid), params_(params), cfg_(cfg), dt_(dt) {
  const int modes = grid.modes();
  half_.resize(modes);
  full_.resize(modes);
  for (int m = 0; m < modes; ++m) {
    const double phi = phase_symbol(params, grid.wavenumber(m));
    half_[m] = std::exp(kI * phi * dt / 2.0);
    full_[m] = std::exp(kI * phi * dt);
  }
  half_.back() = 0.0;
  full_.back() = 0.0;

  if (cfg.integrator == Integrator::etdrk4) {
    q_.resize(modes);
    f1_.resize(modes);
    f2_.resize(modes);
    f3_.resize(modes);
    for (int m = 0; m < modes; ++m) {
      const Complex hl = kI * phase_symbol(params, grid.wavenumber(m)) * dt;
      Complex q = 0.0, a = 0.0, b = 0.0, c = 0.0;
      for (int j = 0; j < kContourPoints; ++j) {
        const double angle = 2.0 * std::numbers::pi * (j + 0.5) / kContourPoints;
        const Complex z = hl + Complex(std::cos(angle), std::sin(angle));
        const Complex ez = std::exp(z), ez2 = std::exp(z / 2.0);
        const Complex z3 = z * z * z;
        q += (ez2 - 1.0) / z;
        a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        b += (2.0 + z + ez * (-2.0 + z)) / z3;
        c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
      }
      q_[m] = dt * q / double(kContourPoints);
      f1_[m] = dt * a / double(kContourPoints);
      f2_[m] = dt * b / double(kContourPoints);
      f3_[m] = dt * c / double(kContourPoints);
    }
  }
}

SpectralField Stepper::nonlinear(const SpectralField& u) const {
  return nonlinear_term(u, params_, cfg_.dealias, cfg_.mollifier ? &*cfg_.mollifier : nullptr);
}

SpectralField Stepper::advance_ifrk4(const SpectralField& u) const {
  const int modes = grid_.modes();
  SpectralField work(grid_);

  const SpectralField a = nonlinear(u);
  for (int m = 0; m < modes; ++m) work[m] = half_[m] * (u[m] + 0.5 * dt_ * a[m]);
  const SpectralField b = nonlinear(work);
  for (int m = 0; m < modes; ++m) work[m] = half_[m] * u[m] + 0.5 * dt_ * b[m];
  const SpectralField c = nonlinear(work);
  for (int m = 0; m < modes; ++m) work[m] = full_[m] * u[m] + dt_ * half_[m] * c[m];
  const SpectralField d = nonlinear(work);

  SpectralField out(grid_);
  for (int m = 0; m < modes; ++m)
    out[m] = full_[m] * u[m] +
             dt_ / 6.0 * (full_[m] * a[m] + 2.0 * half_[m] * (b[m] + c[m]) + d[m]);
  return out;
}

SpectralField Stepper::advance_etdrk4(const SpectralField& u) const {
  const int modes = grid_.modes();
  const SpectralField nu = nonlinear(u);
  SpectralField a(grid_);
  for (int m = 0; m < modes; ++m) a[m] = half_[m] * u[m] + q_[m] * nu[m];
  const SpectralField na = nonlinear(a);
  SpectralField b(grid_);
  for (int m = 0; m < modes; ++m) b[m] = half_[m] * u[m] + q_[m] * na[m];
  const SpectralField nb = nonlinear(b);
  SpectralField c(grid_);
  for (int m = 0; m < modes; ++m) c[m] = half_[m] * a[m] + q_[m] * (2.0 * nb[m] - nu[m]);
  const SpectralField nc = nonlinear(c);

  SpectralField out(grid_);
  for (int m = 0; m < modes; ++m)
    out[m] = full_[m] * u[m] + f1_[m] * nu[m] + 2.0 * f2_[m] * (na[m] + nb[m]) + f3_[m] * nc[m];
  return out;
}

void Stepper::advance(SolverState& state) const {
  SpectralField next(grid_);
  if (!cfg_.nonlinear) {
    next = state.u_hat;
    for (int m = 0; m < grid_.modes(); ++m) next[m] = full_[m] * state.u_hat[m];
  } else {
    next = cfg_.integrator == Integrator::ifrk4 ? advance_ifrk4(state.u_hat)
                                                 : advance_etdrk4(state.u_hat);
  }
  next.enforce_real_modes();
  if (!next.all_finite()) {
    std::ostringstream msg;
    msg << "non-finite solution at step " << state.step_count + 1 << " (t = "
        << (state.step_count + 1) * dt_ << ")";
    throw NumericalError(msg.str());
  }
  state.u_hat = std::move(next);
  state.step_count += 1;
  state.t = state.step_count * dt_;
}

SolverState step(const SolverState& state, const SolverConfig& cfg) {
  cfg.validate();
  Stepper stepper(state.u_hat.grid(), state.params, cfg, cfg.dt);
  SolverState next = state;
  const long start = next.step_count;
  next.step_count = 0;
  stepper.advance(next);
  next.step_count = start + 1;
  next.t = state.t + cfg.dt;
  return next;
}

SolverState initial_state(const RealField& u0, const ModelParams& params,
                          const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!u0.all_finite()) throw PreconditionError("initial data contains NaN or Inf");
  SpectralField u_hat = to_spectral(u0);
  u_hat.zero_nyquist();
  if (cfg.nonlinear && cfg.dealias != Dealias::none) {
    const double cutoff = dealias_cutoff(u0.grid(), params.p, cfg.dealias);
    for (int m = 0; m < u_hat.modes(); ++m)
      if (u0.grid().wavenumber(m) > cutoff) u_hat[m] = 0.0;
  }
  return SolverState{0.0, std::move(u_hat), 0, params};
}

Trajectory integrate(const RealField& u0, const ModelParams& params, const SolverConfig& cfg,
                     std::span<const Sink> sinks, const IntegrateOptions& opts) {
  SolverState state = initial_state(u0, params, cfg);
  if (cfg.nonlinear) {
    const double cap = cfg.cfl_guard * dt_cap(u0.grid(), params, cfg.dealias, u0.max_abs());
    if (cfg.dt > cap) {
      std::ostringstream msg;
      msg << "solver: dt = " << cfg.dt << " exceeds cfl_guard * dt_cap = " << cap;
      throw PreconditionError(msg.str());
    }
  }
  return integrate_from(std::move(state), cfg, sinks, opts);
}

Trajectory integrate_from(SolverState state, const SolverConfig& cfg, std::span<const Sink> sinks,
                          const IntegrateOptions& opts) {
  cfg.validate();
  const Grid grid = state.u_hat.grid();
  const double signed_dt = opts.direction == Direction::forward ? cfg.dt : -cfg.dt;
  const long total = cfg.total_steps();
  if (state.step_count > total)
    throw PreconditionError("integrate: starting step lies beyond t_end");

  Trajectory traj{grid, state.params, {}, {}};
  auto emit = [&](const SolverState& s) {
    if (opts.keep_snapshots) {
      traj.times.push_back(s.t);
      traj.snapshots.push_back(s.u_hat);
    }
    for (const Sink& sink : sinks) sink(s);
  };

  if (state.step_count == 0) emit(state);
  Stepper stepper(grid, state.params, cfg, signed_dt);
  while (state.step_count < total) {
    try {
      stepper.advance(state);
    } catch (const NumericalError& e) {
      throw IntegrationError(e.what(), state, std::move(traj));
    }
    if (state.step_count % cfg.snapshot_stride == 0 || state.step_count == total) emit(state);
  }
  return traj;
}

}  // namespace benjamin
