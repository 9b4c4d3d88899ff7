#include "benjamin/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft_plans.hpp"

namespace benjamin {

namespace {

double transition(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - x));
  const double b = std::exp(-1.0 / x);
  return a / (a + b);
}

int next_power_of_two(int n) {
  int out = 1;
  while (out < n) out *= 2;
  return out;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TimeWindow::TimeWindow(double t0, double t1) : t0_(t0), t1_(t1) {
  if (!(t1 > t0)) throw PreconditionError("time window: requires t1 > t0");
}

double TimeWindow::cutoff(double t) const {
  const double width = t1_ - t0_;
  if (t >= t0_ && t <= t1_) return 1.0;
  const double distance = t < t0_ ? t0_ - t : t - t1_;
  return transition(distance / width);
}

double bourgain_norm_window(const Trajectory& traj, const BourgainIndex& idx,
                            const TimeWindow& win, const ModelParams& params, int padding) {
  if (traj.size() < 2) throw PreconditionError("bourgain norm: trajectory too short");
  const Grid& grid = traj.grid;
  if (idx.sigma < 0.0) throw PreconditionError("bourgain norm: sigma must be >= 0");
  if (idx.sigma * grid.k_max() > kExponentGuard)
    throw PreconditionError("bourgain norm: sigma*k_max exceeds the overflow guard");

  const double h = traj.times[1] - traj.times[0];
  if (!(h > 0.0)) throw PreconditionError("bourgain norm: snapshot times must increase");
  for (std::size_t j = 1; j < traj.size(); ++j)
    if (std::abs((traj.times[j] - traj.times[j - 1]) - h) > 1e-9 * std::max(1.0, h))
      throw PreconditionError("bourgain norm: snapshots are not uniformly spaced");
  const double slack = 1e-9 * std::max(1.0, std::abs(win.support_hi()));
  if (traj.times.front() > win.support_lo() + slack ||
      traj.times.back() < win.support_hi() - slack) {
    std::ostringstream msg;
    msg << "bourgain norm: trajectory [" << traj.times.front() << ", " << traj.times.back()
        << "] does not cover the cutoff support [" << win.support_lo() << ", "
        << win.support_hi() << "]";
    throw PreconditionError(msg.str());
  }

  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < traj.size(); ++j)
    if (traj.times[j] >= win.support_lo() - slack && traj.times[j] <= win.support_hi() + slack)
      used.push_back(j);
  const int samples = static_cast<int>(used.size());
  const int padded = next_power_of_two(std::max(2, padding) * samples);

  std::vector<double> lambda_weight(padded);
  for (int q = 0; q < padded; ++q) {
    const int signed_q = q < padded / 2 ? q : q - padded;
    const double lambda = 2.0 * std::numbers::pi * signed_q / (padded * h);
    lambda_weight[q] = std::pow(bracket(lambda), 2.0 * idx.b);
  }
  std::vector<double> psi(samples);
  for (int i = 0; i < samples; ++i) psi[i] = win.cutoff(traj.times[used[i]]);

  std::vector<Complex> series(padded), spectrum(padded);
  double total = 0.0;
  for (int m = 0; m < grid.modes(); ++m) {
    const double k = grid.wavenumber(m);
    const double phi = phase_symbol(params, k);
    std::fill(series.begin(), series.end(), Complex(0.0, 0.0));
    bool any = false;
    for (int i = 0; i < samples; ++i) {
      const std::size_t j = used[i];
      const Complex u = traj.snapshots[j][m];
      if (u == Complex(0.0, 0.0) || psi[i] == 0.0) continue;
      const double angle = -phi * traj.times[j];
      series[i] = psi[i] * Complex(std::cos(angle), std::sin(angle)) * u;
      any = true;
    }
    if (!any) continue;
    detail::c2c_forward(padded, series.data(), spectrum.data());
    double mode_sum = 0.0;
    for (int q = 0; q < padded; ++q) mode_sum += lambda_weight[q] * std::norm(spectrum[q]);
    // |h G|^2 summed with d lambda / (2 pi) = 1 / (padded h).
    mode_sum *= h / padded;
    total += grid.mode_weight(m) * std::pow(bracket(k), 2.0 * idx.s) *
             std::exp(2.0 * idx.sigma * k) * mode_sum;
  }
  return std::sqrt(total / grid.length());
}

Trajectory join_trajectories(const Trajectory& backward, const Trajectory& forward) {
  Trajectory out{forward.grid, forward.params, {}, {}};
  for (std::size_t j = backward.size(); j-- > 1;) {
    out.times.push_back(backward.times[j]);
    out.snapshots.push_back(backward.snapshots[j]);
  }
  out.times.insert(out.times.end(), forward.times.begin(), forward.times.end());
  out.snapshots.insert(out.snapshots.end(), forward.snapshots.begin(), forward.snapshots.end());
  return out;
}

AlmostConservationAudit almost_conservation_audit(const RealField& u0, const ModelParams& params,
                                                  const SolverConfig& cfg,
                                                  const std::vector<double>& sigmas, double T,
                                                  double theta, double b) {
  if (params.p != 1) throw PreconditionError("almost-conservation audit: requires p = 1");
  if (!(theta > 0.0 && theta < 0.75))
    throw PreconditionError("almost-conservation audit: theta must lie in (0, 3/4)");
  if (!(b > 0.5 && b < 1.0))
    throw PreconditionError("almost-conservation audit: b must lie in (1/2, 1)");
  if (!(T > 0.0)) throw PreconditionError("almost-conservation audit: T must be > 0");
  for (double sigma : sigmas)
    if (sigma < 0.0 || sigma * u0.grid().k_max() > kExponentGuard)
      throw PreconditionError("almost-conservation audit: sigma outside [0, 700/k_max]");

  SolverConfig forward_cfg = cfg;
  forward_cfg.t_end = 2.0 * T;
  SolverConfig backward_cfg = cfg;
  backward_cfg.t_end = T;
  const double spacing = cfg.dt * cfg.snapshot_stride;
  const double ratio = T / spacing;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw PreconditionError(
        "almost-conservation audit: T must be a multiple of dt * snapshot_stride");

  const Trajectory forward = integrate(u0, params, forward_cfg);
  const Trajectory backward =
      integrate(u0, params, backward_cfg, {}, {true, Direction::backward});
  const Trajectory joined = join_trajectories(backward, forward);
  const TimeWindow window(0.0, T);

  AlmostConservationAudit out{T, theta, b, {}, std::nullopt};
  for (double sigma : sigmas) {
    AuditRow row;
    row.sigma = sigma;
    const double initial = std::pow(gevrey_norm(forward.snapshots.front(), {sigma, 0.0}), 2);
    double sup = initial;
    for (std::size_t j = 0; j < forward.size(); ++j) {
      if (forward.times[j] > T + 1e-9 * T) break;
      sup = std::max(sup, std::pow(gevrey_norm(forward.snapshots[j], {sigma, 0.0}), 2));
    }
    row.delta = sup - initial;
    row.bourgain = std::pow(bourgain_norm_window(joined, {sigma, 0.0, b}, window, params), 3);
    if (sigma > 0.0 && row.bourgain > 0.0)
      row.ratio = row.delta / (std::pow(sigma, theta) * row.bourgain);
    out.rows.push_back(row);
  }

  std::vector<AuditRow> positive;
  for (const AuditRow& row : out.rows)
    if (row.sigma > 0.0 && row.delta > 0.0) positive.push_back(row);
  std::sort(positive.begin(), positive.end(),
            [](const AuditRow& a, const AuditRow& b) { return a.sigma < b.sigma; });
  if (positive.size() > 3) positive.resize(3);
  if (positive.size() >= 2) {
    std::vector<double> xs, ys;
    for (const AuditRow& row : positive) {
      xs.push_back(std::log(row.sigma));
      ys.push_back(std::log(row.delta));
    }
    out.theta_fit = slope(xs, ys);
  }
  return out;
}

}  // namespace benjamin
