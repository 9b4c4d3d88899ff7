#include "benjamin/analyticity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "benjamin/errors.hpp"

namespace benjamin {

RadiusFit fit_radius(const SpectralField& spectrum, const RadiusFitOptions& opts) {
  const Grid& grid = spectrum.grid();
  const double k_lo = opts.k_lo.value_or(grid.k_max() / 4.0);
  const double k_hi = opts.k_hi.value_or(2.0 * grid.k_max() / 3.0);
  if (!(k_lo > 0.0 && k_lo < k_hi)) throw PreconditionError("fit_radius: need 0 < k_lo < k_hi");

  const double peak = spectrum.max_abs();
  if (peak == 0.0) throw NumericalError("fit_radius: all-zero spectrum");
  const double floor = opts.floor_rel * peak;

  std::vector<int> band;
  for (int m = 1; m < grid.nyquist(); ++m) {
    const double k = grid.wavenumber(m);
    if (k >= k_lo && k <= k_hi) band.push_back(m);
  }

  // Moving-max envelope, each maximum kept at its own mode.
  const int half = std::max(0, opts.envelope_width / 2);
  std::vector<int> picked;
  for (std::size_t i = 0; i < band.size(); ++i) {
    const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
    const std::size_t hi = std::min(band.size() - 1, i + half);
    std::size_t best = lo;
    for (std::size_t j = lo; j <= hi; ++j)
      if (std::abs(spectrum[band[j]]) > std::abs(spectrum[band[best]])) best = j;
    if (std::abs(spectrum[band[best]]) <= floor) continue;
    if (picked.empty() || picked.back() != band[best]) picked.push_back(band[best]);
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

  const int n = static_cast<int>(picked.size());
  if (n < opts.min_points) {
    std::ostringstream msg;
    msg << "fit_radius: only " << n << " usable modes in [" << k_lo << ", " << k_hi
        << "] (need " << opts.min_points << ")";
    throw NumericalError(msg.str());
  }

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i) {
    const double k = grid.wavenumber(picked[i]);
    design(i, 0) = 1.0;
    design(i, 1) = -std::log(k);
    design(i, 2) = -k;
    target(i) = std::log(std::abs(spectrum[picked[i]]));
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd resid = design * coef - target;

  RadiusFit fit;
  fit.logC = coef(0);
  fit.r = coef(1);
  fit.raw_sigma = coef(2);
  fit.clamped = fit.raw_sigma < 0.0;
  fit.sigma = std::max(0.0, fit.raw_sigma);
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  fit.rms_residual = std::sqrt(resid.squaredNorm() / n);
  fit.n_points_used = n;
  return fit;
}

std::vector<RadiusRow> radius_timeseries(const Trajectory& traj, const RadiusFitOptions& opts,
                                         bool monotone) {
  std::vector<RadiusRow> rows;
  rows.reserve(traj.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < traj.size(); ++j) {
    RadiusRow row{traj.times[j], std::nullopt, {}};
    try {
      RadiusFit fit = fit_radius(traj.snapshots[j], opts);
      if (monotone) {
        running = std::min(running, fit.sigma);
        fit.sigma = running;
      }
      row.fit = fit;
      if (fit.clamped) row.flag = "clamped";
    } catch (const std::exception& e) {
      row.flag = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DecayLawResult fit_decay_law(std::span<const RadiusRow> series, double t_lo, double t_hi,
                             const DecayLawOptions& opts) {
  if (!(t_lo >= 1.0 && t_hi > t_lo))
    throw PreconditionError("fit_decay_law: window must satisfy 1 <= t_lo < t_hi");
  DecayLawResult out;
  std::optional<double> sigma0 = opts.sigma0;
  if (!sigma0) {
    for (const RadiusRow& row : series)
      if (row.fit) {
        sigma0 = row.fit->sigma;
        break;
      }
  }
  if (!sigma0) throw NumericalError("fit_decay_law: no valid rows");
  out.sigma0 = *sigma0;

  std::vector<double> xs, ys;
  double lo = 0.0, hi = 0.0;
  for (const RadiusRow& row : series) {
    if (!row.fit || row.t < t_lo || row.t > t_hi) continue;
    const double sigma = row.fit->sigma;
    if (!(sigma < *sigma0 * (1.0 - opts.plateau_tol)) || !(sigma > 0.0)) continue;
    if (xs.empty()) lo = row.t;
    hi = row.t;
    xs.push_back(std::log(row.t));
    ys.push_back(std::log(sigma));
  }
  if (xs.empty()) {
    out.plateau = true;
    return out;
  }
  const int n = static_cast<int>(xs.size());
  if (n < opts.min_rows) {
    std::ostringstream msg;
    msg << "fit_decay_law: only " << n << " rows below the plateau (need " << opts.min_rows
        << ")";
    throw NumericalError(msg.str());
  }
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = -xs[i];
    target(i) = ys[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd resid = design * coef - target;
  out.fit = DecayLawFit{coef(1), std::exp(coef(0)), lo, hi, std::sqrt(resid.squaredNorm() / n), n};
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass_plateau: return "PASS(plateau)";
    case Verdict::pass_bound: return "PASS(bound)";
    case Verdict::violation: return "VIOLATION";
  }
  return "?";
}

double gamma_bound(const ModelParams& params, double epsilon) {
  if (params.p == 1) return 4.0 / 3.0 + epsilon;
  const double p = params.p;
  return p * p + 3.0 * p + 2.0;
}

LowerBoundVerdict lower_bound_audit(const DecayLawResult& law, const ModelParams& params,
                                    double epsilon, double tolerance) {
  if (!(epsilon > 0.0)) throw PreconditionError("lower_bound_audit: epsilon must be > 0");
  LowerBoundVerdict out;
  out.gamma_bound = gamma_bound(params, epsilon);
  out.tolerance = tolerance;
  out.epsilon = epsilon;
  out.law = law;
  if (law.plateau || !law.fit) {
    out.verdict = Verdict::pass_plateau;
  } else {
    out.verdict = law.fit->gamma <= out.gamma_bound + tolerance ? Verdict::pass_bound
                                                                : Verdict::violation;
  }
  return out;
}

}  // namespace benjamin
