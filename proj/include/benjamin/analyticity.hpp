#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "benjamin/operators.hpp"
#include "benjamin/solver.hpp"
#include "benjamin/spectral.hpp"

namespace benjamin {

struct RadiusFitOptions {
  std::optional<double> k_lo;  // default k_max / 4
  std::optional<double> k_hi;  // default 2 k_max / 3
  double floor_rel = 1e-13;    // modes below floor_rel * max|u_hat| are ignored
  int envelope_width = 5;      // moving-max window, in modes
  int min_points = 8;
};

// |u_hat(k)| ~ C |k|^{-r} e^{-sigma |k|} fitted over a band of the spectrum.
struct RadiusFit {
  double sigma = 0.0;      // clamped at 0
  double raw_sigma = 0.0;  // least-squares value before clamping
  bool clamped = false;
  double r = 0.0;
  double logC = 0.0;
  double k_lo = 0.0;
  double k_hi = 0.0;
  double rms_residual = 0.0;
  int n_points_used = 0;
};

// Least squares of log|u_hat| on (1, -log k, -k) over the moving-max envelope
// of the band. The envelope keeps each window maximum at its own wavenumber
// (duplicates dropped), so model-exact data is fitted exactly.
// Throws NumericalError on an all-zero spectrum or too few usable points.
RadiusFit fit_radius(const SpectralField& spectrum, const RadiusFitOptions& opts = {});

struct RadiusRow {
  double t = 0.0;
  std::optional<RadiusFit> fit;
  std::string flag;  // empty when the fit succeeded
};

// fit_radius per snapshot. With monotone = true the reported sigma is the
// running minimum (the uniform radius over [0, t]).
std::vector<RadiusRow> radius_timeseries(const Trajectory& traj, const RadiusFitOptions& opts = {},
                                         bool monotone = false);

// sigma(t) ~ c t^{-gamma}.
struct DecayLawFit {
  double gamma = 0.0;
  double c = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double rms_residual = 0.0;
  int n_rows = 0;
};

struct DecayLawOptions {
  std::optional<double> sigma0;  // default: sigma of the earliest valid row
  double plateau_tol = 0.02;     // rows within this fraction of sigma0 count as plateau
  int min_rows = 8;
};

struct DecayLawResult {
  double sigma0 = 0.0;
  bool plateau = false;  // sigma never left sigma0: the bound is inactive
  std::optional<DecayLawFit> fit;
};

// Fits log sigma against log t over rows in [t_lo, t_hi] whose sigma lies
// below sigma0 (1 - plateau_tol). Requires t_lo >= 1. Throws NumericalError
// when some rows departed from sigma0 but fewer than min_rows are usable.
DecayLawResult fit_decay_law(std::span<const RadiusRow> series, double t_lo, double t_hi,
                             const DecayLawOptions& opts = {});

enum class Verdict { pass_plateau, pass_bound, violation };

const char* to_string(Verdict v);

struct LowerBoundVerdict {
  Verdict verdict = Verdict::pass_plateau;
  double gamma_bound = 0.0;
  double tolerance = 0.2;
  double epsilon = 0.01;
  DecayLawResult law;
};

// Algebraic lower-bound exponent: 4/3 + epsilon for p = 1, p^2 + 3p + 2 for p >= 2.
double gamma_bound(const ModelParams& params, double epsilon);

LowerBoundVerdict lower_bound_audit(const DecayLawResult& law, const ModelParams& params,
                                    double epsilon = 0.01, double tolerance = 0.2);

}  // namespace benjamin
