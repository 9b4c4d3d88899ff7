#pragma once

#include <optional>
#include <vector>

#include "benjamin/diagnostics.hpp"
#include "benjamin/solver.hpp"

namespace benjamin {

struct BourgainIndex {
  double sigma = 0.0;
  double s = 0.0;
  double b = 0.0;
};

// Smooth time cutoff: 1 on [t0, t1], 0 outside [t0 - w, t1 + w] with
// w = t1 - t0, C-infinity transition built from exp(-1/x).
class TimeWindow {
 public:
  TimeWindow(double t0, double t1);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double support_lo() const { return t0_ - (t1_ - t0_); }
  double support_hi() const { return t1_ + (t1_ - t0_); }
  double cutoff(double t) const;

 private:
  double t0_, t1_;
};

// Discrete X^{sigma,s,b} norm of the cutoff extension psi*u:
//   (1/(2pi)^2) int int e^{2 sigma|xi|} <xi>^{2s} <tau - phi(xi)>^{2b}
//                       |F_{x,t}(psi u)|^2 d xi d tau.
// Uses the interaction variable v_hat = exp(-i phi t) u_hat, so that the tau
// transform of v_hat is sampled at lambda = tau - phi and the snapshot rate
// need not resolve the dispersive frequencies. The time series is zero padded
// by `padding` before the transform. Requires uniformly spaced snapshots
// covering the window's support.
double bourgain_norm_window(const Trajectory& traj, const BourgainIndex& idx,
                            const TimeWindow& win, const ModelParams& params, int padding = 4);

struct AuditRow {
  double sigma = 0.0;
  double delta = 0.0;      // sup_t ||u(t)||^2_{G^{sigma,0}} - ||u(0)||^2_{G^{sigma,0}}
  double bourgain = 0.0;   // proxy ||u||^3_{X_T^{sigma,0,b}}
  std::optional<double> ratio;  // delta / (sigma^theta * bourgain); empty at sigma = 0
};

struct AlmostConservationAudit {
  double horizon = 0.0;
  double theta = 0.0;
  double b = 0.0;
  std::vector<AuditRow> rows;
  std::optional<double> theta_fit;  // slope of log delta vs log sigma, small-sigma end
};

// Runs the solver over [-T, 2T] (backward and forward from u0) so the time
// cutoff of [0, T] is covered, then evaluates every sigma on that trajectory.
// The supremum runs over snapshot times in [0, T].
AlmostConservationAudit almost_conservation_audit(const RealField& u0, const ModelParams& params,
                                                  const SolverConfig& cfg,
                                                  const std::vector<double>& sigmas, double T,
                                                  double theta, double b);

// Merges a backward trajectory (times 0, -h, -2h, ...) and a forward one into
// a single increasing-time trajectory.
Trajectory join_trajectories(const Trajectory& backward, const Trajectory& forward);

}  // namespace benjamin
