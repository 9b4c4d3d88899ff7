#include <gtest/gtest.h>

#include <numbers>

#include "benjamin/bourgain.hpp"
#include "benjamin/errors.hpp"
#include "support.hpp"

using namespace benjamin;
using namespace benjamin::testing;

namespace {

constexpr double kPi = std::numbers::pi;

RealField gaussian(const Grid& g, double width = 1.5) {
  return sample_fn(g, [&](double x) { return std::exp(-(x / width) * (x / width)); });
}

Trajectory run(const Grid& g, double t_end, bool nonlinear, double dt = 1e-2, int stride = 5) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.snapshot_stride = stride;
  cfg.nonlinear = nonlinear;
  return integrate(gaussian(g), {0.5, 1}, cfg);
}

}  // namespace

TEST(TimeWindow, CutoffShape) {
  const TimeWindow win(1.0, 3.0);
  EXPECT_EQ(win.support_lo(), -1.0);
  EXPECT_EQ(win.support_hi(), 5.0);
  for (double t : {1.0, 2.0, 3.0}) EXPECT_EQ(win.cutoff(t), 1.0);
  for (double t : {-1.0, -5.0, 5.0, 9.0}) EXPECT_EQ(win.cutoff(t), 0.0);
  double prev = 1.0;
  for (double t = 3.0; t <= 5.0; t += 1e-3) {
    EXPECT_LE(win.cutoff(t), prev);
    prev = win.cutoff(t);
  }
  EXPECT_NEAR(win.cutoff(4.0), 0.5, 1e-15);
  EXPECT_NEAR(win.cutoff(0.0), 0.5, 1e-15);
  // Flat to all orders at the junctions.
  EXPECT_LT(1.0 - win.cutoff(3.0 + 0.02), 1e-20);
  EXPECT_LT(win.cutoff(5.0 - 0.02), 1e-20);
  EXPECT_THROW(TimeWindow(2.0, 2.0), PreconditionError);
}

TEST(BourgainNorm, ZeroTrajectory) {
  const Grid g(64, 20.0);
  Trajectory traj{g, {0.5, 1}, {}, {}};
  for (int i = 0; i <= 40; ++i) {
    traj.times.push_back(0.1 * i);
    traj.snapshots.emplace_back(g);
  }
  EXPECT_EQ(bourgain_norm_window(traj, {0.2, 1.0, 0.6}, TimeWindow(1.5, 2.5), {0.5, 1}), 0.0);
}

TEST(BourgainNorm, UnweightedIsSpaceTimeL2) {
  const Grid g(128, 40.0);
  const Trajectory traj = run(g, 3.0, true);
  const TimeWindow win(1.0, 2.0);
  const double h = traj.times[1] - traj.times[0];
  double direct = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double psi = win.cutoff(traj.times[j]);
    direct += h * psi * psi * std::pow(traj.snapshots[j].l2_norm(), 2);
  }
  const double norm = bourgain_norm_window(traj, {0.0, 0.0, 0.0}, win, {0.5, 1});
  EXPECT_NEAR(norm, std::sqrt(direct), 1e-10 * std::sqrt(direct));
}

TEST(BourgainNorm, LinearFlowMatchesCutoffSpectrum) {
  // For u = W(t) u0 the interaction variable is constant, so the b-weight
  // acts on the transform of psi alone.
  const Grid g(128, 40.0);
  const Trajectory traj = run(g, 3.0, false);
  const TimeWindow win(1.0, 2.0);
  const double h = traj.times[1] - traj.times[0];
  const int samples = static_cast<int>(traj.size());
  int padded = 1;
  while (padded < 4 * samples) padded *= 2;
  double weighted = 0.0, plain = 0.0, max_weight = 0.0;
  for (int q = 0; q < padded; ++q) {
    Complex sum = 0.0;
    for (int i = 0; i < samples; ++i)
      sum += win.cutoff(traj.times[i]) * std::polar(1.0, -2.0 * kPi * q * i / padded);
    const int sq = q < padded / 2 ? q : q - padded;
    const double weight = std::pow(1.0 + std::abs(2.0 * kPi * sq / (padded * h)), 1.2);
    weighted += weight * std::norm(sum);
    plain += std::norm(sum);
    if (std::norm(sum) > 1e-30 * samples * samples) max_weight = std::max(max_weight, weight);
  }
  const double expected = std::sqrt(weighted / plain);
  const double b0 = bourgain_norm_window(traj, {0.0, 0.0, 0.0}, win, {0.5, 1});
  const double b6 = bourgain_norm_window(traj, {0.0, 0.0, 0.6}, win, {0.5, 1});
  EXPECT_NEAR(b6 / b0, expected, 1e-10 * expected);
  EXPECT_GT(b6 / b0, 1.0);
  EXPECT_LT(b6 / b0, std::sqrt(max_weight));
}

TEST(BourgainNorm, Preconditions) {
  const Grid g(64, 20.0);
  const Trajectory traj = run(g, 1.0, true);
  EXPECT_THROW(bourgain_norm_window(traj, {0.0, 0.0, 0.6}, TimeWindow(0.5, 1.0), {0.5, 1}), PreconditionError);
  Trajectory uneven = traj;
  uneven.times[3] += 0.01;
  EXPECT_THROW(bourgain_norm_window(uneven, {0.0, 0.0, 0.6}, TimeWindow(0.4, 0.6), {0.5, 1}), PreconditionError);
  EXPECT_THROW(bourgain_norm_window(traj, {-1.0, 0.0, 0.6}, TimeWindow(0.4, 0.6), {0.5, 1}), PreconditionError);
}

TEST(JoinTrajectories, IncreasingTimesWithoutDuplicate) {
  const Grid g(64, 20.0);
  SolverConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  cfg.nonlinear = false;
  const Trajectory fwd = integrate(gaussian(g), {0.5, 1}, cfg);
  const Trajectory bwd = integrate(gaussian(g), {0.5, 1}, cfg, {}, {true, Direction::backward});
  const Trajectory joined = join_trajectories(bwd, fwd);
  ASSERT_EQ(joined.size(), 7u);
  for (std::size_t j = 1; j < joined.size(); ++j) EXPECT_GT(joined.times[j], joined.times[j - 1]);
  EXPECT_NEAR(joined.times.front(), -0.3, 1e-15);
}

TEST(Audit, ZeroSigmaAndLinearFlow) {
  const Grid g(128, 40.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.snapshot_stride = 50;
  // Delta at sigma = 0 is the mass drift of the integrator.
  const auto nonlinear = almost_conservation_audit(gaussian(g), {0.5, 1}, cfg, {0.0, 0.2}, 1.0, 0.5, 0.6);
  ASSERT_EQ(nonlinear.rows.size(), 2u);
  EXPECT_LT(std::abs(nonlinear.rows[0].delta), 1e-13);
  EXPECT_FALSE(nonlinear.rows[0].ratio.has_value());
  EXPECT_GT(nonlinear.rows[1].delta, 1e-6);

  cfg.nonlinear = false;
  const auto linear = almost_conservation_audit(gaussian(g), {0.5, 1}, cfg, {0.1, 0.2, 0.4}, 1.0, 0.5, 0.6);
  for (const AuditRow& row : linear.rows) EXPECT_LT(std::abs(row.delta), 1e-12) << row.sigma;
}

TEST(Audit, Preconditions) {
  const Grid g(64, 20.0);
  SolverConfig cfg;
  cfg.dt = 1e-2;
  EXPECT_THROW(almost_conservation_audit(gaussian(g), {0.5, 2}, cfg, {0.1}, 1.0, 0.5, 0.6), PreconditionError);
  EXPECT_THROW(almost_conservation_audit(gaussian(g), {0.5, 1}, cfg, {0.1}, 1.0, 0.8, 0.6), PreconditionError);
  EXPECT_THROW(almost_conservation_audit(gaussian(g), {0.5, 1}, cfg, {0.1}, 1.0, 0.5, 0.4), PreconditionError);
  cfg.snapshot_stride = 7;
  EXPECT_THROW(almost_conservation_audit(gaussian(g), {0.5, 1}, cfg, {0.1}, 1.0, 0.5, 0.6), PreconditionError);
}
