#include <gtest/gtest.h>

#include <numbers>

#include "benjamin/errors.hpp"
#include "benjamin/solver.hpp"
#include "support.hpp"

using namespace benjamin;
using namespace benjamin::testing;

namespace {

constexpr double kPi = std::numbers::pi;

RealField gaussian(const Grid& g, double amplitude = 1.0, double width = 1.5) {
  return sample_fn(g, [&](double x) { return amplitude * std::exp(-(x / width) * (x / width)); });
}

SolverConfig config(double dt, double t_end, Integrator integrator = Integrator::ifrk4) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.integrator = integrator;
  return cfg;
}

}  // namespace

TEST(SolverConfig, Validation) {
  EXPECT_THROW(config(0.0, 1.0).validate(), PreconditionError);
  EXPECT_THROW(config(1e-3, -1.0).validate(), PreconditionError);
  EXPECT_THROW(config(0.3, 1.0).validate(), PreconditionError);
  SolverConfig cfg = config(1e-3, 1.0);
  cfg.snapshot_stride = 0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = config(1e-3, 1.0);
  cfg.cfl_guard = 1.5;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  EXPECT_EQ(config(1e-3, 10.0).total_steps(), 10000);
  EXPECT_EQ(config(0.1, 0.3).total_steps(), 3);
}

TEST(DealiasCutoff, TwoThirdsForQuadratic) {
  const Grid g(64, 2 * kPi);
  EXPECT_DOUBLE_EQ(dealias_cutoff(g, 1, Dealias::two_thirds), 2.0 * 32.0 / 3.0);
  EXPECT_DOUBLE_EQ(dealias_cutoff(g, 2, Dealias::two_thirds), 32.0 / 2.0);
  EXPECT_GE(dealias_cutoff(g, 1, Dealias::none), 31.0);
}

TEST(NonlinearTerm, ZeroAndConstant) {
  const Grid g(64, 2 * kPi);
  const ModelParams params{0.5, 1};
  EXPECT_EQ(nonlinear_term(SpectralField(g), params, Dealias::two_thirds).max_abs(), 0.0);
  const SpectralField c = to_spectral(sample_fn(g, [](double) { return 1.7; }));
  EXPECT_LT(nonlinear_term(c, params, Dealias::two_thirds).max_abs(), 1e-13);
}

TEST(NonlinearTerm, CosineClosedForm) {
  const Grid g(64, 2 * kPi);
  const ModelParams params{0.5, 1};
  const SpectralField u = to_spectral(sample(g, [](double x) { return std::cos(x); }));
  const RealField n = to_real(nonlinear_term(u, params, Dealias::two_thirds));
  EXPECT_LT(linf(n, sample(g, [](double x) { return 0.5 * std::sin(2 * x); })), 1e-12);
}

TEST(Step, ZeroDataStaysZero) {
  const Grid g(64, 20.0);
  const ModelParams params{0.5, 2};
  SolverState s = initial_state(RealField(g), params, config(1e-2, 1.0));
  for (int i = 0; i < 10; ++i) s = step(s, config(1e-2, 1.0));
  EXPECT_EQ(s.u_hat.max_abs(), 0.0);
  EXPECT_EQ(s.step_count, 10);
  EXPECT_NEAR(s.t, 0.1, 1e-15);
}

TEST(Step, LinearFlowIsExact) {
  const Grid g(256, 40.0);
  const ModelParams params{0.5, 1};
  for (Integrator integrator : {Integrator::ifrk4, Integrator::etdrk4}) {
    SolverConfig cfg = config(1e-2, 1.0, integrator);
    cfg.nonlinear = false;
    const RealField u0 = gaussian(g);
    SolverState s = initial_state(u0, params, cfg);
    const SpectralField start = s.u_hat;
    for (int i = 0; i < 37; ++i) s = step(s, cfg);
    EXPECT_LT(relative_distance(s.u_hat, linear_propagator(params, 37 * 1e-2, start)), 1e-13);
  }
}

TEST(Integrate, ZeroHorizonEmitsOnce) {
  const Grid g(64, 20.0);
  int calls = 0;
  double t_seen = -1.0;
  const std::vector<Sink> sinks{[&](const SolverState& s) {
    ++calls;
    t_seen = s.t;
  }};
  const Trajectory traj = integrate(gaussian(g), {0.5, 1}, config(1e-3, 0.0), sinks);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(t_seen, 0.0);
  EXPECT_EQ(traj.size(), 1u);
}

TEST(Integrate, SnapshotStrideAndFinalStep) {
  const Grid g(64, 20.0);
  SolverConfig cfg = config(0.01, 0.25);
  cfg.snapshot_stride = 10;
  const Trajectory traj = integrate(gaussian(g), {0.5, 1}, cfg);
  ASSERT_EQ(traj.size(), 4u);
  EXPECT_NEAR(traj.times[1], 0.1, 1e-15);
  EXPECT_NEAR(traj.times[3], 0.25, 1e-15);
}

TEST(Integrate, BitwiseDeterministic) {
  const Grid g(128, 40.0);
  SolverConfig cfg = config(1e-3, 0.5, Integrator::etdrk4);
  cfg.snapshot_stride = 50;
  const Trajectory a = integrate(gaussian(g), {0.5, 1}, cfg);
  const Trajectory b = integrate(gaussian(g), {0.5, 1}, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a.times[j], b.times[j]);
    for (int m = 0; m < g.modes(); ++m) ASSERT_EQ(a.snapshots[j][m], b.snapshots[j][m]);
  }
}

TEST(Integrate, WideMollifierEqualsPlainRun) {
  const Grid g(128, 40.0);
  SolverConfig plain = config(1e-3, 1.0);
  plain.snapshot_stride = 1000;
  SolverConfig moll = plain;
  moll.mollifier = MollifierSpec{2.0 * g.k_max(), RampProfile::linear};
  const Trajectory a = integrate(gaussian(g), {0.5, 1}, plain);
  const Trajectory b = integrate(gaussian(g), {0.5, 1}, moll);
  EXPECT_LT(relative_distance(a.snapshots.back(), b.snapshots.back()), 1e-14);
}

TEST(Integrate, BackwardRunReturnsToData) {
  const Grid g(128, 40.0);
  SolverConfig cfg = config(1e-3, 1.0);
  cfg.snapshot_stride = 1000;
  const Trajectory fwd = integrate(gaussian(g), {0.5, 1}, cfg);
  SolverState s{0.0, fwd.snapshots.back(), 0, {0.5, 1}};
  const Trajectory back = integrate_from(s, cfg, {}, {true, Direction::backward});
  EXPECT_NEAR(back.times.back(), -1.0, 1e-12);
  EXPECT_LT(relative_distance(back.snapshots.back(), fwd.snapshots.front()), 1e-10);
}

TEST(Integrate, RejectsStepAboveCap) {
  const Grid g(256, 40.0);
  const RealField big = gaussian(g, 50.0);
  EXPECT_THROW(integrate(big, {0.5, 1}, config(0.05, 0.1)), PreconditionError);
}

TEST(Integrate, BlowUpReportsLastGoodState) {
  const Grid g(128, 40.0);
  const ModelParams params{0.5, 3};
  SolverConfig cfg = config(0.05, 50.0);
  cfg.dealias = Dealias::none;
  SolverState s = initial_state(gaussian(g, 30.0, 1.0), params, cfg);
  try {
    integrate_from(s, cfg);
    FAIL() << "expected the integration to fail";
  } catch (const IntegrationError& e) {
    EXPECT_TRUE(e.last_good().u_hat.all_finite());
    EXPECT_GE(e.step_index(), 0);
    EXPECT_FALSE(e.partial().empty());
  }
}

TEST(Integrate, KdvTravelingWaveShortHorizon) {
  // -3 sech^2((x + t)/2) solves the l = 0, p = 1 equation.
  const Grid g(512, 80.0);
  const RealField u0 = sample(g, [](double x) { return -3.0 * sech2(x / 2.0); });
  for (Integrator integrator : {Integrator::ifrk4, Integrator::etdrk4}) {
    SolverConfig cfg = config(1e-3, 1.0, integrator);
    cfg.snapshot_stride = 1000;
    const Trajectory traj = integrate(u0, {0.0, 1}, cfg);
    const RealField exact = sample(g, [](double x) { return -3.0 * sech2((x + 1.0) / 2.0); });
    EXPECT_LT(linf(to_real(traj.snapshots.back()), exact), 1e-8);
  }
}
