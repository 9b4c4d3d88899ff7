#include <gtest/gtest.h>

#include "benjamin/analyticity.hpp"
#include "benjamin/errors.hpp"
#include "support.hpp"

using namespace benjamin;
using namespace benjamin::testing;

namespace {

SpectralField synthetic(const Grid& g, double C, double r, double sigma) {
  SpectralField f(g);
  for (int m = 1; m < g.nyquist(); ++m) {
    const double k = g.wavenumber(m);
    f[m] = C * std::pow(k, -r) * std::exp(-sigma * k);
  }
  f[0] = C;
  return f;
}

std::vector<RadiusRow> series(const std::vector<double>& ts, double (*law)(double)) {
  std::vector<RadiusRow> out;
  for (double t : ts) {
    RadiusFit fit;
    fit.sigma = law(t);
    out.push_back({t, fit, {}});
  }
  return out;
}

}  // namespace

TEST(FitRadius, PureExponential) {
  const Grid g(512, 80.0);
  const RadiusFit fit = fit_radius(synthetic(g, 1.0, 0.0, 0.5));
  EXPECT_NEAR(fit.sigma, 0.5, 1e-6);
  EXPECT_NEAR(fit.r, 0.0, 1e-6);
  EXPECT_FALSE(fit.clamped);
}

TEST(FitRadius, AlgebraicPrefactor) {
  const Grid g(512, 80.0);
  const RadiusFit fit = fit_radius(synthetic(g, 3.0, 2.0, 0.3));
  EXPECT_NEAR(fit.sigma, 0.3, 1e-6);
  EXPECT_NEAR(fit.r, 2.0, 1e-3);
  EXPECT_NEAR(fit.logC, std::log(3.0), 1e-6);
}

TEST(FitRadius, RecoversParametersOnRandomModels) {
  const Grid g(512, 80.0);
  for (double sigma : {0.1, 0.4, 0.9})
    for (double r : {-1.0, 0.5, 3.0}) {
      const RadiusFit fit = fit_radius(synthetic(g, 2.0, r, sigma));
      EXPECT_NEAR(fit.sigma, sigma, 1e-6);
      EXPECT_NEAR(fit.r, r, 1e-3);
    }
}

TEST(FitRadius, EnvelopeIgnoresInterleavedZeros) {
  const Grid g(512, 80.0);
  SpectralField f = synthetic(g, 1.0, 1.0, 0.4);
  for (int m = 1; m < g.nyquist(); m += 2) f[m] = 0.0;
  const RadiusFit fit = fit_radius(f);
  EXPECT_NEAR(fit.sigma, 0.4, 1e-6);
  EXPECT_NEAR(fit.r, 1.0, 1e-3);
}

TEST(FitRadius, GrowingSpectrumIsClamped) {
  const Grid g(512, 80.0);
  const RadiusFit fit = fit_radius(synthetic(g, 1e-20, 0.0, -0.5));
  EXPECT_TRUE(fit.clamped);
  EXPECT_EQ(fit.sigma, 0.0);
  EXPECT_LT(fit.raw_sigma, 0.0);
}

TEST(FitRadius, Failures) {
  const Grid g(512, 80.0);
  EXPECT_THROW(fit_radius(SpectralField(g)), NumericalError);
  // Fast decay leaves too few modes above the floor.
  EXPECT_THROW(fit_radius(synthetic(g, 1.0, 0.0, 20.0)), NumericalError);
  RadiusFitOptions bad;
  bad.k_lo = 5.0;
  bad.k_hi = 4.0;
  EXPECT_THROW(fit_radius(synthetic(g, 1.0, 0.0, 0.5), bad), PreconditionError);
}

TEST(RadiusTimeseries, LinearFlowKeepsRadius) {
  const Grid g(512, 80.0);
  SolverConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 5.0;
  cfg.snapshot_stride = 50;
  cfg.nonlinear = false;
  const RealField u0 = to_real(synthetic(g, 1.0, 0.0, 1.0));
  const auto rows = radius_timeseries(integrate(u0, {0.5, 1}, cfg));
  ASSERT_TRUE(rows.front().fit);
  for (const RadiusRow& row : rows) {
    ASSERT_TRUE(row.fit) << row.flag;
    EXPECT_NEAR(row.fit->sigma, rows.front().fit->sigma, 1e-8);
  }
}

TEST(RadiusTimeseries, ExactDataAtStart) {
  const Grid g(512, 80.0);
  SolverConfig cfg;
  cfg.t_end = 0.0;
  const auto rows = radius_timeseries(integrate(to_real(synthetic(g, 1.0, 0.0, 1.0)), {0.5, 1}, cfg));
  EXPECT_NEAR(rows.front().fit->sigma, 1.0, 0.02);
}

TEST(RadiusTimeseries, TravelingWaveKeepsRadius) {
  const Grid g(512, 80.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  cfg.snapshot_stride = 500;
  const RealField u0 = sample(g, [](double x) { return -3.0 * sech2(x / 2.0); });
  const auto rows = radius_timeseries(integrate(u0, {0.0, 1}, cfg));
  for (const RadiusRow& row : rows) {
    ASSERT_TRUE(row.fit) << row.flag;
    EXPECT_NEAR(row.fit->sigma, rows.front().fit->sigma, 0.01 * rows.front().fit->sigma);
  }
}

TEST(RadiusTimeseries, RadiusDoesNotGrow) {
  const Grid g(512, 80.0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  cfg.snapshot_stride = 500;
  const auto rows = radius_timeseries(integrate(to_real(synthetic(g, 1.0, 0.0, 1.0)), {0.5, 1}, cfg));
  double lowest = rows.front().fit->sigma;
  for (const RadiusRow& row : rows) {
    ASSERT_TRUE(row.fit) << row.flag;
    EXPECT_LE(row.fit->sigma, lowest * 1.02) << "t = " << row.t;
    lowest = std::min(lowest, row.fit->sigma);
  }
  const auto mono = radius_timeseries(integrate(to_real(synthetic(g, 1.0, 0.0, 1.0)), {0.5, 1}, cfg), {}, true);
  for (std::size_t j = 1; j < mono.size(); ++j) EXPECT_LE(mono[j].fit->sigma, mono[j - 1].fit->sigma);
}

TEST(DecayLaw, ExactPowerLaw) {
  const auto rows = series({1, 1.5, 2, 3, 4, 5, 6, 7, 8, 10},
                           [](double t) { return 2.0 * std::pow(t, -1.5); });
  const DecayLawResult law = fit_decay_law(rows, 1.0, 10.0, {3.0});
  ASSERT_TRUE(law.fit);
  EXPECT_NEAR(law.fit->gamma, 1.5, 1e-8);
  EXPECT_NEAR(law.fit->c, 2.0, 1e-8);
  EXPECT_FALSE(law.plateau);
}

TEST(DecayLaw, ConstantSeriesIsPlateau) {
  const auto rows = series({0, 1, 2, 4, 8}, [](double) { return 0.7; });
  const DecayLawResult law = fit_decay_law(rows, 1.0, 8.0);
  EXPECT_TRUE(law.plateau);
  EXPECT_FALSE(law.fit);
}

TEST(DecayLaw, Failures) {
  const auto rows = series({0, 1, 2, 3}, [](double t) { return 1.0 / (1.0 + t); });
  EXPECT_THROW(fit_decay_law(rows, 1.0, 3.0), NumericalError);
  EXPECT_THROW(fit_decay_law(rows, 0.5, 3.0), PreconditionError);
  EXPECT_THROW(fit_decay_law({}, 1.0, 3.0), NumericalError);
}

TEST(LowerBound, Verdicts) {
  EXPECT_DOUBLE_EQ(gamma_bound({0.5, 2}, 0.01), 12.0);
  EXPECT_DOUBLE_EQ(gamma_bound({0.5, 3}, 0.01), 20.0);
  EXPECT_DOUBLE_EQ(gamma_bound({0.5, 1}, 0.01), 4.0 / 3.0 + 0.01);

  DecayLawResult plateau;
  plateau.plateau = true;
  EXPECT_EQ(lower_bound_audit(plateau, {0.5, 1}).verdict, Verdict::pass_plateau);

  DecayLawResult law;
  law.fit = DecayLawFit{1.5, 1.0, 1.0, 8.0, 0.0, 8};
  EXPECT_EQ(lower_bound_audit(law, {0.5, 1}).verdict, Verdict::pass_bound);
  law.fit->gamma = 1.6;
  EXPECT_EQ(lower_bound_audit(law, {0.5, 1}).verdict, Verdict::violation);
  EXPECT_EQ(lower_bound_audit(law, {0.5, 2}).verdict, Verdict::pass_bound);
  EXPECT_STREQ(to_string(Verdict::violation), "VIOLATION");
  EXPECT_THROW(lower_bound_audit(law, {0.5, 1}, 0.0), PreconditionError);
}
