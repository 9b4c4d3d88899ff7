#include <gtest/gtest.h>

#include <numbers>

#include "benjamin/errors.hpp"
#include "benjamin/operators.hpp"
#include "support.hpp"

using namespace benjamin;
using namespace benjamin::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Grid periodic() { return Grid(64, 2 * kPi); }

}  // namespace

TEST(Hilbert, MapsCosineToSine) {
  for (int k = 1; k <= 5; ++k) {
    const Grid g = periodic();
    const RealField c = sample_fn(g, [k](double x) { return std::cos(k * x); });
    const RealField s = sample_fn(g, [k](double x) { return std::sin(k * x); });
    EXPECT_LT(linf(to_real(hilbert(to_spectral(c))), s), 1e-14);
  }
}

TEST(Hilbert, MapsSineToMinusCosine) {
  const Grid g = periodic();
  const RealField s = sample_fn(g, [](double x) { return std::sin(3 * x); });
  const RealField mc = sample_fn(g, [](double x) { return -std::cos(3 * x); });
  EXPECT_LT(linf(to_real(hilbert(to_spectral(s))), mc), 1e-14);
}

TEST(Hilbert, AnnihilatesConstants) {
  const Grid g = periodic();
  const RealField one = sample_fn(g, [](double) { return 1.0; });
  EXPECT_LT(to_real(hilbert(to_spectral(one))).max_abs(), 1e-15);
}

TEST(Hilbert, SquaresToMinusIdentityOnMeanZero) {
  const Grid g(128, 40.0);
  SpectralField f = random_spectrum(g, 3);
  f[0] = 0.0;
  EXPECT_LT(relative_distance(hilbert(hilbert(f)), -1.0 * f), 1e-15);
}

TEST(Derivative, SineDerivatives) {
  const Grid g = periodic();
  const SpectralField s = to_spectral(sample(g, [](double x) { return std::sin(x); }));
  EXPECT_LT(linf(to_real(derivative(s, 1)), sample(g, [](double x) { return std::cos(x); })), 1e-13);
  // k^3 amplifies round-off in the high modes.
  EXPECT_LT(linf(to_real(derivative(s, 3)), sample(g, [](double x) { return -std::cos(x); })), 1e-11);
  EXPECT_THROW(derivative(s, 0), PreconditionError);
}

TEST(Derivative, ProductRuleOnDealiasedData) {
  // Strictly below k_max/2 so f^2 leaves the Nyquist mode empty.
  const Grid g(128, 20.0);
  const SpectralField f_hat = band_limit(random_spectrum(g, 11, 0.1), 0.45 * g.k_max());
  const RealField f = to_real(f_hat);
  const RealField fx = to_real(derivative(f_hat, 1));
  RealField half_sq(g);
  for (int j = 0; j < g.size(); ++j) half_sq[j] = 0.5 * f[j] * f[j];
  const RealField lhs = to_real(derivative(to_spectral(half_sq), 1));
  RealField rhs(g);
  for (int j = 0; j < g.size(); ++j) rhs[j] = f[j] * fx[j];
  EXPECT_LT(linf(lhs, rhs), 1e-10 * std::max(1.0, rhs.max_abs()));
}

TEST(PhaseSymbol, DirectValues) {
  EXPECT_DOUBLE_EQ(phase_symbol({0.5, 1}, 2.0), -6.0);
  EXPECT_NEAR(phase_symbol({0.3, 1}, -1.0), 0.7, 1e-15);
  EXPECT_EQ(phase_symbol({0.7, 1}, 0.0), 0.0);
}

TEST(LinearPropagator, IdentityAtZeroTimeAndUnimodular) {
  const Grid g(128, 30.0);
  const SpectralField f = random_spectrum(g, 4);
  const ModelParams params{0.5, 1};
  EXPECT_LT(relative_distance(linear_propagator(params, 0.0, f), f), 1e-16);
  const SpectralField w = linear_propagator(params, 3.7, f);
  for (int m = 0; m < g.nyquist(); ++m) EXPECT_NEAR(std::abs(w[m]), std::abs(f[m]), 1e-15 * (1 + std::abs(f[m])));
  EXPECT_NEAR(w.l2_norm(), f.l2_norm(), 1e-14 * f.l2_norm());
  EXPECT_LT(relative_distance(linear_propagator(params, -3.7, w), f), 1e-14);
}

TEST(LinearPropagator, CosineTravelsWithPhaseVelocity) {
  // l = 0: phi(1) = -1, so W(t) cos(x) = cos(x + phi(1) t) = cos(x - t).
  const Grid g = periodic();
  const ModelParams kdv{0.0, 1};
  const double t = 1.0;
  const RealField out = to_real(linear_propagator(kdv, t, to_spectral(sample(g, [](double x) { return std::cos(x); }))));
  const double phi = phase_symbol(kdv, 1.0);
  EXPECT_LT(linf(out, sample_fn(g, [&](double x) { return std::cos(x + phi * t); })), 1e-14);
}

TEST(GevreyMultiplier, IdentitySingleModeAndComposition) {
  const Grid g = periodic();
  const SpectralField f = random_spectrum(g, 8, 0.5);
  EXPECT_LT(relative_distance(gevrey_multiplier(0.0, f), f), 1e-16);
  SpectralField one(g);
  one[2] = 1.0;
  EXPECT_NEAR(gevrey_multiplier(0.5, one)[2].real(), std::exp(1.0), 1e-15);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralField h = random_spectrum(g, seed, 0.5);
    EXPECT_LT(relative_distance(gevrey_multiplier(0.3, gevrey_multiplier(0.2, h)), gevrey_multiplier(0.5, h)), 1e-12);
  }
}

TEST(GevreyMultiplier, OverflowGuardNamesTheProduct) {
  const Grid g(64, 2 * kPi);  // k_max = 32
  try {
    gevrey_multiplier(22.0, SpectralField(g));
    FAIL() << "expected a guard violation";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("704"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(gevrey_multiplier(21.8, SpectralField(g)));
}

TEST(SobolevMultiplier, IdentityFactorAndInverse) {
  const Grid g = periodic();
  const SpectralField f = random_spectrum(g, 9);
  EXPECT_LT(relative_distance(sobolev_multiplier(0.0, f), f), 1e-16);
  SpectralField one(g);
  one[1] = 1.0;
  EXPECT_NEAR(sobolev_multiplier(2.0, one)[1].real(), 4.0, 1e-15);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralField h = random_spectrum(g, seed);
    EXPECT_LT(relative_distance(sobolev_multiplier(-1.5, sobolev_multiplier(1.5, h)), h), 1e-12);
  }
}

TEST(Project, LargeCutoffAndComplementarity) {
  const Grid g(128, 25.0);
  const SpectralField f = random_spectrum(g, 12);
  const double big = 2.0 * g.k_max();
  EXPECT_LT(relative_distance(project(f, big, Band::low), f), 1e-16);
  EXPECT_EQ(project(f, big, Band::high).max_abs(), 0.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralField h = random_spectrum(g, seed);
    // a on a grid wavenumber exercises the boundary assignment.
    for (double a : {g.wavenumber(7), 3.3, 0.01}) {
      const SpectralField sum = project(h, a, Band::high) + project(h, a, Band::low);
      EXPECT_EQ(relative_distance(sum, h), 0.0);
    }
  }
  SpectralField boundary(g);
  boundary[7] = 1.0;
  EXPECT_EQ(project(boundary, g.wavenumber(7), Band::low)[7], Complex(1.0));
  EXPECT_EQ(project(boundary, g.wavenumber(7), Band::high)[7], Complex(0.0));
}

TEST(Mollify, IdentityRegimesAndNormDecrease) {
  const Grid g(128, 25.0);
  const SpectralField f = random_spectrum(g, 13);
  for (RampProfile profile : {RampProfile::linear, RampProfile::smooth}) {
    EXPECT_EQ(relative_distance(mollify(f, {2.0 * g.k_max(), profile}), f), 0.0);
    const SpectralField low = band_limit(f, 5.0);
    EXPECT_EQ(relative_distance(mollify(low, {5.0, profile}), low), 0.0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const SpectralField h = random_spectrum(g, seed);
      const SpectralField m = mollify(h, {4.0, profile});
      for (double sigma : {0.0, 0.3}) {
        const SpectralField wh = sobolev_multiplier(1.0, gevrey_multiplier(sigma, h));
        const SpectralField wm = sobolev_multiplier(1.0, gevrey_multiplier(sigma, m));
        EXPECT_LE(wm.l2_norm(), wh.l2_norm());
      }
    }
  }
}

TEST(Mollify, RampIsMonotone) {
  for (RampProfile profile : {RampProfile::linear, RampProfile::smooth}) {
    const MollifierSpec spec{3.0, profile};
    double prev = 1.0;
    for (double k = 0.0; k <= 7.0; k += 0.01) {
      const double v = spec.symbol(k);
      EXPECT_LE(v, prev + 1e-15);
      EXPECT_GE(v, 0.0);
      prev = v;
    }
    EXPECT_EQ(spec.symbol(3.0), 1.0);
    EXPECT_EQ(spec.symbol(6.0), 0.0);
  }
}

TEST(Multipliers, CommutePairwise) {
  const Grid g(128, 25.0);
  const ModelParams params{0.5, 1};
  const SpectralField f = random_spectrum(g, 21);
  using Op = SpectralField (*)(const SpectralField&);
  const std::vector<std::function<SpectralField(const SpectralField&)>> ops = {
      [](const SpectralField& x) { return hilbert(x); },
      [](const SpectralField& x) { return derivative(x, 2); },
      [&](const SpectralField& x) { return linear_propagator(params, 0.7, x); },
      [](const SpectralField& x) { return gevrey_multiplier(0.3, x); },
      [](const SpectralField& x) { return sobolev_multiplier(1.5, x); },
      [](const SpectralField& x) { return project(x, 4.0, Band::high); },
      [](const SpectralField& x) { return mollify(x, {5.0, RampProfile::smooth}); }};
  (void)sizeof(Op);
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      EXPECT_LT(relative_distance(ops[i](ops[j](f)), ops[j](ops[i](f))), 1e-12) << i << "," << j;
}

TEST(Multipliers, PreserveRealFields) {
  const Grid g(64, 12.0);
  const SpectralField f = random_spectrum(g, 30);
  const ModelParams params{0.5, 1};
  for (const SpectralField& out :
       {hilbert(f), derivative(f, 1), derivative(f, 2), linear_propagator(params, 1.3, f),
        gevrey_multiplier(0.2, f), sobolev_multiplier(-1.0, f), mollify(f, {3.0, RampProfile::linear})}) {
    EXPECT_EQ(out[0].imag(), 0.0);
    EXPECT_EQ(out[g.nyquist()].imag(), 0.0);
    EXPECT_NO_THROW(to_real(out));
  }
}

TEST(ExpLemma, TrivialCases) {
  const ExpLemmaSample a0 = exp_lemma_probe(0.0, 7.5, 0.8, 0.6);
  EXPECT_EQ(a0.lhs, 0.0);
  EXPECT_TRUE(a0.holds);
  for (double alpha : {-20.0, 3.0, 45.0}) {
    const ExpLemmaSample s = exp_lemma_probe(alpha, -11.0, 0.9, 0.0);
    const double expected = std::exp(0.9 * std::abs(alpha)) * std::exp(0.9 * 11.0);
    EXPECT_NEAR(s.rhs, expected, 1e-14 * expected);
    EXPECT_TRUE(s.holds);
  }
}

TEST(ExpLemma, SecondInequalityHoldsOnlyUpToFactorTwo) {
  // alpha = beta = 3: min = 3 but <3><3>/<6> = 16/7.
  const ExpLemmaSample s = exp_lemma_probe(3.0, 3.0, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(s.bracket_bound, 16.0 / 7.0);
  EXPECT_FALSE(s.second_holds);
  EXPECT_LE(s.min_abs, 2.0 * s.bracket_bound);
}

TEST(ExpLemma, OverflowGuard) {
  EXPECT_THROW(exp_lemma_probe(800.0, 1.0, 1.0, 0.5), PreconditionError);
}
