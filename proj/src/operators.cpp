#include "benjamin/operators.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "benjamin/errors.hpp"

namespace benjamin {

namespace {

const Complex kI(0.0, 1.0);

double smooth_step(double x) {
  // C-infinity transition from 1 at x <= 0 to 0 at x >= 1.
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - x));
  const double b = std::exp(-1.0 / x);
  return a / (a + b);
}

void check_exponent(double sigma, double k, const char* where) {
  if (sigma * std::abs(k) > kExponentGuard) {
    std::ostringstream msg;
    msg << where << ": exponent sigma*k_max = " << sigma * std::abs(k)
        << " exceeds the overflow guard " << kExponentGuard;
    throw PreconditionError(msg.str());
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!(l >= 0.0 && l < 1.0))
    throw PreconditionError("model: l must satisfy 0 <= l < 1, got " + std::to_string(l));
  if (p < 1) throw PreconditionError("model: p must be >= 1, got " + std::to_string(p));
}

double MollifierSpec::symbol(double k) const {
  const double a = std::abs(k);
  if (a <= n) return 1.0;
  if (a >= 2.0 * n) return 0.0;
  const double x = (a - n) / n;
  return profile == RampProfile::linear ? 1.0 - x : smooth_step(x);
}

SpectralField hilbert(const SpectralField& in) {
  auto out = apply_symbol(in, [](double k) -> Complex {
    if (k > 0.0) return -kI;
    if (k < 0.0) return kI;
    return 0.0;
  });
  out.zero_nyquist();
  return out;
}

SpectralField derivative(const SpectralField& in, int order) {
  if (order < 1) throw PreconditionError("derivative: order must be >= 1");
  auto out = apply_symbol(in, [order](double k) {
    Complex factor = 1.0;
    for (int i = 0; i < order; ++i) factor *= kI * k;
    return factor;
  });
  if (order % 2 == 1) out.zero_nyquist();
  out.enforce_real_modes();
  return out;
}

double phase_symbol(const ModelParams& params, double k) {
  return params.l * std::abs(k) * k - k * k * k;
}

SpectralField linear_propagator(const ModelParams& params, double t, const SpectralField& in) {
  auto out = apply_symbol(in, [&](double k) {
    const double angle = phase_symbol(params, k) * t;
    return Complex(std::cos(angle), std::sin(angle));
  });
  out.zero_nyquist();
  return out;
}

SpectralField gevrey_multiplier(double sigma, const SpectralField& in) {
  if (sigma < 0.0) throw PreconditionError("gevrey_multiplier: sigma must be >= 0");
  check_exponent(sigma, in.grid().k_max(), "gevrey_multiplier");
  return apply_symbol(in, [sigma](double k) { return std::exp(sigma * std::abs(k)); });
}

SpectralField sobolev_multiplier(double s, const SpectralField& in) {
  return apply_symbol(in, [s](double k) { return std::pow(bracket(k), s); });
}

SpectralField project(const SpectralField& in, double a, Band side) {
  return apply_symbol(in, [a, side](double k) {
    const bool low = std::abs(k) <= a;
    return (side == Band::low) == low ? 1.0 : 0.0;
  });
}

SpectralField mollify(const SpectralField& in, const MollifierSpec& spec) {
  if (!(spec.n > 0.0)) throw PreconditionError("mollify: cutoff n must be positive");
  return apply_symbol(in, [&spec](double k) { return spec.symbol(k); });
}

ExpLemmaSample exp_lemma_probe(double alpha, double beta, double sigma, double theta) {
  const double a = std::abs(alpha), b = std::abs(beta);
  if (sigma * std::max(a, b) > kExponentGuard)
    throw PreconditionError("exp_lemma_probe: sigma*max(|alpha|,|beta|) exceeds 700");
  ExpLemmaSample out;
  const double product = std::exp(sigma * (a + b));
  out.lhs = product - std::exp(sigma * std::abs(alpha + beta));
  out.min_abs = std::min(a, b);
  // pow(0, 0) == 1, matching the theta = 0 reading of the bound.
  out.rhs = std::pow(2.0 * sigma * out.min_abs, theta) * product;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  out.bracket_bound = bracket(alpha) * bracket(beta) / bracket(alpha + beta);
  out.second_holds = out.min_abs <= out.bracket_bound * (1.0 + 1e-12);
  return out;
}

}  // namespace benjamin
