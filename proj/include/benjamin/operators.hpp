#pragma once

#include <cmath>

#include "benjamin/spectral.hpp"

namespace benjamin {

// Exponent arguments above this are rejected (exp overflows near 709).
inline constexpr double kExponentGuard = 700.0;

// <x> := 1 + |x|.
inline double bracket(double x) { return 1.0 + std::abs(x); }

// Parameters of d_t u - l H d_x^2 u - d_x^3 u + u^p d_x u = 0.
struct ModelParams {
  double l = 0.5;
  int p = 1;

  void validate() const;
};

struct GevreyIndex {
  double sigma = 0.0;
  double s = 0.0;
};

enum class RampProfile { linear, smooth };

// Fourier cutoff eta_n: 1 on |k| <= n, 0 on |k| >= 2n, monotone ramp between.
struct MollifierSpec {
  double n = 1.0;
  RampProfile profile = RampProfile::linear;

  double symbol(double k) const;
};

// Multiplies every half-spectrum coefficient by symbol(k_m). The symbol must
// come from a real-to-real operator; odd symbols must zero the Nyquist mode.
template <class Symbol>
SpectralField apply_symbol(const SpectralField& in, Symbol&& symbol) {
  SpectralField out(in.grid());
  const Grid& grid = in.grid();
  for (int m = 0; m < grid.modes(); ++m) out[m] = symbol(grid.wavenumber(m)) * in[m];
  return out;
}

// -i sgn(k); sgn(0) = 0. The Nyquist coefficient is dropped.
SpectralField hilbert(const SpectralField& in);

// (ik)^order. The Nyquist coefficient is zeroed for odd orders.
SpectralField derivative(const SpectralField& in, int order);

// phi(k) = l |k| k - k^3.
double phase_symbol(const ModelParams& params, double k);

// W(t): multiplies by exp(i phi(k) t). Unimodular below Nyquist; the Nyquist
// coefficient (where phi's sign is ambiguous) is dropped.
SpectralField linear_propagator(const ModelParams& params, double t, const SpectralField& in);

// e^{sigma |D|}. Throws PreconditionError when sigma * k_max > 700.
SpectralField gevrey_multiplier(double sigma, const SpectralField& in);

// (1 + |k|)^s.
SpectralField sobolev_multiplier(double s, const SpectralField& in);

enum class Band { high, low };

// P^a (high: keeps |k| > a) and P_a (low: keeps |k| <= a).
SpectralField project(const SpectralField& in, double a, Band side);

SpectralField mollify(const SpectralField& in, const MollifierSpec& spec);

struct ExpLemmaSample {
  double lhs = 0.0;  // e^{s|a|} e^{s|b|} - e^{s|a+b|}
  double rhs = 0.0;  // [2 s min(|a|,|b|)]^theta e^{s|a|} e^{s|b|}
  bool holds = true;
  double min_abs = 0.0;        // min(|a|, |b|)
  double bracket_bound = 0.0;  // <a><b>/<a+b>
  bool second_holds = true;
};

// Evaluates both inequalities of the exponential lemma at one point.
ExpLemmaSample exp_lemma_probe(double alpha, double beta, double sigma, double theta);

}  // namespace benjamin
