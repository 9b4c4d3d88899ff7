#include "benjamin/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "benjamin/errors.hpp"

namespace benjamin {

double mass(const RealField& u) {
  double sum = 0.0;
  for (double v : u.values()) sum += v * v;
  return 0.5 * sum * u.grid().dx();
}

double energy_with_power_coefficient(const RealField& u, const ModelParams& params,
                                     double power_coefficient) {
  const Grid& grid = u.grid();
  SpectralField u_hat = to_spectral(u);
  u_hat.zero_nyquist();
  double gradient = 0.0, dispersive = 0.0;
  for (int m = 0; m < grid.modes(); ++m) {
    const double k = grid.wavenumber(m);
    const double w = grid.mode_weight(m) * std::norm(u_hat[m]);
    gradient += k * k * w;
    dispersive += std::abs(k) * w;
  }
  gradient /= grid.length();
  dispersive /= grid.length();  // int u H u_x dx, since H d_x has symbol |k|

  double power = 0.0;
  for (double v : u.values()) {
    double term = 1.0;
    for (int i = 0; i < params.p + 2; ++i) term *= v;
    power += term;
  }
  power *= grid.dx();
  return 0.5 * gradient - 0.5 * params.l * dispersive + power_coefficient * power;
}

double energy(const RealField& u, const ModelParams& params) {
  return energy_with_power_coefficient(u, params,
                                       1.0 / ((params.p + 1.0) * (params.p + 2.0)));
}

double gevrey_norm(const SpectralField& f, const GevreyIndex& idx) {
  const Grid& grid = f.grid();
  if (idx.sigma < 0.0) throw PreconditionError("gevrey_norm: sigma must be >= 0");
  if (idx.sigma * grid.k_max() > kExponentGuard)
    throw PreconditionError("gevrey_norm: sigma*k_max exceeds the overflow guard");
  double sum = 0.0;
  for (int m = 0; m < grid.modes(); ++m) {
    const double k = grid.wavenumber(m);
    sum += grid.mode_weight(m) * std::pow(bracket(k), 2.0 * idx.s) *
           std::exp(2.0 * idx.sigma * k) * std::norm(f[m]);
  }
  return std::sqrt(sum / grid.length());
}

double gevrey_norm(const RealField& f, const GevreyIndex& idx) {
  return gevrey_norm(to_spectral(f), idx);
}

EmbeddingCheck gevrey_embedding_check(const RealField& u, double sigma, double sigma_prime,
                                      double s, double s_prime) {
  if (!(sigma_prime > 0.0 && sigma_prime <= sigma))
    throw PreconditionError("gevrey_embedding_check: requires 0 < sigma' <= sigma");
  const Grid& grid = u.grid();
  const SpectralField u_hat = to_spectral(u);
  EmbeddingCheck out;
  out.weaker_norm = gevrey_norm(u_hat, {sigma_prime, s_prime});
  out.stronger_norm = gevrey_norm(u_hat, {sigma, s});
  for (int m = 0; m < grid.modes(); ++m) {
    const double k = grid.wavenumber(m);
    out.constant = std::max(out.constant, std::pow(bracket(k), s_prime - s) *
                                              std::exp((sigma_prime - sigma) * k));
  }
  out.holds = out.weaker_norm <= out.constant * out.stronger_norm * (1.0 + 1e-12);
  return out;
}

GevreyFlux gevrey_flux(const RealField& u, double sigma, const ModelParams& params) {
  if (params.p != 1)
    throw PreconditionError("gevrey_flux: the commutator identity holds for p = 1 only");
  const Grid& grid = u.grid();
  SpectralField u_hat = to_spectral(u);
  u_hat.zero_nyquist();
  const SpectralField a_hat = gevrey_multiplier(sigma, u_hat);
  const RealField a = to_real(a_hat);

  RealField a_squared = a;
  for (double& v : a_squared.values()) v *= v;
  RealField u_squared = u;
  for (double& v : u_squared.values()) v *= v;

  const SpectralField first = derivative(to_spectral(a_squared), 1);
  const SpectralField second = derivative(gevrey_multiplier(sigma, to_spectral(u_squared)), 1);
  SpectralField f_hat = first - second;
  // Modes above the dealiased band carry aliasing and amplified round-off.
  const double cutoff = 2.0 * grid.k_max() / 3.0;
  for (int m = 0; m < grid.modes(); ++m)
    if (grid.wavenumber(m) > cutoff) f_hat[m] = 0.0;

  GevreyFlux out{to_real(f_hat), 0.0, 0.0};
  // Parseval: int A u * F dx = (1/L) sum over full spectrum of Re(conj(A u) F).
  double sum = 0.0;
  for (int m = 0; m < grid.modes(); ++m)
    sum += grid.mode_weight(m) * std::real(std::conj(a_hat[m]) * f_hat[m]);
  out.pairing = sum / grid.length();
  out.rate = 0.5 * out.pairing;
  if (sigma == 0.0) {
    for (double& v : out.commutator.values()) v = 0.0;
    out.pairing = out.rate = 0.0;
  }
  return out;
}

}  // namespace benjamin
