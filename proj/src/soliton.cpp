#include "benjamin/soliton.hpp"

#include <cmath>
#include <sstream>

#include "benjamin/errors.hpp"

namespace benjamin {

namespace {

// -(1/(p+1)) F[U^{p+1}], the right-hand side L_c U_hat is matched against.
SpectralField power_term(const RealField& u, int p) {
  RealField power = u;
  for (double& v : power.values()) {
    double out = 1.0;
    for (int i = 0; i <= p; ++i) out *= v;
    v = out;
  }
  SpectralField out = to_spectral(power);
  out *= -1.0 / (p + 1.0);
  out.zero_nyquist();
  return out;
}

double inner(const SpectralField& a, const SpectralField& b) {
  double sum = 0.0;
  for (int m = 0; m < a.modes(); ++m)
    sum += a.grid().mode_weight(m) * std::real(a[m] * std::conj(b[m]));
  return sum / a.grid().length();
}

}  // namespace

double traveling_wave_symbol(const ModelParams& params, double c, double k) {
  return k * k - params.l * std::abs(k) - c;
}

double traveling_wave_residual(const RealField& profile, const ModelParams& params, double c) {
  SpectralField u_hat = to_spectral(profile);
  u_hat.zero_nyquist();
  SpectralField rhs = power_term(profile, params.p);
  SpectralField lhs =
      apply_symbol(u_hat, [&](double k) { return traveling_wave_symbol(params, c, k); });
  return (lhs - rhs).l2_norm() / u_hat.l2_norm();
}

SolitaryWave petviashvili_solitary_wave(const ModelParams& params, double c, const Grid& grid,
                                        double tol, int max_iter) {
  params.validate();
  if (!(tol > 0.0)) throw PreconditionError("petviashvili: tol must be > 0");
  if (!(c < -params.l * params.l / 4.0)) {
    std::ostringstream msg;
    msg << "petviashvili: spectral gap condition c < -l^2/4 violated (c = " << c
        << ", -l^2/4 = " << -params.l * params.l / 4.0 << ")";
    throw PreconditionError(msg.str());
  }
  if (params.p % 2 == 0)
    throw PreconditionError(
        "petviashvili: no solitary wave for even p with c < -l^2/4 (pairing the profile "
        "equation with U gives <L_c U, U> = -(1/(p+1)) int U^{p+2} < 0)");
  const double gamma = (params.p + 1.0) / params.p;

  // Negative-polarity Gaussian seed; scale is fixed by the stabilizing factor.
  RealField u(grid);
  for (int j = 0; j < grid.size(); ++j) u[j] = -std::exp(-grid.x(j) * grid.x(j) / 4.0);

  SolitaryWave out{u, c, 0.0, 0, {}};
  for (int iter = 1; iter <= max_iter; ++iter) {
    SpectralField u_hat = to_spectral(u);
    u_hat.zero_nyquist();
    const SpectralField rhs = power_term(u, params.p);
    const SpectralField lhs =
        apply_symbol(u_hat, [&](double k) { return traveling_wave_symbol(params, c, k); });
    const double denom = inner(rhs, u_hat);
    if (denom == 0.0 || !std::isfinite(denom))
      throw NumericalError("petviashvili: degenerate stabilizing factor");
    const double ratio = inner(lhs, u_hat) / denom;
    if (!(ratio > 0.0)) throw NumericalError("petviashvili: stabilizing factor is not positive");
    const double factor = std::pow(ratio, gamma);

    SpectralField next = apply_symbol(
        rhs, [&](double k) { return factor / traveling_wave_symbol(params, c, k); });
    u = to_real(next);
    if (!u.all_finite()) throw NumericalError("petviashvili: iteration diverged");

    out.residual = traveling_wave_residual(u, params, c);
    out.residual_history.push_back(out.residual);
    out.iterations = iter;
    if (out.residual < tol) {
      out.profile = u;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "petviashvili: no convergence in " << max_iter << " iterations (last residual "
      << out.residual << ")";
  throw NumericalError(msg.str());
}

RealField translate(const RealField& profile, double shift) {
  SpectralField u_hat = to_spectral(profile);
  u_hat.zero_nyquist();
  return to_real(apply_symbol(u_hat, [shift](double k) {
    return Complex(std::cos(k * shift), -std::sin(k * shift));
  }));
}

}  // namespace benjamin
