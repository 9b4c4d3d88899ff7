#include "benjamin/harness/initial_data.hpp"

#include <cmath>
#include <fstream>

#include "benjamin/errors.hpp"
#include "benjamin/soliton.hpp"

namespace benjamin::harness {

namespace {

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

RealField make_initial_data(const RunConfig& cfg) {
  const Grid grid = cfg.grid();
  const InitialDataSpec& init = cfg.initial;
  RealField u(grid);
  switch (init.kind) {
    case InitialKind::gaussian:
      for (int j = 0; j < grid.size(); ++j) {
        const double z = (grid.x(j) - init.center) / init.width;
        u[j] = init.amplitude * std::exp(-z * z);
      }
      return u;
    case InitialKind::sech:
      for (int j = 0; j < grid.size(); ++j)
        u[j] = init.amplitude * sech2((grid.x(j) - init.center) / init.width);
      return u;
    case InitialKind::gaussian_spectrum: {
      SpectralField f(grid);
      for (int m = 0; m < grid.modes(); ++m) {
        const double k = grid.wavenumber(m);
        f[m] = init.amplitude * std::pow(bracket(k), -init.s) * std::exp(-init.sigma0 * k);
      }
      f.zero_nyquist();
      if (init.center != 0.0)
        f = apply_symbol(f, [&](double k) {
          return Complex(std::cos(k * init.center), -std::sin(k * init.center));
        });
      return to_real(f);
    }
    case InitialKind::soliton: {
      const SolitaryWave wave =
          petviashvili_solitary_wave(cfg.model, init.c, grid, init.tol, init.max_iter);
      return init.center == 0.0 ? wave.profile : translate(wave.profile, init.center);
    }
    case InitialKind::file: {
      std::ifstream in(init.path);
      if (!in) throw ConfigError(init.path.string(), 0, "cannot read initial data");
      for (int j = 0; j < grid.size(); ++j)
        if (!(in >> u[j]) || !std::isfinite(u[j]))
          throw ConfigError(init.path.string(), 0, "malformed initial data");
      return u;
    }
  }
  return u;
}

std::optional<RealField> exact_solution(const RunConfig& cfg, const RealField& u0, double t) {
  const InitialDataSpec& init = cfg.initial;
  if (init.kind == InitialKind::soliton) return translate(u0, init.c * t);
  if (init.kind == InitialKind::sech && cfg.model.l == 0.0 && cfg.model.p == 1 &&
      init.amplitude < 0.0) {
    // KdV: A sech^2((x - x0 - c t)/w) with c = A/3, w = 2/sqrt(-c).
    const double c = init.amplitude / 3.0;
    const double w = 2.0 / std::sqrt(-c);
    if (std::abs(init.width - w) > 1e-12 * w) return std::nullopt;
    const Grid& grid = u0.grid();
    RealField u(grid);
    for (int j = 0; j < grid.size(); ++j)
      u[j] = init.amplitude * sech2((grid.x(j) - init.center - c * t) / w);
    return u;
  }
  return std::nullopt;
}

}  // namespace benjamin::harness
