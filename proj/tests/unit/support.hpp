#pragma once

#include <cmath>
#include <random>

#include "benjamin/spectral.hpp"

namespace benjamin::testing {

// Random Hermitian half spectrum with |c_m| ~ e^{-decay k}; real DC, zero Nyquist.
inline SpectralField random_spectrum(const Grid& grid, std::uint64_t seed, double decay = 0.2) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField f(grid);
  for (int m = 0; m < grid.modes(); ++m) {
    const double scale = std::exp(-decay * grid.wavenumber(m));
    f[m] = scale * Complex(normal(rng), m == 0 ? 0.0 : normal(rng));
  }
  f.zero_nyquist();
  return f;
}

// Keeps modes with k <= cutoff.
inline SpectralField band_limit(SpectralField f, double cutoff) {
  for (int m = 0; m < f.modes(); ++m)
    if (f.grid().wavenumber(m) > cutoff) f[m] = 0.0;
  return f;
}

inline RealField sample(const Grid& grid, double (*fn)(double)) {
  RealField u(grid);
  for (int j = 0; j < grid.size(); ++j) u[j] = fn(grid.x(j));
  return u;
}

template <class Fn>
RealField sample_fn(const Grid& grid, Fn&& fn) {
  RealField u(grid);
  for (int j = 0; j < grid.size(); ++j) u[j] = fn(grid.x(j));
  return u;
}

inline double linf(const RealField& a, const RealField& b) {
  double out = 0.0;
  for (int j = 0; j < a.size(); ++j) out = std::max(out, std::abs(a[j] - b[j]));
  return out;
}

inline double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace benjamin::testing
