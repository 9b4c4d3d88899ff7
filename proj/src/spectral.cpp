#include "benjamin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "benjamin/errors.hpp"
#include "fft_plans.hpp"

namespace benjamin {

Grid::Grid(int n_points, double length) : n_points_(n_points), length_(length) {
  if (n_points < 8 || n_points % 2 != 0)
    throw PreconditionError("grid: n_points must be even and >= 8, got " +
                            std::to_string(n_points));
  if (!(length > 0.0) || !std::isfinite(length))
    throw PreconditionError("grid: length must be positive and finite");
}

double Grid::wavenumber(int m) const { return 2.0 * std::numbers::pi * m / length_; }

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_points_);
  for (int j = 0; j < n_points_; ++j) xs[j] = x(j);
  return xs;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> ks(modes());
  for (int m = 0; m < modes(); ++m) ks[m] = wavenumber(m);
  return ks;
}

RealField::RealField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw PreconditionError("real field: expected " + std::to_string(grid_.size()) +
                            " values, got " + std::to_string(values_.size()));
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double RealField::max_abs() const {
  double out = 0.0;
  for (double v : values_) out = std::max(out, std::abs(v));
  return out;
}

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(grid.modes(), Complex(0.0, 0.0)) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_.modes())
    throw PreconditionError("spectral field: expected " + std::to_string(grid_.modes()) +
                            " coefficients, got " + std::to_string(coeffs_.size()));
}

void SpectralField::enforce_real_modes() {
  coeffs_.front().imag(0.0);
  coeffs_.back().imag(0.0);
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::max_abs() const {
  double out = 0.0;
  for (Complex c : coeffs_) out = std::max(out, std::abs(c));
  return out;
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (int m = 0; m < modes(); ++m) sum += grid_.mode_weight(m) * std::norm(coeffs_[m]);
  return std::sqrt(sum / grid_.length());
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw PreconditionError("spectral field: grid mismatch");
  for (int m = 0; m < modes(); ++m) coeffs_[m] += other.coeffs_[m];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw PreconditionError("spectral field: grid mismatch");
  for (int m = 0; m < modes(); ++m) coeffs_[m] -= other.coeffs_[m];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (Complex& c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double scale, SpectralField a) { return a *= scale; }

SpectralField to_spectral(const RealField& f) {
  if (!f.all_finite()) throw PreconditionError("to_spectral: input contains NaN or Inf");
  const Grid& grid = f.grid();
  SpectralField out(grid);
  detail::r2c(grid.size(), f.values().data(), out.coeffs().data());
  // x_0 = -L/2 contributes the phase exp(i*pi*m) = (-1)^m.
  const double dx = grid.dx();
  auto coeffs = out.coeffs();
  for (int m = 0; m < grid.modes(); ++m) coeffs[m] *= (m % 2 == 0) ? dx : -dx;
  out.enforce_real_modes();
  return out;
}

RealField to_real(const SpectralField& spectrum) {
  const Grid& grid = spectrum.grid();
  if (!spectrum.all_finite()) throw PreconditionError("to_real: spectrum contains NaN or Inf");
  const double tolerance = 1e-10 * std::max(1.0, spectrum.max_abs());
  if (std::abs(spectrum[0].imag()) > tolerance ||
      std::abs(spectrum[grid.nyquist()].imag()) > tolerance)
    throw PreconditionError(
        "to_real: Hermitian symmetry violated (imaginary k = 0 or Nyquist coefficient)");

  std::vector<Complex> work(spectrum.coeffs().begin(), spectrum.coeffs().end());
  work.front().imag(0.0);
  work.back().imag(0.0);
  const double inv_length = 1.0 / grid.length();
  for (int m = 0; m < grid.modes(); ++m) work[m] *= (m % 2 == 0) ? inv_length : -inv_length;
  RealField out(grid);
  detail::c2r(grid.size(), work.data(), out.values().data());
  return out;
}

double relative_distance(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max({a.l2_norm(), b.l2_norm(), 1e-300});
  return (a - b).l2_norm() / scale;
}

double relative_distance(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("relative_distance: grid mismatch");
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    diff += (a[j] - b[j]) * (a[j] - b[j]);
    na += a[j] * a[j];
    nb += b[j] * b[j];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-300});
}

}  // namespace benjamin
