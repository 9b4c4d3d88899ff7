#pragma once

#include <complex>
#include <span>
#include <vector>

namespace benjamin {

using Complex = std::complex<double>;

// Uniform periodic grid on [-L/2, L/2) with n_points samples.
//
// Real data is stored as a half spectrum: mode index m = 0 .. n/2 carries the
// wavenumber k_m = 2*pi*m/L; negative wavenumbers are implied by Hermitian
// symmetry. Mode n/2 is the Nyquist mode.
class Grid {
 public:
  Grid(int n_points, double length);

  int size() const { return n_points_; }
  int modes() const { return n_points_ / 2 + 1; }
  int nyquist() const { return n_points_ / 2; }
  double length() const { return length_; }
  double dx() const { return length_ / n_points_; }

  double x(int j) const { return -0.5 * length_ + j * dx(); }
  double wavenumber(int m) const;
  double k_max() const { return wavenumber(nyquist()); }

  std::vector<double> points() const;
  std::vector<double> wavenumbers() const;

  // Multiplicity of half-spectrum mode m in a sum over the full spectrum.
  double mode_weight(int m) const { return (m == 0 || m == nyquist()) ? 1.0 : 2.0; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_points_ == b.n_points_ && a.length_ == b.length_;
  }

 private:
  int n_points_;
  double length_;
};

// Samples u(x_j) on a grid.
class RealField {
 public:
  explicit RealField(const Grid& grid);
  RealField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](int j) const { return values_[j]; }
  double& operator[](int j) { return values_[j]; }
  int size() const { return static_cast<int>(values_.size()); }

  bool all_finite() const;
  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Half-spectrum Fourier coefficients of a real field.
//
// Convention: coeff_m = dx * sum_j exp(-i k_m x_j) f(x_j), so coefficients
// approximate the continuum transform; synthesis carries the factor 1/L.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex operator[](int m) const { return coeffs_[m]; }
  Complex& operator[](int m) { return coeffs_[m]; }
  int modes() const { return static_cast<int>(coeffs_.size()); }

  // Zeroes the imaginary parts of the k = 0 and Nyquist coefficients.
  void enforce_real_modes();
  void zero_nyquist() { coeffs_.back() = 0.0; }

  bool all_finite() const;
  double max_abs() const;

  // Discrete L2 norm (1/L) * sum over the full spectrum of |c|^2, square-rooted.
  double l2_norm() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double scale, SpectralField a);

SpectralField to_spectral(const RealField& f);
RealField to_real(const SpectralField& spectrum);

// Relative distance ||a - b|| / max(||a||, ||b||, tiny) in the discrete L2 norm.
double relative_distance(const SpectralField& a, const SpectralField& b);
double relative_distance(const RealField& a, const RealField& b);

}  // namespace benjamin
