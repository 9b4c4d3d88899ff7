#pragma once

#include <vector>

#include "benjamin/operators.hpp"
#include "benjamin/spectral.hpp"

namespace benjamin {

// Profile U of a traveling wave u(x, t) = U(x - c t), which solves
//   (k^2 - l|k| - c) U_hat + (1/(p+1)) F[U^{p+1}] = 0.
struct SolitaryWave {
  RealField profile;
  double speed = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;
};

// Symbol k^2 - l|k| - c of the traveling-wave operator.
double traveling_wave_symbol(const ModelParams& params, double c, double k);

// ||L_c U_hat + (1/(p+1)) F[U^{p+1}]|| / ||U_hat||.
double traveling_wave_residual(const RealField& profile, const ModelParams& params, double c);

// Petviashvili iteration with stabilizing exponent (p+1)/p.
// Throws PreconditionError unless c < -l^2/4 (spectral gap), NumericalError
// when max_iter iterations do not reach tol.
SolitaryWave petviashvili_solitary_wave(const ModelParams& params, double c, const Grid& grid,
                                        double tol, int max_iter);

// U(x - shift) evaluated spectrally.
RealField translate(const RealField& profile, double shift);

}  // namespace benjamin
