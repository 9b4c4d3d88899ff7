#pragma once

#include <optional>
#include <vector>

#include "benjamin/operators.hpp"
#include "benjamin/spectral.hpp"

namespace benjamin {

// M(u) = (1/2) int u^2 dx.
double mass(const RealField& u);

// E(u) = int [ (1/2) u_x^2 - (l/2) u H u_x + u^{p+2} / ((p+1)(p+2)) ] dx.
//
// The quadratic terms are evaluated spectrally, the power term pointwise.
// This is the Hamiltonian of u_t = -d_x (dE/du) for the equation as posed,
// i.e. the invariant of the flow this library integrates.
double energy(const RealField& u, const ModelParams& params);

// Same functional with an arbitrary coefficient on the u^{p+2} term.
double energy_with_power_coefficient(const RealField& u, const ModelParams& params,
                                     double power_coefficient);

// ||f||_{G^{sigma,s}}^2 = (1/L) sum_k <k>^{2s} e^{2 sigma |k|} |f_hat(k)|^2, the
// discrete analogue of (1/2pi) int <xi>^{2s} e^{2 sigma |xi|} |f_hat|^2 d xi.
// (sigma, s) = (0, 0) gives sqrt(2 M).
double gevrey_norm(const SpectralField& f, const GevreyIndex& idx);
double gevrey_norm(const RealField& f, const GevreyIndex& idx);

struct EmbeddingCheck {
  double weaker_norm = 0.0;    // ||u||_{G^{sigma', s'}}
  double stronger_norm = 0.0;  // ||u||_{G^{sigma, s}}
  double constant = 0.0;       // sup_k <k>^{s'-s} e^{(sigma'-sigma)|k|}
  bool holds = false;
};

// Checks ||u||_{G^{sigma',s'}} <= C ||u||_{G^{sigma,s}} with the sharp grid
// constant. Requires 0 < sigma' <= sigma.
EmbeddingCheck gevrey_embedding_check(const RealField& u, double sigma, double sigma_prime,
                                      double s, double s_prime);

struct GevreyFlux {
  RealField commutator;  // F = d_x((A u)^2) - d_x(A(u^2)), A = e^{sigma|D|}
  double pairing = 0.0;  // int A u * F dx
  double rate = 0.0;     // d/dt (1/2)||u||^2_{G^{sigma,0}} = pairing / 2
};

// Quadratic case only (p = 1). Products are formed on the grid; u is expected
// to be band-limited to the dealiased band (|k| <= 2 k_max / 3), and F is
// reported on that band, where the products are alias free.
GevreyFlux gevrey_flux(const RealField& u, double sigma, const ModelParams& params);

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double sobolev = 0.0;
  std::vector<double> gevrey;  // one entry per requested GevreyIndex
  std::optional<double> sigma_fit;
  std::optional<double> sigma_r;
  std::optional<double> sigma_resid;
};

}  // namespace benjamin
