#pragma once

#include <optional>

#include "benjamin/harness/config.hpp"
#include "benjamin/spectral.hpp"

namespace benjamin::harness {

// Samples the configured initial family on the run grid.
//   gaussian           A exp(-((x - x0)/w)^2)
//   gaussian_spectrum  u_hat(k) = A <k>^{-s} e^{-sigma0 |k|} (real, even)
//   sech               A sech^2((x - x0)/w)
//   soliton            Petviashvili profile of speed c, shifted to x0
//   file               n_points whitespace-separated reals
RealField make_initial_data(const RunConfig& cfg);

// Closed-form or traveling-wave reference at time t, when one exists:
// soliton data (translated profile) and KdV sech data. Empty otherwise.
std::optional<RealField> exact_solution(const RunConfig& cfg, const RealField& u0, double t);

}  // namespace benjamin::harness
