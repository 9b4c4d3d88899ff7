#pragma once

#include <complex>

namespace benjamin::detail {

// Thin wrappers around cached FFTW plans. Planning is serialized by a mutex;
// execution uses the new-array interface, which FFTW guarantees thread safe.

// out[m] = sum_j in[j] exp(-2 pi i j m / n), m = 0 .. n/2.
void r2c(int n, const double* in, std::complex<double>* out);

// out[j] = sum over the full Hermitian spectrum of in[m] exp(+2 pi i j m / n).
// `in` is clobbered.
void c2r(int n, std::complex<double>* in, double* out);

// Unnormalized forward complex transform of length n.
void c2c_forward(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace benjamin::detail
