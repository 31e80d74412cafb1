// Thin deterministic DFT layer (complex-to-complex) used for circulant
// eigenvalues, spectral synthesis and modal dynamics.
//
// Conventions:
//   forward:  X[s] = sum_p x[p] exp(-2*pi*i*p*s/N)      (unscaled)
//   inverse:  x[p] = (1/N) sum_s X[s] exp(+2*pi*i*p*s/N)
#pragma once

#include <complex>
#include <vector>

namespace nlchain {

using cdouble = std::complex<double>;

std::vector<cdouble> dft_forward(const std::vector<cdouble>& x);
std::vector<cdouble> dft_inverse(const std::vector<cdouble>& x);

// forward transform of a real sequence
std::vector<cdouble> dft_forward(const std::vector<double>& x);

} // namespace nlchain
