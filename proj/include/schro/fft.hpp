#pragma once

#include <vector>

#include "schro/quadrature.hpp"

namespace schro {

// Iterative radix-2 complex FFT; size must be a power of two.
// Forward kernel e^{-2πijk/n}; inverse carries the 1/n factor.
void fft_inplace(std::vector<cplx>& a, bool inverse = false);
std::vector<cplx> fft(std::vector<cplx> a);
std::vector<cplx> ifft(std::vector<cplx> a);

}  // namespace schro
