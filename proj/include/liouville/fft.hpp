#pragma once

#include <complex>
#include <span>
#include <vector>

namespace liouville::fft {

using cplx = std::complex<double>;

// Unnormalized DFT, X[k] = sum_j x[j] exp(-2 pi i jk/n).
std::vector<cplx> forward(std::span<const cplx> x);
// Unnormalized inverse, x[j] = sum_k X[k] exp(+2 pi i jk/n).
std::vector<cplx> backward(std::span<const cplx> x);

}  // namespace liouville::fft
