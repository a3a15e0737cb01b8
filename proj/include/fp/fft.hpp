#pragma once

#include <complex>
#include <vector>

namespace fp {

// F[k] = sum_n a[n] * e(+k*n/N) for arbitrary N. Bluestein's reindexing
// k*n = (k^2 + n^2 - (k-n)^2)/2 turns this into one power-of-two cyclic
// convolution; chirp phases are reduced mod 2N in integer arithmetic, so
// phase accuracy does not degrade with N.
std::vector<std::complex<double>> dft_unit_circle(
    const std::vector<std::complex<double>>& a);

} // namespace fp
