#include "fp/fft.hpp"

#include <cmath>
#include <utility>

#include "fp/ints.hpp"
#include "fp/rational.hpp"

namespace fp {

namespace {

using cd = std::complex<double>;

// Iterative radix-2 FFT. The running twiddle is refreshed from polar()
// every 32 butterflies to stop phase drift at large sizes.
void fft_pow2(std::vector<cd>& v, bool inverse) {
    const std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / (double)len;
        const cd step(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                if (j % 32 == 0)
                    w = cd(std::cos(ang * (double)j), std::sin(ang * (double)j));
                cd u = v[i + j];
                cd t = v[i + j + len / 2] * w;
                v[i + j] = u + t;
                v[i + j + len / 2] = u - t;
                w *= step;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / (double)n;
        for (auto& x : v) x *= inv;
    }
}

} // namespace

std::vector<cd> dft_unit_circle(const std::vector<cd>& a) {
    const std::size_t N = a.size();
    if (N == 0) return {};
    if (N == 1) return a;

    // chirp[n] = e(n^2 / (2N)), exponent reduced mod 2N before any float op.
    const u64 twoN = 2 * (u64)N;
    std::vector<cd> chirp(N);
    for (u64 n = 0; n < N; ++n)
        chirp[n] = unit_phase_frac((u64)((u128)n * n % twoN), twoN);

    std::size_t L = 1;
    while (L < 2 * N - 1) L <<= 1;

    std::vector<cd> x(L, cd(0.0, 0.0));
    std::vector<cd> y(L, cd(0.0, 0.0));
    for (std::size_t n = 0; n < N; ++n) x[n] = a[n] * chirp[n];
    y[0] = std::conj(chirp[0]);
    for (std::size_t m = 1; m < N; ++m) {
        cd v = std::conj(chirp[m]);
        y[m] = v;
        y[L - m] = v;
    }

    fft_pow2(x, false);
    fft_pow2(y, false);
    for (std::size_t i = 0; i < L; ++i) x[i] *= y[i];
    fft_pow2(x, true);

    std::vector<cd> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = chirp[k] * x[k];
    return out;
}

} // namespace fp
