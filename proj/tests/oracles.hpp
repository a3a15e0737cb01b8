#pragma once

// Independent reference implementations for the test suite. Everything here
// is deliberately brute force and shares no code with the library paths it
// checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Coin-problem dynamic program: table[n] = 1 iff n = c*x + d*y solvable.
inline std::vector<char> representable_table(u64 c, u64 d, u64 upto) {
    std::vector<char> table(upto + 1, 0);
    table[0] = 1;
    for (u64 n = 1; n <= upto; ++n) {
        if (n >= c && table[n - c]) table[n] = 1;
        if (n >= d && table[n - d]) table[n] = 1;
    }
    return table;
}

inline bool is_prime_td(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; (u128)p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline u64 pi_td(u64 n) {
    u64 count = 0;
    for (u64 k = 2; k <= n; ++k)
        if (is_prime_td(k)) ++count;
    return count;
}

// log p if n = p^a, else 0.
inline double lambda_td(u64 n) {
    if (n < 2) return 0.0;
    for (u64 p = 2; (u128)p * p <= n; ++p) {
        if (n % p == 0) {
            u64 m = n;
            while (m % p == 0) m /= p;
            return m == 1 ? std::log((double)p) : 0.0;
        }
    }
    return std::log((double)n);  // n prime
}

inline std::vector<std::pair<u64, double>> prime_powers_td(u64 bound) {
    std::vector<std::pair<u64, double>> out;
    for (u64 n = 2; n <= bound; ++n) {
        double l = lambda_td(n);
        if (l > 0.0) out.emplace_back(n, l);
    }
    return out;
}

// h(alpha) by the raw (d+1)x(c+1) double sum.
inline std::complex<double> h_double_sum(u64 c, u64 d, double alpha) {
    std::complex<double> sum(0.0, 0.0);
    for (u64 x = 0; x <= d; ++x) {
        for (u64 y = 0; y <= c; ++y) {
            double ang =
                6.283185307179586 * std::fmod(alpha * (double)(c * x + d * y), 1.0);
            sum += std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }
    return sum;
}

// f(alpha) over trial-division prime powers.
inline std::complex<double> f_direct_td(u64 g, double alpha) {
    std::complex<double> sum(0.0, 0.0);
    for (const auto& [n, l] : prime_powers_td(g)) {
        double ang = 6.283185307179586 * std::fmod(alpha * (double)n, 1.0);
        sum += l * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return sum;
}

} // namespace oracle
