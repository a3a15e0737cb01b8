#pragma once

#include <cmath>
#include <cstdint>

namespace fp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// gcd/modular helpers work on the wide types directly; std::gcd is not
// guaranteed to accept __int128 under a strict -std flag.

constexpr u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// floor(sqrt(n)) with exact integer correction around the double estimate.
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// a^{-1} mod m for gcd(a,m)=1, m >= 2; result in [1, m-1].
inline u64 mod_inverse(u64 a, u64 m) {
    i128 t = 0, new_t = 1;
    i128 r = (i128)m, new_r = (i128)(a % m);
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    // r == 1 when the inverse exists; caller guarantees coprimality.
    if (t < 0) t += (i128)m;
    return (u64)t;
}

} // namespace fp
