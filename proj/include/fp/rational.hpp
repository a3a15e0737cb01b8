#pragma once

#include <cmath>
#include <complex>

#include "fp/ints.hpp"

namespace fp {

// Exact fraction on __int128, always reduced, den > 0.
// Arc endpoints and quadrature nodes stay rational so circle phases can be
// reduced in integer arithmetic instead of multiplying large floats.
struct Rational {
    i128 num = 0;
    i128 den = 1;

    Rational() = default;
    Rational(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd_i128(n, d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
    }
    static Rational integer(i128 n) { return Rational(n, 1); }

    Rational operator+(const Rational& o) const {
        return Rational(num * o.den + o.num * den, den * o.den);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num * o.den - o.num * den, den * o.den);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num * o.num, den * o.den);
    }
    Rational operator/(const Rational& o) const {
        return Rational(num * o.den, den * o.num);
    }

    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    // Fractional part in [0, 1).
    Rational mod1() const {
        i128 r = num % den;
        if (r < 0) r += den;
        return Rational(r, den);
    }

    double to_double() const {
        return (double)((long double)num / (long double)den);
    }
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(r) = exp(2*pi*i*r), reduced mod 1 before the trig call.
inline std::complex<double> unit_phase(const Rational& r) {
    Rational f = r.mod1();
    double ang = kTwoPi * f.to_double();
    return {std::cos(ang), std::sin(ang)};
}

// e(k*r) with k*num reduced mod den in integer arithmetic. Requires
// k * |num after mod1| to fit in u128, which holds for k up to ~1e9 against
// the node denominators used here.
inline std::complex<double> unit_phase_times(const Rational& r, u64 k) {
    i128 m = r.num % r.den;
    if (m < 0) m += r.den;
    u128 red = (u128)m * k % (u128)r.den;
    double ang = kTwoPi * (double)((long double)red / (long double)r.den);
    return {std::cos(ang), std::sin(ang)};
}

// e(num/den) for already-reduced integer fractions (grid phases).
inline std::complex<double> unit_phase_frac(u64 num, u64 den) {
    double ang = kTwoPi * (double)((long double)num / (long double)den);
    return {std::cos(ang), std::sin(ang)};
}

} // namespace fp
