#pragma once

#include <cmath>
#include <complex>

namespace fp {

// Neumaier-compensated accumulator. Sums of ~1e7 logs keep ~1e-15 relative
// accuracy, which the discrepancy identities rely on.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Componentwise compensated accumulation for complex sums.
class KahanComplex {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_;
    KahanSum im_;
};

} // namespace fp
