#pragma once

#include <optional>

#include "fp/errors.hpp"
#include "fp/ints.hpp"

namespace fp {

// Witness for n = c*x + d*y with x,y >= 0 and y in [0, c-1].
struct Representation {
    u64 x = 0;
    u64 y = 0;
};

// Two-generator numerical semigroup <c,d> with 1 < c < d, gcd(c,d) = 1.
// Construction precomputes the Frobenius number g = c*d - c - d and
// d^{-1} mod c; membership afterwards is one modular multiply and a compare.
class SemigroupPair {
public:
    SemigroupPair(u64 c, u64 d);

    u64 c() const { return c_; }
    u64 d() const { return d_; }
    u64 g() const { return g_; }
    u64 d_inv() const { return d_inv_; }

    // n in <c,d>?  Uses the unique y0 = n*d^{-1} mod c: representable
    // exactly when d*y0 <= n.
    bool is_representable(u64 n) const {
        u64 y0 = (u64)((u128)(n % c_) * d_inv_ % c_);
        return (u128)d_ * y0 <= n;
    }

    // The unique witness with 0 <= y <= c-1, if any.
    std::optional<Representation> representation(u64 n) const;

    // #{0 <= n <= t : n representable}. O(c): per residue class the
    // representable points are an arithmetic ray d*y0 + c*Z>=0.
    u64 count_representable_upto(u64 t) const;

    // Checks s vs g-s membership parity over every unordered pair in [0,g].
    bool sylvester_symmetry_holds() const;

private:
    u64 c_;
    u64 d_;
    u64 g_;
    u64 d_inv_;
};

} // namespace fp
