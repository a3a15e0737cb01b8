#include "fp/semigroup.hpp"

#include <string>

namespace fp {

SemigroupPair::SemigroupPair(u64 c, u64 d) : c_(c), d_(d) {
    if (!(1 < c && c < d))
        throw BadOrder("semigroup generators must satisfy 1 < c < d, got (" +
                       std::to_string(c) + "," + std::to_string(d) + ")");
    if (gcd_u64(c, d) != 1)
        throw NotCoprime("semigroup generators must be coprime, got (" +
                         std::to_string(c) + "," + std::to_string(d) + ")");
    u128 g = (u128)c * d - c - d;
    g_ = (u64)g;
    d_inv_ = mod_inverse(d % c, c);
}

std::optional<Representation> SemigroupPair::representation(u64 n) const {
    u64 y0 = (u64)((u128)(n % c_) * d_inv_ % c_);
    u128 dy = (u128)d_ * y0;
    if (dy > n) return std::nullopt;
    return Representation{(u64)((n - (u64)dy) / c_), y0};
}

u64 SemigroupPair::count_representable_upto(u64 t) const {
    // Residue class d*y0 (mod c) contains the representable ray
    // {d*y0, d*y0 + c, ...}; count the ray's points <= t for each y0.
    u64 total = 0;
    for (u64 y0 = 0; y0 < c_; ++y0) {
        u128 base = (u128)d_ * y0;
        if (base > t) break;  // d*y0 is increasing in y0
        total += (t - (u64)base) / c_ + 1;
    }
    return total;
}

bool SemigroupPair::sylvester_symmetry_holds() const {
    // The predicate for (s, g-s) is symmetric, so scanning s <= g-s covers
    // every pair in [0,g] exactly once.
    for (u64 s = 0; s <= g_ - s; ++s) {
        if (is_representable(s) == is_representable(g_ - s)) return false;
    }
    return true;
}

} // namespace fp
