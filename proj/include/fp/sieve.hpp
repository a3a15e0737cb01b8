#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "fp/errors.hpp"
#include "fp/ints.hpp"

namespace fp {

class PrimePowerStream;

// Segmented, odd-only, bit-packed sieve of Eratosthenes plus the classical
// counting functions pi, psi, theta and psi(x;q,a), all exact.
//
// Bitmap layout: bit i represents the odd number 2*i+1; a set bit means
// prime. 2 is handled explicitly by the queries. The flat word array is
// identical for every segment_size and worker count (segments only steer
// the build), so serialized caches are reproducible byte for byte.
class SieveCache {
public:
    struct Options {
        u64 segment_size = 1ull << 20;          // integers per build segment
        int threads = 1;                        // build workers
        u64 memory_budget_bytes = 2ull << 30;   // bitmap cap before refusing
    };

    static SieveCache build(u64 limit, Options opt);
    static SieveCache build(u64 limit);  // default options

    // Disk cache: magic "FPSIEVE1", little-endian u64 limit, u64 segment_size,
    // then the bitmap words in little-endian order.
    void save(const std::string& path) const;
    static std::optional<SieveCache> load(const std::string& path);
    // nullopt when the file is absent, corrupt, or limit/segment_size differ.
    static std::optional<SieveCache> load_if_matching(const std::string& path,
                                                      u64 limit,
                                                      u64 segment_size);

    u64 limit() const { return limit_; }
    u64 segment_size() const { return segment_size_; }
    const std::vector<u64>& base_primes() const { return base_primes_; }
    const std::vector<u64>& words() const { return words_; }

    bool is_prime(u64 n) const {
        if (n < 2 || n > limit_) return false;
        if (n == 2) return true;
        if (n % 2 == 0) return false;
        u64 i = (n - 1) / 2;
        return (words_[i >> 6] >> (i & 63)) & 1ull;
    }

    // Exact #{p <= t}. Throws OutOfRange for t > limit.
    u64 pi(u64 t) const;

    // psi(t) = sum_{n<=t} Lambda(n), theta(t) = sum_{p<=t} log p, both with
    // compensated accumulation in ascending order.
    double psi(u64 t) const;
    double theta(u64 t) const;

    // psi(x;q,a) = sum over prime powers n <= x with n = a (mod q).
    double psi_ap(u64 x, u64 q, u64 a) const;

    // Calls f(p) for every prime lo <= p <= hi in ascending order.
    template <typename F>
    void for_each_prime(u64 lo, u64 hi, F&& f) const {
        if (hi > limit_) throw OutOfRange("prime walk beyond sieve limit");
        if (hi < 2 || lo > hi) return;
        if (lo <= 2) f((u64)2);
        if (hi < 3 || nbits_ == 0) return;
        u64 start = std::max<u64>(lo, 3);
        if (start % 2 == 0) ++start;
        if (start > hi) return;
        u64 end = (hi % 2 == 0) ? hi - 1 : hi;
        u64 bit = (start - 1) / 2;
        u64 last_bit = (end - 1) / 2;
        u64 w = bit >> 6;
        u64 last_w = last_bit >> 6;
        u64 word = words_[w] & (~0ull << (bit & 63));
        for (;;) {
            if (w == last_w) {
                unsigned keep = (unsigned)(last_bit & 63);
                if (keep < 63) word &= (2ull << keep) - 1;
            }
            u64 bits = word;
            while (bits) {
                unsigned b = (unsigned)std::countr_zero(bits);
                bits &= bits - 1;
                f(((w << 6) + b) * 2 + 1);
            }
            if (w == last_w) break;
            ++w;
            word = words_[w];
        }
    }

    PrimePowerStream prime_powers(u64 up_to) const;

private:
    friend class PrimePowerStream;

    u64 limit_ = 0;
    u64 segment_size_ = 0;
    u64 nbits_ = 0;
    std::vector<u64> base_primes_;
    std::vector<u64> words_;
    std::vector<u64> pi_blocks_;  // prime bits before each block of words

    static constexpr u64 kPiBlockWords = 512;

    void finalize_counts();
    static u64 bits_for_limit(u64 limit) {
        return limit >= 2 ? (limit + 1) / 2 : 0;
    }
};

// Ascending (n, Lambda(n)) over prime powers n <= bound. Primes come from
// the sieve bitmap; the sparse proper powers p^a (a >= 2) are precollected
// and merged, so no dense Lambda table ever exists.
class PrimePowerStream {
public:
    struct Entry {
        u64 n;
        double log_p;
    };

    PrimePowerStream(const SieveCache& cache, u64 bound);

    // nullopt when exhausted.
    std::optional<Entry> next();

private:
    void advance_prime();

    const SieveCache& cache_;
    u64 bound_;
    std::vector<Entry> proper_;   // proper powers sorted by n
    std::size_t proper_idx_ = 0;
    u64 next_prime_ = 0;          // 0 = exhausted
    u64 word_idx_ = 0;
    u64 word_ = 0;
    bool emitted_two_ = false;
};

} // namespace fp
