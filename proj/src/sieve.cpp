#include "fp/sieve.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "fp/kahan.hpp"
#include "fp/parallel.hpp"

namespace fp {

namespace {

constexpr char kMagic[8] = {'F', 'P', 'S', 'I', 'E', 'V', 'E', '1'};

void put_u64_le(std::string& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back((char)((v >> (8 * i)) & 0xff));
}

u64 get_u64_le(const unsigned char* p) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= (u64)p[i] << (8 * i);
    return v;
}

// Simple odd sieve for the base primes up to sq (inclusive).
std::vector<u64> small_primes_upto(u64 sq) {
    std::vector<u64> primes;
    if (sq < 2) return primes;
    primes.push_back(2);
    std::vector<char> comp((sq + 1) / 2, 0);  // index i -> 2i+1
    for (u64 n = 3; n <= sq; n += 2) {
        if (comp[(n - 1) / 2]) continue;
        primes.push_back(n);
        for (u128 m = (u128)n * n; m <= sq; m += 2 * n)
            comp[((u64)m - 1) / 2] = 1;
    }
    return primes;
}

} // namespace

SieveCache SieveCache::build(u64 limit) { return build(limit, Options()); }

SieveCache SieveCache::build(u64 limit, Options opt) {
    if (opt.segment_size < 128 || opt.segment_size % 128 != 0)
        throw InvalidConfig("segment_size must be a positive multiple of 128");

    SieveCache cache;
    cache.limit_ = limit;
    cache.segment_size_ = opt.segment_size;
    cache.nbits_ = bits_for_limit(limit);
    if (limit < 2) {
        cache.finalize_counts();
        return cache;
    }

    u64 nwords = (cache.nbits_ + 63) / 64;
    if (nwords * 8 > opt.memory_budget_bytes)
        throw LimitTooLarge("sieve bitmap for limit " + std::to_string(limit) +
                            " exceeds the memory budget");

    cache.base_primes_ = small_primes_upto(isqrt_u64(limit));
    cache.words_.assign(nwords, ~0ull);

    // Bit 0 is n=1, never prime.
    cache.words_[0] &= ~1ull;
    // Zero tail bits past the last odd <= limit so serialization is exact.
    if (cache.nbits_ % 64 != 0)
        cache.words_.back() &= (1ull << (cache.nbits_ % 64)) - 1;

    const u64 S = opt.segment_size;
    const u64 nseg = (limit + S) / S;  // segments cover [0, limit]

    // Each segment owns a disjoint word range (S is a multiple of 128), so
    // workers never touch the same u64 and the bitmap is identical for any
    // worker count.
    parallel_chunks(nseg, opt.threads, [&](std::size_t k) {
        u64 lo = (u64)k * S;
        u64 hi = std::min(limit, lo + S - 1);
        for (u64 p : cache.base_primes_) {
            if (p == 2) continue;
            u128 p2 = (u128)p * p;
            if (p2 > hi) break;
            // first odd multiple of p in [max(lo, p^2), hi]
            u128 start = ((u128)std::max<u64>(lo, 1) + p - 1) / p * p;
            if (start < p2) start = p2;
            if ((start / p) % 2 == 0) start += p;  // odd cofactor => odd multiple
            for (u128 m = start; m <= hi; m += 2 * p) {
                u64 i = ((u64)m - 1) / 2;
                cache.words_[i >> 6] &= ~(1ull << (i & 63));
            }
        }
    });

    cache.finalize_counts();
    return cache;
}

void SieveCache::finalize_counts() {
    // pi_blocks_[j] = set bits in words [0, j*kPiBlockWords); only block
    // starts below nwords are ever read.
    u64 nwords = words_.size();
    pi_blocks_.assign(nwords / kPiBlockWords + 1, 0);
    u64 running = 0;
    for (u64 w = 0; w < nwords; ++w) {
        if (w % kPiBlockWords == 0) pi_blocks_[w / kPiBlockWords] = running;
        running += (u64)std::popcount(words_[w]);
    }
}

u64 SieveCache::pi(u64 t) const {
    if (t > limit_) throw OutOfRange("pi(t) beyond sieve limit");
    if (t < 2) return 0;
    u64 count = 1;  // the prime 2
    if (t < 3 || nbits_ == 0) return count;
    u64 last_bit = ((t % 2 == 0 ? t - 1 : t) - 1) / 2;
    u64 full = last_bit / 64;  // words [0, full) fully counted
    u64 b = full / kPiBlockWords;
    count += pi_blocks_[b];
    for (u64 w = b * kPiBlockWords; w < full; ++w)
        count += (u64)std::popcount(words_[w]);
    unsigned keep = (unsigned)(last_bit & 63);
    u64 mask = (keep == 63) ? ~0ull : ((2ull << keep) - 1);
    count += (u64)std::popcount(words_[full] & mask);
    return count;
}

double SieveCache::psi(u64 t) const {
    if (t > limit_) throw OutOfRange("psi(t) beyond sieve limit");
    KahanSum sum;
    if (t < 2) return 0.0;
    for_each_prime(2, t, [&](u64 p) {
        int mult = 1;
        u128 pw = (u128)p * p;
        while (pw <= t) {
            ++mult;
            pw *= p;
        }
        sum.add(std::log((double)p) * mult);
    });
    return sum.value();
}

double SieveCache::theta(u64 t) const {
    if (t > limit_) throw OutOfRange("theta(t) beyond sieve limit");
    KahanSum sum;
    if (t < 2) return 0.0;
    for_each_prime(2, t, [&](u64 p) { sum.add(std::log((double)p)); });
    return sum.value();
}

double SieveCache::psi_ap(u64 x, u64 q, u64 a) const {
    if (x > limit_) throw OutOfRange("psi_ap beyond sieve limit");
    if (q == 0) throw InvalidConfig("psi_ap needs q >= 1");
    a %= q;
    KahanSum sum;
    PrimePowerStream stream(*this, x);
    while (auto e = stream.next()) {
        if (e->n % q == a) sum.add(e->log_p);
    }
    return sum.value();
}

PrimePowerStream SieveCache::prime_powers(u64 up_to) const {
    return PrimePowerStream(*this, up_to);
}

// --------------------------------------------------------------------------
// PrimePowerStream

PrimePowerStream::PrimePowerStream(const SieveCache& cache, u64 bound)
    : cache_(cache), bound_(bound) {
    if (bound > cache.limit_)
        throw OutOfRange("prime power stream beyond sieve limit");
    // Proper powers p^a (a >= 2) need p <= sqrt(bound); there are only
    // O(sqrt(bound)) of them, so a sorted vector is cheap.
    for (u64 p : cache_.base_primes_) {
        u128 pw = (u128)p * p;
        if (pw > bound_) break;
        double lp = std::log((double)p);
        while (pw <= bound_) {
            proper_.push_back({(u64)pw, lp});
            pw *= p;
        }
    }
    std::sort(proper_.begin(), proper_.end(),
              [](const Entry& a, const Entry& b) { return a.n < b.n; });
    // Prime cursor starts before 2.
    next_prime_ = 0;
    advance_prime();
}

void PrimePowerStream::advance_prime() {
    if (!emitted_two_) {
        emitted_two_ = true;
        next_prime_ = (bound_ >= 2 && cache_.limit_ >= 2) ? 2 : 0;
        if (next_prime_ != 0) return;
    }
    u64 nbits = cache_.nbits_;
    if (nbits == 0) {
        next_prime_ = 0;
        return;
    }
    if (next_prime_ == 2) {
        word_idx_ = 0;
        word_ = cache_.words_.empty() ? 0 : cache_.words_[0];
    }
    while (true) {
        if (word_ != 0) {
            unsigned b = (unsigned)std::countr_zero(word_);
            word_ &= word_ - 1;
            u64 p = ((word_idx_ << 6) + b) * 2 + 1;
            if (p > bound_) {
                next_prime_ = 0;
                return;
            }
            next_prime_ = p;
            return;
        }
        ++word_idx_;
        if (word_idx_ >= cache_.words_.size()) {
            next_prime_ = 0;
            return;
        }
        word_ = cache_.words_[word_idx_];
    }
}

std::optional<PrimePowerStream::Entry> PrimePowerStream::next() {
    bool have_proper = proper_idx_ < proper_.size();
    if (next_prime_ == 0 && !have_proper) return std::nullopt;
    if (next_prime_ != 0 &&
        (!have_proper || next_prime_ < proper_[proper_idx_].n)) {
        Entry e{next_prime_, std::log((double)next_prime_)};
        advance_prime();
        return e;
    }
    return proper_[proper_idx_++];
}

// --------------------------------------------------------------------------
// Disk cache

void SieveCache::save(const std::string& path) const {
    std::string blob;
    blob.reserve(24 + words_.size() * 8);
    blob.append(kMagic, 8);
    put_u64_le(blob, limit_);
    put_u64_le(blob, segment_size_);
    for (u64 w : words_) put_u64_le(blob, w);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open sieve cache for writing: " + path);
    out.write(blob.data(), (std::streamsize)blob.size());
    if (!out) throw Error("short write to sieve cache: " + path);
}

std::optional<SieveCache> SieveCache::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string blob((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (blob.size() < 24) return std::nullopt;
    if (std::memcmp(blob.data(), kMagic, 8) != 0) return std::nullopt;
    const unsigned char* p = (const unsigned char*)blob.data();
    u64 limit = get_u64_le(p + 8);
    u64 seg = get_u64_le(p + 16);
    if (seg < 128 || seg % 128 != 0) return std::nullopt;

    SieveCache cache;
    cache.limit_ = limit;
    cache.segment_size_ = seg;
    cache.nbits_ = bits_for_limit(limit);
    u64 nwords = limit < 2 ? 0 : (cache.nbits_ + 63) / 64;
    if (blob.size() != 24 + nwords * 8) return std::nullopt;
    cache.words_.resize(nwords);
    for (u64 w = 0; w < nwords; ++w)
        cache.words_[w] = get_u64_le(p + 24 + 8 * w);

    // Base primes are re-derived from the bitmap itself.
    u64 sq = isqrt_u64(limit);
    if (limit >= 2) {
        cache.base_primes_.push_back(2);
        for (u64 n = 3; n <= sq; n += 2)
            if (cache.is_prime(n)) cache.base_primes_.push_back(n);
    }
    cache.finalize_counts();
    return cache;
}

std::optional<SieveCache> SieveCache::load_if_matching(const std::string& path,
                                                       u64 limit,
                                                       u64 segment_size) {
    auto cache = load(path);
    if (!cache) return std::nullopt;
    if (cache->limit_ != limit || cache->segment_size_ != segment_size)
        return std::nullopt;
    return cache;
}

} // namespace fp
