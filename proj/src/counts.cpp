#include "fp/counts.hpp"

#include <cmath>

#include "fp/kahan.hpp"
#include "fp/parallel.hpp"

namespace fp {

namespace {

// Distinct prime factors by trial division; c and d stay <= ~1e6 here.
std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> ps;
    for (u64 p = 2; (u128)p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

} // namespace

u64 pi_cd(const SieveCache& cache, const SemigroupPair& pair) {
    if (pair.g() > cache.limit())
        throw OutOfRange("pi_cd: pair's Frobenius number beyond sieve limit");
    u64 count = 0;
    cache.for_each_prime(2, pair.g(), [&](u64 p) {
        if (pair.is_representable(p)) ++count;
    });
    return count;
}

double psi_cd(const SieveCache& cache, const SemigroupPair& pair) {
    if (pair.g() > cache.limit())
        throw OutOfRange("psi_cd: pair's Frobenius number beyond sieve limit");
    KahanSum sum;
    PrimePowerStream stream(cache, pair.g());
    while (auto e = stream.next())
        if (pair.is_representable(e->n)) sum.add(e->log_p);
    return sum.value();
}

double theta_cd(const SieveCache& cache, const SemigroupPair& pair) {
    if (pair.g() > cache.limit())
        throw OutOfRange("theta_cd: pair's Frobenius number beyond sieve limit");
    KahanSum sum;
    cache.for_each_prime(2, pair.g(), [&](u64 p) {
        if (pair.is_representable(p)) sum.add(std::log((double)p));
    });
    return sum.value();
}

double ap_discrepancy_bound(const SemigroupPair& pair) {
    // Negative side: prime powers p^a <= g with p | c sit outside every
    // progression the coprimality condition keeps, but inside psi(g).
    KahanSum bound;
    for (u64 p : distinct_prime_factors(pair.c())) {
        u64 count = 0;  // floor(log_p g)
        u128 pw = p;
        while (pw <= pair.g()) {
            ++count;
            pw *= p;
        }
        if (count > 0) bound.add((double)count * std::log((double)p));
    }
    // Positive side: diagonal terms n = d*y that are prime powers. They
    // require d itself to be a power of one prime, and range over
    // p^a in [d, d*(c-1)] (d*(c-1) = g + c can pass g, so this is not
    // covered by floor(log_p g)).
    auto dps = distinct_prime_factors(pair.d());
    if (dps.size() == 1) {
        u64 p = dps[0];
        u128 top = (u128)pair.d() * (pair.c() - 1);
        u64 count = 0;
        for (u128 pw = p; pw <= top; pw *= p)
            if (pw >= pair.d()) ++count;
        if (count > 0) bound.add((double)count * std::log((double)p));
    }
    return bound.value();
}

ApDecomposition ap_decomposition(const SieveCache& cache,
                                 const SemigroupPair& pair) {
    const u64 c = pair.c();
    const u64 d = pair.d();
    // The largest progression start is d*(c-1): y = c-1 is always coprime
    // to c, and d*(c-1) = g + c, so the stream must pass g.
    u128 needed = (u128)d * (c - 1);
    if (needed > cache.limit())
        throw OutOfRange("ap_decomposition needs sieve limit >= d*(c-1)");

    // One pass: a prime power n belongs to psi(d*y; c, d*y) for the unique
    // y in [1,c] with d*y = n (mod c), provided (y,c)=1 and n <= d*y.
    KahanSum ap;
    PrimePowerStream stream(cache, (u64)needed);
    while (auto e = stream.next()) {
        u64 y = (u64)((u128)(e->n % c) * pair.d_inv() % c);
        if (y == 0) y = c;
        if (gcd_u64(y, c) != 1) continue;
        if ((u128)d * y >= e->n) ap.add(e->log_p);
    }

    ApDecomposition out;
    out.ap_sum = ap.value();
    out.ap_discrepancy = psi_cd(cache, pair) - (cache.psi(pair.g()) - out.ap_sum);
    out.bound = ap_discrepancy_bound(pair);
    return out;
}

PartialSummation partial_summation_check(const SieveCache& cache,
                                         const SemigroupPair& pair) {
    const u64 g = pair.g();
    if (g > cache.limit())
        throw OutOfRange("partial_summation_check beyond sieve limit");

    // theta_cd(t) is a step function jumping at representable primes;
    // between jumps, integral of dt/(t log^2 t) is 1/log a - 1/log b.
    u64 lhs = 0;
    KahanSum integral;
    KahanSum theta;  // running theta_cd value at the previous jump
    u64 prev_p = 0;
    cache.for_each_prime(2, g, [&](u64 p) {
        if (!pair.is_representable(p)) return;
        if (prev_p != 0)
            integral.add(theta.value() *
                         (1.0 / std::log((double)prev_p) - 1.0 / std::log((double)p)));
        theta.add(std::log((double)p));
        prev_p = p;
        ++lhs;
    });

    PartialSummation out;
    out.lhs = lhs;
    if (lhs == 0) return out;  // no jumps: both sides are zero

    double log_g = std::log((double)g);
    integral.add(theta.value() * (1.0 / std::log((double)prev_p) - 1.0 / log_g));
    out.rhs = theta.value() / log_g + integral.value();
    out.gap = std::abs((double)lhs - out.rhs);
    return out;
}

CountReport count_report(const SieveCache& cache, const SemigroupPair& pair) {
    CountReport r;
    r.c = pair.c();
    r.d = pair.d();
    r.g = pair.g();
    r.pi_g = cache.pi(r.g);
    r.psi_g = cache.psi(r.g);

    // psi_cd, theta_cd and pi_cd in one stream pass.
    KahanSum psi_sum, theta_sum;
    PrimePowerStream stream(cache, r.g);
    while (auto e = stream.next()) {
        if (!pair.is_representable(e->n)) continue;
        psi_sum.add(e->log_p);
        if (cache.is_prime(e->n)) {
            theta_sum.add(e->log_p);
            ++r.pi_cd;
        }
    }
    r.psi_cd = psi_sum.value();
    r.theta_cd = theta_sum.value();

    auto ap = ap_decomposition(cache, pair);
    r.ap_sum = ap.ap_sum;
    r.ap_discrepancy = ap.ap_discrepancy;
    r.ap_bound = ap.bound;

    r.ratio_pi = r.pi_g > 0 ? (double)r.pi_cd / (double)r.pi_g : 0.0;
    r.ratio_psi = r.g > 0 ? 2.0 * r.psi_cd / (double)r.g : 0.0;
    r.err_scaled = std::abs(r.ratio_pi - 0.5) * std::log((double)r.g);
    return r;
}

std::vector<SweepRow> ratio_sweep(const SieveCache& cache,
                                  const std::vector<SemigroupPair>& pairs,
                                  int threads) {
    std::vector<SweepRow> rows(pairs.size());
    parallel_chunks(pairs.size(), threads, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.c = pairs[i].c();
        row.d = pairs[i].d();
        try {
            row.report = count_report(cache, pairs[i]);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return rows;
}

} // namespace fp
