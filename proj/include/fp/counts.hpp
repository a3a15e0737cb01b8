#pragma once

#include <string>
#include <vector>

#include "fp/semigroup.hpp"
#include "fp/sieve.hpp"

namespace fp {

// One pair's full scoreboard.
struct CountReport {
    u64 c = 0;
    u64 d = 0;
    u64 g = 0;
    u64 pi_cd = 0;           // representable primes <= g
    u64 pi_g = 0;            // all primes <= g
    double psi_cd = 0.0;     // Lambda-mass of representable n <= g
    double theta_cd = 0.0;   // log-mass of representable primes <= g
    double psi_g = 0.0;      // psi(g)
    double ratio_pi = 0.0;   // pi_cd / pi_g (0 when pi_g = 0)
    double ratio_psi = 0.0;  // 2 * psi_cd / g
    double ap_sum = 0.0;     // sum_{y<=c,(y,c)=1} psi(d*y; c, d*y)
    double ap_discrepancy = 0.0;  // psi_cd - (psi_g - ap_sum)
    double ap_bound = 0.0;   // sum_{p | c*d} floor(log_p g) * log p
    double err_scaled = 0.0; // |ratio_pi - 1/2| * log g
};

// Exact count of representable primes p <= g, streamed from the sieve.
u64 pi_cd(const SieveCache& cache, const SemigroupPair& pair);

// Lambda-weighted and log p-weighted counts over the representable set.
double psi_cd(const SieveCache& cache, const SemigroupPair& pair);
double theta_cd(const SieveCache& cache, const SemigroupPair& pair);

struct ApDecomposition {
    double ap_sum = 0.0;
    double ap_discrepancy = 0.0;
    // Explicit bound for |ap_discrepancy|. Its two sides: prime powers
    // p^a <= g with p | c (dropped progressions), and diagonal prime powers
    // n = d*y in [d, d*(c-1)] (counted by the closed progression sums but
    // not by the half-open identity). The discrepancy equals the diagonal
    // mass minus the non-representable part of the first class, so this
    // bound is attained-or-better for every pair.
    double bound = 0.0;
};

// Decomposes psi_cd against psi(g) minus the arithmetic-progression tail
// sums. Needs the sieve to reach d*(c-1), the largest progression start.
ApDecomposition ap_decomposition(const SieveCache& cache,
                                 const SemigroupPair& pair);

// The same prime-power bound, exposed for reporting.
double ap_discrepancy_bound(const SemigroupPair& pair);

struct PartialSummation {
    u64 lhs = 0;     // pi_cd
    double rhs = 0.0;
    double gap = 0.0;
};

// Rebuilds pi_cd from theta_cd by exact piecewise integration of
// theta_cd(t) / (t log^2 t): the integrand is constant between consecutive
// representable primes and integrates to differences of -1/log t, so no
// quadrature tolerance enters.
PartialSummation partial_summation_check(const SieveCache& cache,
                                         const SemigroupPair& pair);

// Everything above for one pair.
CountReport count_report(const SieveCache& cache, const SemigroupPair& pair);

struct SweepRow {
    u64 c = 0;
    u64 d = 0;
    bool ok = false;
    std::string error;    // set when !ok
    CountReport report;   // valid when ok
};

// One report per pair, rows in input order; per-pair failures become row
// markers instead of aborting the sweep. Pairs are independent, so the
// sweep parallelizes over a shared read-only cache.
std::vector<SweepRow> ratio_sweep(const SieveCache& cache,
                                  const std::vector<SemigroupPair>& pairs,
                                  int threads = 1);

} // namespace fp
