#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fp/rational.hpp"
#include "fp/semigroup.hpp"
#include "fp/sieve.hpp"

namespace fp {

struct Interval {
    Rational lo;
    Rational hi;
    Rational length() const { return hi - lo; }
};

struct MajorArc {
    u64 a = 0;       // center a/q before shifting into the domain window
    u64 q = 1;
    Interval span;
    bool clamped = false;
};

// The major-arc family M(Q) realized as explicit intervals inside the
// window [(Q+1)/g, 1+(Q+1)/g), plus its sorted complement. All endpoints
// are exact rationals.
struct ArcPartition {
    u64 Q = 0;
    u64 g = 0;
    Rational domain_lo;               // window is [domain_lo, domain_lo + 1)
    std::vector<MajorArc> major;      // sorted by position
    std::vector<Interval> minor;      // sorted complement
    bool disjoint = true;             // no two major arcs overlap
    bool q_within_g_third = false;    // Q < (g/2)^(1/3), the disjointness provision
    bool q_within_c_third = false;    // Q < c^(1/3)
    std::vector<std::string> flags;

    double major_measure() const;
    double minor_measure() const;
};

ArcPartition build_arcs(const SemigroupPair& pair, u64 Q);

// Geometric sums G(beta, M) = sum_{j=0..M} e(j*beta), evaluated in the
// stable sin-quotient form; exact integer reduction for rational beta.
std::complex<double> geometric_sum(double beta, u64 M);
std::complex<double> geometric_sum_frac(i64 r, u64 den, u64 M);  // beta = r/den
std::complex<double> geometric_sum_rational(const Rational& beta, u64 M);

// h(alpha) = sum_{0<=x<=d, 0<=y<=c} e(alpha*(c*x+d*y)) as a product of two
// geometric sums.
std::complex<double> h_closed_form(const SemigroupPair& pair, double alpha);
std::complex<double> h_at(const SemigroupPair& pair, const Rational& alpha);

// f(alpha) = sum_{0<=n<=g} Lambda(n) e(alpha*n) by direct summation over
// prime powers with compensated accumulation.
std::complex<double> f_direct(const SieveCache& cache, const SemigroupPair& pair,
                              double alpha);
std::complex<double> f_at(const SieveCache& cache, const SemigroupPair& pair,
                          const Rational& alpha);

// f and h sampled on the uniform grid k/N, k = 0..N-1. f comes from one
// O(N log N) transform of the Lambda sequence, h from the closed form.
struct ExpSumGrid {
    u64 N = 0;
    u64 c = 0;
    u64 d = 0;
    u64 g = 0;
    std::vector<std::complex<double>> f_vals;
    std::vector<std::complex<double>> h_vals;
};

ExpSumGrid build_grid(const SieveCache& cache, const SemigroupPair& pair, u64 N,
                      int threads = 1);

// (1/N) sum_k f(k/N) h(-k/N). The integrand is a trigonometric polynomial
// with frequencies in [-2cd, g], so any N > g + 2cd makes the uniform rule
// exact and the result equals psi_cd up to floating error.
double circle_identity(const SieveCache& cache, const SemigroupPair& pair, u64 N,
                       int threads = 1);
double circle_identity_from_grid(const ExpSumGrid& grid, int threads = 1);

struct QuadratureResult {
    double value = 0.0;  // real part
    double imag = 0.0;
    u64 nodes = 0;
    std::vector<std::string> flags;
};

struct MajorArcResult {
    QuadratureResult total;
    std::vector<double> per_q;  // per_q[q] = real contribution at level q
};

// Composite midpoint of f(alpha) h(-alpha) over every major arc.
// points_per_arc = 0 picks 32 points per oscillation automatically;
// an explicit count must satisfy points_per_arc >= 8*ceil(span*length)
// for every arc or GridTooCoarse is thrown (span = g + 2cd).
MajorArcResult major_arc_integral(const SieveCache& cache,
                                  const SemigroupPair& pair,
                                  const ArcPartition& arcs, u64 points_per_arc,
                                  int threads = 1);

// Composite midpoint over the minor intervals; points_per_osc >= 8 scales
// the node count per unit bandwidth (32 is the house default).
QuadratureResult minor_arc_quadrature(const SieveCache& cache,
                                      const SemigroupPair& pair,
                                      const ArcPartition& arcs,
                                      u64 points_per_osc = 32, int threads = 1);

struct MinorSup {
    double sup_est = 0.0;  // max |f| over sampled minor-arc points
    double bound = 0.0;    // (g/sqrt(Q) + g^{4/5}) * (log g)^4
    std::vector<std::string> flags;
};

// Samples |f| at `samples` quasi-uniform points of the minor set plus all
// interval endpoints.
MinorSup minor_arc_sup(const SieveCache& cache, const SemigroupPair& pair,
                       const ArcPartition& arcs, u64 samples, int threads = 1);

struct KernelBound {
    double l1_h = 0.0;        // integral of |h(-alpha)| over the circle
    double kernel_int = 0.0;  // integral of min{d,1/||c a||} min{c,1/||d a||}
    double ratio_log2 = 0.0;  // l1_h / (log g)^2
    double h_max = 0.0;       // max |h| seen on the grid
    bool domination_ok = false;  // l1_h <= 1.05 * kernel_int
};

// Midpoint rule on grid_mult*c*d uniform points; the kernel varies at
// scale 1/(c*d), so grid_mult >= 16 resolves it.
KernelBound kernel_bound_integral(const SemigroupPair& pair, u64 grid_mult,
                                  int threads = 1);

// f(theta) minus the full geometric sum sum_{0<=n<=g} e(n*theta): the
// residual sum_{n<=g} (Lambda(n)-1) e(n*theta).
std::complex<double> pnt_residual(const SieveCache& cache,
                                  const SemigroupPair& pair, double theta);

} // namespace fp
