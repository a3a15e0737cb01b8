#include "fp/circle.hpp"

#include <algorithm>
#include <cmath>

#include "fp/fft.hpp"
#include "fp/kahan.hpp"
#include "fp/parallel.hpp"

namespace fp {

namespace {

using cd_t = std::complex<double>;

constexpr double kPi = 3.1415926535897932384626433832795;

i128 ceil_div(i128 n, i128 d) {  // d > 0
    return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

std::vector<PrimePowerStream::Entry> collect_prime_powers(
    const SieveCache& cache, u64 bound) {
    std::vector<PrimePowerStream::Entry> pp;
    PrimePowerStream stream(cache, bound);
    while (auto e = stream.next()) pp.push_back(*e);
    return pp;
}

cd_t f_over(const std::vector<PrimePowerStream::Entry>& pp,
            const Rational& alpha) {
    KahanComplex acc;
    for (const auto& e : pp) {
        cd_t ph = unit_phase_times(alpha, e.n);
        acc.add({e.log_p * ph.real(), e.log_p * ph.imag()});
    }
    return acc.value();
}

} // namespace

// --------------------------------------------------------------------------
// Geometric sums

// All three variants share the stable form
//   G(beta, M) = e(M*beta/2) * sin(pi*(M+1)*beta) / sin(pi*beta)
// with beta reduced to (-1/2, 1/2]. The quotient is well conditioned for
// every beta != 0; the integer/rational variants reduce the big sine
// arguments mod 2 exactly before any float multiply. Near the singularity
// the factor switches to M+1 below 1e-9 and to a second-order series on
// [1e-9, 1e-6] when the series actually converges fast.
namespace {

cd_t geometric_phase_and_value(double beta, double num_angle, double phase_angle,
                               u64 M) {
    double ab = std::abs(beta);
    cd_t phase(std::cos(phase_angle), std::sin(phase_angle));
    if (ab <= 1e-6 && (double)(M + 1) * ab < 1e-3) {
        double mm = (double)(M + 1);
        double corr = 1.0 - (kPi * kPi / 6.0) * (mm * mm - 1.0) * beta * beta;
        return phase * (mm * corr);
    }
    double snum = std::sin(num_angle);
    double sden = std::sin(kPi * beta);
    return phase * (snum / sden);
}

} // namespace

cd_t geometric_sum(double beta, u64 M) {
    double bstar = std::remainder(beta, 1.0);
    if (std::abs(bstar) < 1e-9) return {(double)(M + 1), 0.0};
    long double t1 = fmodl((long double)(M + 1) * bstar, 2.0L);
    long double t2 = fmodl((long double)M * bstar, 2.0L);
    return geometric_phase_and_value(bstar, (double)(kPi * (double)t1),
                                     (double)(kPi * (double)t2), M);
}

cd_t geometric_sum_frac(i64 r, u64 den, u64 M) {
    i64 rr = r % (i64)den;
    if (rr < 0) rr += (i64)den;
    if (rr == 0) return {(double)(M + 1), 0.0};
    i64 rt = ((u64)rr > den / 2) ? rr - (i64)den : rr;
    double beta = (double)rt / (double)den;
    if (std::abs(beta) < 1e-9) return {(double)(M + 1), 0.0};
    i128 twoden = (i128)2 * (i128)den;
    i128 m1 = ((i128)(i64)(M + 1) * rt) % twoden;
    i128 m2 = ((i128)(i64)M * rt) % twoden;
    double a1 = kPi * (double)((long double)m1 / (long double)den);
    double a2 = kPi * (double)((long double)m2 / (long double)den);
    return geometric_phase_and_value(beta, a1, a2, M);
}

cd_t geometric_sum_rational(const Rational& b, u64 M) {
    Rational f = b.mod1();
    if (f.num == 0) return {(double)(M + 1), 0.0};
    i128 num = f.num;
    i128 den = f.den;
    if (2 * num > den) num -= den;  // (-1/2, 1/2]
    double beta = (double)((long double)num / (long double)den);
    if (std::abs(beta) < 1e-9) return {(double)(M + 1), 0.0};
    i128 twoden = 2 * den;
    i128 m1 = ((i128)(i64)(M + 1) * num) % twoden;
    i128 m2 = ((i128)(i64)M * num) % twoden;
    double a1 = kPi * (double)((long double)m1 / (long double)den);
    double a2 = kPi * (double)((long double)m2 / (long double)den);
    return geometric_phase_and_value(beta, a1, a2, M);
}

// --------------------------------------------------------------------------
// f and h point evaluations

cd_t h_closed_form(const SemigroupPair& pair, double alpha) {
    double bc = (double)fmodl((long double)pair.c() * alpha, 1.0L);
    double bd = (double)fmodl((long double)pair.d() * alpha, 1.0L);
    return geometric_sum(bc, pair.d()) * geometric_sum(bd, pair.c());
}

cd_t h_at(const SemigroupPair& pair, const Rational& alpha) {
    Rational bc(alpha.num * (i128)pair.c(), alpha.den);
    Rational bd(alpha.num * (i128)pair.d(), alpha.den);
    return geometric_sum_rational(bc, pair.d()) *
           geometric_sum_rational(bd, pair.c());
}

cd_t f_direct(const SieveCache& cache, const SemigroupPair& pair, double alpha) {
    if (pair.g() > cache.limit())
        throw OutOfRange("f evaluation beyond sieve limit");
    KahanComplex acc;
    PrimePowerStream stream(cache, pair.g());
    while (auto e = stream.next()) {
        double t = (double)fmodl((long double)alpha * e->n, 1.0L);
        double ang = kTwoPi * t;
        acc.add({e->log_p * std::cos(ang), e->log_p * std::sin(ang)});
    }
    return acc.value();
}

cd_t f_at(const SieveCache& cache, const SemigroupPair& pair,
          const Rational& alpha) {
    if (pair.g() > cache.limit())
        throw OutOfRange("f evaluation beyond sieve limit");
    auto pp = collect_prime_powers(cache, pair.g());
    return f_over(pp, alpha);
}

// --------------------------------------------------------------------------
// Grid + circle identity

ExpSumGrid build_grid(const SieveCache& cache, const SemigroupPair& pair, u64 N,
                      int threads) {
    if (N < 1) throw InvalidConfig("grid size N must be >= 1");
    if (pair.g() > cache.limit())
        throw OutOfRange("grid build beyond sieve limit");

    ExpSumGrid grid;
    grid.N = N;
    grid.c = pair.c();
    grid.d = pair.d();
    grid.g = pair.g();

    // Lambda sequence folded mod N (N > g in the exact-identity regime, in
    // which case this is plain zero padding), then one length-N transform.
    std::vector<cd_t> coeff(N, cd_t(0.0, 0.0));
    {
        PrimePowerStream stream(cache, pair.g());
        while (auto e = stream.next())
            coeff[e->n % N] += cd_t(e->log_p, 0.0);
    }
    grid.f_vals = dft_unit_circle(coeff);

    grid.h_vals.resize(N);
    const u64 block = 8192;
    const u64 nblocks = (N + block - 1) / block;
    parallel_chunks(nblocks, threads, [&](std::size_t b) {
        u64 k0 = (u64)b * block;
        u64 k1 = std::min(N, k0 + block);
        for (u64 k = k0; k < k1; ++k) {
            u64 rc = (u64)((u128)grid.c * k % N);
            u64 rd = (u64)((u128)grid.d * k % N);
            grid.h_vals[k] = geometric_sum_frac((i64)rc, N, grid.d) *
                             geometric_sum_frac((i64)rd, N, grid.c);
        }
    });
    return grid;
}

double circle_identity_from_grid(const ExpSumGrid& grid, int threads) {
    u128 span = (u128)grid.g + 2 * (u128)grid.c * grid.d;
    if ((u128)grid.N <= span)
        throw GridTooCoarse(
            "circle identity needs N > g + 2cd (frequency span of f*h)");

    // h has real coefficients, so h(-k/N) = conj(h(k/N)).
    const u64 block = 8192;
    const u64 nblocks = (grid.N + block - 1) / block;
    std::vector<cd_t> partial(nblocks);
    parallel_chunks(nblocks, threads, [&](std::size_t b) {
        u64 k0 = (u64)b * block;
        u64 k1 = std::min(grid.N, k0 + block);
        KahanComplex acc;
        for (u64 k = k0; k < k1; ++k)
            acc.add(grid.f_vals[k] * std::conj(grid.h_vals[k]));
        partial[b] = acc.value();
    });
    KahanComplex total;
    for (const auto& p : partial) total.add(p);
    return total.value().real() / (double)grid.N;
}

double circle_identity(const SieveCache& cache, const SemigroupPair& pair,
                       u64 N, int threads) {
    u128 span = (u128)pair.g() + 2 * (u128)pair.c() * pair.d();
    if ((u128)N <= span)
        throw GridTooCoarse(
            "circle identity needs N > g + 2cd (frequency span of f*h)");
    ExpSumGrid grid = build_grid(cache, pair, N, threads);
    return circle_identity_from_grid(grid, threads);
}

// --------------------------------------------------------------------------
// Arc partition

double ArcPartition::major_measure() const {
    KahanSum s;
    for (const auto& arc : major) s.add(arc.span.length().to_double());
    return s.value();
}

double ArcPartition::minor_measure() const {
    KahanSum s;
    for (const auto& iv : minor) s.add(iv.length().to_double());
    return s.value();
}

ArcPartition build_arcs(const SemigroupPair& pair, u64 Q) {
    if (Q < 1) throw InvalidConfig("arc partition needs Q >= 1");

    ArcPartition part;
    part.Q = Q;
    part.g = pair.g();
    part.domain_lo = Rational((i128)Q + 1, (i128)part.g);
    const Rational domain_hi = part.domain_lo + Rational::integer(1);
    part.q_within_g_third = (u128)2 * Q * Q * Q < part.g;
    part.q_within_c_third = (u128)Q * Q * Q < pair.c();
    if (!part.q_within_g_third)
        part.flags.push_back("Q_at_or_above_(g/2)^(1/3)");
    if (!part.q_within_c_third) part.flags.push_back("Q_at_or_above_c^(1/3)");

    bool any_clamped = false;
    for (u64 q = 1; q <= Q; ++q) {
        for (u64 a = 1; a <= q; ++a) {
            if (gcd_u64(a, q) != 1) continue;
            Rational center((i128)a, (i128)q);
            Rational diff = part.domain_lo - center;
            i128 shift = ceil_div(diff.num, diff.den);
            Rational c_sh = center + Rational::integer(shift);
            Rational w((i128)Q, (i128)q * part.g);

            MajorArc arc;
            arc.a = a;
            arc.q = q;
            arc.span.lo = c_sh - w;
            arc.span.hi = c_sh + w;
            if (arc.span.lo < part.domain_lo) {
                arc.span.lo = part.domain_lo;
                arc.clamped = true;
            }
            if (arc.span.hi > domain_hi) {
                arc.span.hi = domain_hi;
                arc.clamped = true;
            }
            any_clamped = any_clamped || arc.clamped;
            part.major.push_back(arc);
        }
    }
    if (any_clamped) part.flags.push_back("arc_clamped_to_domain");

    std::sort(part.major.begin(), part.major.end(),
              [](const MajorArc& x, const MajorArc& y) {
                  return x.span.lo < y.span.lo;
              });

    for (std::size_t i = 0; i + 1 < part.major.size(); ++i) {
        if (part.major[i + 1].span.lo < part.major[i].span.hi) {
            part.disjoint = false;
            part.flags.push_back("major_arcs_overlap");
            break;
        }
    }

    Rational pos = part.domain_lo;
    for (const auto& arc : part.major) {
        if (pos < arc.span.lo) part.minor.push_back({pos, arc.span.lo});
        if (pos < arc.span.hi) pos = arc.span.hi;
    }
    if (pos < domain_hi) part.minor.push_back({pos, domain_hi});
    return part;
}

// --------------------------------------------------------------------------
// Arc quadrature

namespace {

// Midpoint rule with exact rational nodes over one interval.
cd_t midpoint_fh(const std::vector<PrimePowerStream::Entry>& pp,
                 const SemigroupPair& pair, const Interval& iv, u64 pts) {
    Rational len = iv.length();
    if (len.num == 0 || pts == 0) return {0.0, 0.0};
    KahanComplex acc;
    for (u64 j = 0; j < pts; ++j) {
        Rational node = iv.lo + len * Rational(2 * (i128)j + 1, 2 * (i128)pts);
        acc.add(f_over(pp, node) * std::conj(h_at(pair, node)));
    }
    cd_t s = acc.value();
    double wgt = len.to_double() / (double)pts;
    return {s.real() * wgt, s.imag() * wgt};
}

u64 oscillations(const u128 span, const Interval& iv) {
    Rational len = iv.length();
    if (len.num == 0) return 0;
    i128 c = ceil_div((i128)span * len.num, len.den);
    return c < 1 ? 1 : (u64)c;
}

} // namespace

MajorArcResult major_arc_integral(const SieveCache& cache,
                                  const SemigroupPair& pair,
                                  const ArcPartition& arcs, u64 points_per_arc,
                                  int threads) {
    if (arcs.g != pair.g())
        throw InvalidConfig("arc partition was built for a different pair");
    if (pair.g() > cache.limit())
        throw OutOfRange("major arc integral beyond sieve limit");
    const u128 span = (u128)pair.g() + 2 * (u128)pair.c() * pair.d();

    std::vector<u64> pts(arcs.major.size(), 0);
    for (std::size_t i = 0; i < arcs.major.size(); ++i) {
        u64 osc = oscillations(span, arcs.major[i].span);
        if (osc == 0) continue;  // clamped-away arc
        if (points_per_arc == 0) {
            pts[i] = std::max<u64>(16, 32 * osc);
        } else {
            if (points_per_arc < 8 * osc)
                throw GridTooCoarse(
                    "points_per_arc below 8 per oscillation on an arc");
            pts[i] = points_per_arc;
        }
    }

    auto pp = collect_prime_powers(cache, pair.g());
    std::vector<cd_t> vals(arcs.major.size(), cd_t(0.0, 0.0));
    parallel_chunks(arcs.major.size(), threads, [&](std::size_t i) {
        vals[i] = midpoint_fh(pp, pair, arcs.major[i].span, pts[i]);
    });

    MajorArcResult out;
    out.per_q.assign(arcs.Q + 1, 0.0);
    KahanComplex total;
    u64 nodes = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        total.add(vals[i]);
        out.per_q[arcs.major[i].q] += vals[i].real();
        nodes += pts[i];
    }
    cd_t t = total.value();
    out.total.value = t.real();
    out.total.imag = t.imag();
    out.total.nodes = nodes;
    if (std::abs(t.imag()) > 1e-6 * (double)pair.g())
        out.total.flags.push_back("imaginary_part_large");
    return out;
}

QuadratureResult minor_arc_quadrature(const SieveCache& cache,
                                      const SemigroupPair& pair,
                                      const ArcPartition& arcs,
                                      u64 points_per_osc, int threads) {
    if (arcs.g != pair.g())
        throw InvalidConfig("arc partition was built for a different pair");
    if (points_per_osc < 8)
        throw GridTooCoarse("minor quadrature needs >= 8 points per oscillation");
    if (pair.g() > cache.limit())
        throw OutOfRange("minor arc quadrature beyond sieve limit");
    const u128 span = (u128)pair.g() + 2 * (u128)pair.c() * pair.d();

    auto pp = collect_prime_powers(cache, pair.g());
    std::vector<cd_t> vals(arcs.minor.size(), cd_t(0.0, 0.0));
    std::vector<u64> pts(arcs.minor.size(), 0);
    for (std::size_t i = 0; i < arcs.minor.size(); ++i) {
        u64 osc = oscillations(span, arcs.minor[i]);
        if (osc > 0) pts[i] = std::max<u64>(4, points_per_osc * osc);
    }
    parallel_chunks(arcs.minor.size(), threads, [&](std::size_t i) {
        vals[i] = midpoint_fh(pp, pair, arcs.minor[i], pts[i]);
    });

    QuadratureResult out;
    KahanComplex total;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        total.add(vals[i]);
        out.nodes += pts[i];
    }
    cd_t t = total.value();
    out.value = t.real();
    out.imag = t.imag();
    if (arcs.minor.empty()) out.flags.push_back("empty_minor_set");
    return out;
}

MinorSup minor_arc_sup(const SieveCache& cache, const SemigroupPair& pair,
                       const ArcPartition& arcs, u64 samples, int threads) {
    MinorSup out;
    double g = (double)pair.g();
    double lg = std::log(std::max(2.0, g));
    out.bound = (g / std::sqrt((double)arcs.Q) + std::pow(g, 0.8)) *
                std::pow(lg, 4.0);
    if (arcs.minor.empty()) {
        out.flags.push_back("empty_minor_set");
        return out;
    }
    if (pair.g() > cache.limit())
        throw OutOfRange("minor arc sup beyond sieve limit");

    auto pp = collect_prime_powers(cache, pair.g());

    // Interval endpoints plus `samples` points spread proportionally to
    // length. Placement uses doubles; the node itself is rebuilt as an
    // exact rational inside its interval (denominator 2^30).
    std::vector<Rational> nodes;
    nodes.reserve(arcs.minor.size() * 2 + samples);
    std::vector<double> cum(arcs.minor.size() + 1, 0.0);
    for (std::size_t i = 0; i < arcs.minor.size(); ++i) {
        nodes.push_back(arcs.minor[i].lo);
        nodes.push_back(arcs.minor[i].hi);
        cum[i + 1] = cum[i] + arcs.minor[i].length().to_double();
    }
    const double L = cum.back();
    const i128 snap = (i128)1 << 30;
    for (u64 j = 0; j < samples; ++j) {
        double posd = L * (2.0 * (double)j + 1.0) / (2.0 * (double)samples);
        std::size_t idx =
            (std::size_t)(std::upper_bound(cum.begin(), cum.end(), posd) -
                          cum.begin());
        idx = idx == 0 ? 0 : idx - 1;
        if (idx >= arcs.minor.size()) idx = arcs.minor.size() - 1;
        double len = cum[idx + 1] - cum[idx];
        double frac = len > 0.0 ? (posd - cum[idx]) / len : 0.5;
        i128 t = (i128)(frac * (double)snap);
        if (t < 0) t = 0;
        if (t >= snap) t = snap - 1;
        nodes.push_back(arcs.minor[idx].lo +
                        arcs.minor[idx].length() * Rational(t, snap));
    }

    const u64 block = 256;
    const u64 nblocks = ((u64)nodes.size() + block - 1) / block;
    std::vector<double> maxima(nblocks, 0.0);
    parallel_chunks(nblocks, threads, [&](std::size_t b) {
        u64 k0 = (u64)b * block;
        u64 k1 = std::min<u64>(nodes.size(), k0 + block);
        double m = 0.0;
        for (u64 k = k0; k < k1; ++k)
            m = std::max(m, std::abs(f_over(pp, nodes[k])));
        maxima[b] = m;
    });
    for (double m : maxima) out.sup_est = std::max(out.sup_est, m);
    return out;
}

// --------------------------------------------------------------------------
// Kernel bound and PNT residual

KernelBound kernel_bound_integral(const SemigroupPair& pair, u64 grid_mult,
                                  int threads) {
    if (grid_mult < 16)
        throw InvalidConfig("kernel integral needs grid_mult >= 16");
    u128 mp = (u128)grid_mult * pair.c() * pair.d();
    if (mp > ((u128)1 << 31))
        throw LimitTooLarge("kernel grid beyond 2^31 points");
    const u64 M = (u64)mp;
    const u64 twoM = 2 * M;
    const u64 c = pair.c();
    const u64 d = pair.d();

    struct Block {
        double l1 = 0.0;
        double ker = 0.0;
        double hmax = 0.0;
    };
    const u64 block = 1u << 16;
    const u64 nblocks = (M + block - 1) / block;
    std::vector<Block> parts(nblocks);
    parallel_chunks(nblocks, threads, [&](std::size_t b) {
        u64 j0 = (u64)b * block;
        u64 j1 = std::min(M, j0 + block);
        KahanSum l1, ker;
        double hmax = 0.0;
        for (u64 j = j0; j < j1; ++j) {
            u64 t = 2 * j + 1;  // node (2j+1)/(2M)
            u64 rc = (u64)((u128)c * t % twoM);
            u64 rd = (u64)((u128)d * t % twoM);
            double habs = std::abs(geometric_sum_frac((i64)rc, twoM, d)) *
                          std::abs(geometric_sum_frac((i64)rd, twoM, c));
            l1.add(habs);
            hmax = std::max(hmax, habs);
            u64 distc = std::min(rc, twoM - rc);
            u64 distd = std::min(rd, twoM - rd);
            double k1 = ((u128)d * distc <= twoM) ? (double)d
                                                  : (double)twoM / (double)distc;
            double k2 = ((u128)c * distd <= twoM) ? (double)c
                                                  : (double)twoM / (double)distd;
            ker.add(k1 * k2);
        }
        parts[b] = {l1.value(), ker.value(), hmax};
    });

    KahanSum l1, ker;
    KernelBound out;
    for (const auto& p : parts) {
        l1.add(p.l1);
        ker.add(p.ker);
        out.h_max = std::max(out.h_max, p.hmax);
    }
    out.l1_h = l1.value() / (double)M;
    out.kernel_int = ker.value() / (double)M;
    double lg = std::log((double)pair.g());
    out.ratio_log2 = pair.g() >= 2 ? out.l1_h / (lg * lg) : 0.0;
    out.domination_ok = out.l1_h <= 1.05 * out.kernel_int;
    return out;
}

cd_t pnt_residual(const SieveCache& cache, const SemigroupPair& pair,
                  double theta) {
    return f_direct(cache, pair, theta) - geometric_sum(theta, pair.g());
}

} // namespace fp
