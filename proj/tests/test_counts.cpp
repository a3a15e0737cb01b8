#include <doctest.h>

#include <cmath>
#include <random>

#include "fp/counts.hpp"
#include "oracles.hpp"

using fp::SemigroupPair;
using fp::SieveCache;
using fp::u64;

namespace {

const SieveCache& cache_1e5() {
    static SieveCache cache = SieveCache::build(100000);
    return cache;
}

std::vector<SemigroupPair> random_pairs(u64 count, u64 cd_max, u64 seed) {
    std::mt19937_64 rng(seed);
    std::vector<SemigroupPair> out;
    while (out.size() < count) {
        u64 c = 2 + rng() % (fp::isqrt_u64(cd_max) - 1);
        u64 dmax = cd_max / c;
        if (dmax <= c + 1) continue;
        u64 d = c + 1 + rng() % (dmax - c);
        if (fp::gcd_u64(c, d) != 1) continue;
        out.emplace_back(c, d);
    }
    return out;
}

// Exact decomposition residue, assembled from first principles: diagonal
// prime powers d*y (y <= c coprime to c) enter ap_sum against a half-open
// progression, and prime powers sharing a factor with c fall outside every
// progression while psi(g) still counts them when non-representable.
double discrepancy_oracle(const SemigroupPair& p) {
    double value = 0.0;
    for (u64 y = 1; y <= p.c(); ++y) {
        if (fp::gcd_u64(y, p.c()) != 1) continue;
        value += oracle::lambda_td(p.d() * y);
    }
    for (u64 n = 2; n <= p.g(); ++n) {
        if (fp::gcd_u64(n, p.c()) == 1) continue;
        if (p.is_representable(n)) continue;
        value -= oracle::lambda_td(n);
    }
    return value;
}

} // namespace

TEST_CASE("pi_cd: hand examples and the DP-oracle intersection") {
    const auto& cache = cache_1e5();
    CHECK(fp::pi_cd(cache, SemigroupPair(3, 5)) == 2);  // 3 and 5; not 2, 7
    CHECK(fp::pi_cd(cache, SemigroupPair(2, 3)) == 0);  // g = 1

    SemigroupPair p(11, 13);
    auto table = oracle::representable_table(11, 13, p.g());
    u64 brute = 0;
    for (u64 n = 2; n <= p.g(); ++n)
        if (table[n] && oracle::is_prime_td(n)) ++brute;
    CHECK(fp::pi_cd(cache, p) == brute);

    for (const auto& pr : random_pairs(20, 10000, 111)) {
        auto t = oracle::representable_table(pr.c(), pr.d(), pr.g());
        u64 want = 0;
        for (u64 n = 2; n <= pr.g(); ++n)
            if (t[n] && oracle::is_prime_td(n)) ++want;
        CHECK(fp::pi_cd(cache, pr) == want);
    }

    SemigroupPair too_big(401, 499);  // g = 199199 beyond this cache
    CHECK_THROWS_AS(fp::pi_cd(cache, too_big), fp::OutOfRange);
}

TEST_CASE("psi_cd and theta_cd: exact small values and the power gap") {
    const auto& cache = cache_1e5();
    double log3 = std::log(3.0), log5 = std::log(5.0);
    CHECK(fp::psi_cd(cache, SemigroupPair(3, 5)) ==
          doctest::Approx(log3 + log5).epsilon(1e-13));  // log 15
    CHECK(fp::psi_cd(cache, SemigroupPair(3, 5)) ==
          doctest::Approx(2.70805020110221).epsilon(1e-12));
    CHECK(fp::psi_cd(cache, SemigroupPair(2, 3)) == 0.0);
    CHECK(fp::theta_cd(cache, SemigroupPair(3, 5)) ==
          doctest::Approx(log3 + log5).epsilon(1e-13));

    // psi_cd - theta_cd = Lambda-mass of representable proper prime powers
    for (const auto& pr : random_pairs(15, 20000, 222)) {
        double gap = 0.0;
        for (const auto& [n, l] : oracle::prime_powers_td(pr.g()))
            if (!oracle::is_prime_td(n) && pr.is_representable(n)) gap += l;
        double got = fp::psi_cd(cache, pr) - fp::theta_cd(cache, pr);
        CHECK(got == doctest::Approx(gap).epsilon(1e-11));
    }
}

TEST_CASE("ap decomposition: the (3,5) hand enumeration") {
    const auto& cache = cache_1e5();
    auto ap = fp::ap_decomposition(cache, SemigroupPair(3, 5));
    // psi(5;3,5) = Lambda(2) + Lambda(5); psi(10;3,10) = Lambda(4) + Lambda(7)
    double expect = 2 * std::log(2.0) + std::log(5.0) + std::log(7.0);
    CHECK(ap.ap_sum == doctest::Approx(expect).epsilon(1e-13));
    // residue is exactly Lambda(5): the diagonal term d*1 = 5
    CHECK(ap.ap_discrepancy == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    // bound = floor(log_3 7) log 3 + floor(log_5 7) log 5
    CHECK(ap.bound ==
          doctest::Approx(std::log(3.0) + std::log(5.0)).epsilon(1e-13));
    CHECK(std::abs(ap.ap_discrepancy) <= ap.bound);
}

TEST_CASE("ap decomposition: (101,103) and (2,3)") {
    const auto& cache = cache_1e5();
    auto ap = fp::ap_decomposition(cache, SemigroupPair(101, 103));
    // only diagonal prime power is 103*1; 101 itself is representable
    CHECK(ap.ap_discrepancy == doctest::Approx(std::log(103.0)).epsilon(1e-11));
    CHECK(ap.bound ==
          doctest::Approx(std::log(101.0) + std::log(103.0)).epsilon(1e-12));
    CHECK(std::abs(ap.ap_discrepancy) <= ap.bound);

    auto tiny = fp::ap_decomposition(cache, SemigroupPair(2, 3));
    // g = 1: psi_cd = psi(g) = 0, ap_sum = psi(3;2,3) = Lambda(3)
    CHECK(tiny.ap_sum == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK(tiny.ap_discrepancy == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK(std::abs(tiny.ap_discrepancy) <= tiny.bound + 1e-12);
}

TEST_CASE("ap discrepancy equals its first-principles characterization") {
    const auto& cache = cache_1e5();
    for (const auto& pr : random_pairs(25, 20000, 333)) {
        auto ap = fp::ap_decomposition(cache, pr);
        double want = discrepancy_oracle(pr);
        CAPTURE(pr.c());
        CAPTURE(pr.d());
        CHECK(ap.ap_discrepancy == doctest::Approx(want).epsilon(1e-9));
        CHECK(std::abs(ap.ap_discrepancy) <= ap.bound + 1e-9);
    }
}

TEST_CASE("ap decomposition needs the sieve to reach d*(c-1)") {
    auto small = SieveCache::build(200);
    CHECK(SemigroupPair(11, 13).g() <= 200);
    CHECK_NOTHROW(fp::ap_decomposition(small, SemigroupPair(11, 13)));
    auto tighter = SieveCache::build(125);  // g = 119 fits, d*(c-1) = 130 not
    CHECK_THROWS_AS(fp::ap_decomposition(tighter, SemigroupPair(11, 13)),
                    fp::OutOfRange);
}

TEST_CASE("partial summation: two-prime closed form and degenerate cases") {
    const auto& cache = cache_1e5();
    auto ps = fp::partial_summation_check(cache, SemigroupPair(3, 5));
    CHECK(ps.lhs == 2);
    CHECK(ps.rhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ps.gap <= 1e-9);

    auto zero = fp::partial_summation_check(cache, SemigroupPair(2, 3));
    CHECK(zero.lhs == 0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.gap == 0.0);
}

TEST_CASE("partial summation gap stays at float noise across pairs") {
    const auto& cache = cache_1e5();
    for (const auto& pr : random_pairs(50, 100000, 444)) {
        auto ps = fp::partial_summation_check(cache, pr);
        CAPTURE(pr.c());
        CAPTURE(pr.d());
        CHECK(ps.gap <= 1e-9 * (double)ps.lhs + 1e-9);
    }
}

TEST_CASE("count_report: field consistency and complement identity") {
    const auto& cache = cache_1e5();
    auto r = fp::count_report(cache, SemigroupPair(3, 5));
    CHECK(r.pi_cd == 2);
    CHECK(r.pi_g == 4);
    CHECK(r.ratio_pi == 0.5);
    CHECK(r.err_scaled == 0.0);
    CHECK(r.psi_g == doctest::Approx(cache.psi(7)).epsilon(1e-15));

    for (const auto& pr : random_pairs(10, 50000, 555)) {
        auto rep = fp::count_report(cache, pr);
        CHECK(rep.pi_cd <= rep.pi_g);
        CHECK(rep.psi_cd <= rep.psi_g + 1e-9);
        CHECK(rep.ratio_pi ==
              doctest::Approx((double)rep.pi_cd / (double)rep.pi_g)
                  .epsilon(1e-12));
        CHECK(rep.ratio_psi ==
              doctest::Approx(2.0 * rep.psi_cd / (double)rep.g).epsilon(1e-12));
        CHECK(rep.ratio_pi >= 0.0);
        CHECK(rep.ratio_pi <= 1.0);
        CHECK(rep.ratio_psi >= 0.0);
        CHECK(rep.ratio_psi <= 2.0);

        // complement: representable + non-representable primes = all primes
        u64 nonrep = 0;
        cache.for_each_prime(2, pr.g(), [&](u64 p) {
            if (!pr.is_representable(p)) ++nonrep;
        });
        CHECK(rep.pi_cd + nonrep == rep.pi_g);
    }
}

TEST_CASE("ratio_sweep: ordering, empty input, and per-row errors") {
    const auto& cache = cache_1e5();
    std::vector<SemigroupPair> pairs{SemigroupPair(3, 5),
                                     SemigroupPair(401, 499),  // beyond cache
                                     SemigroupPair(11, 13)};
    auto rows = fp::ratio_sweep(cache, pairs, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ok);
    CHECK(rows[0].report.ratio_pi == 0.5);
    CHECK_FALSE(rows[1].ok);
    CHECK_FALSE(rows[1].error.empty());
    CHECK(rows[2].ok);
    CHECK(rows[2].c == 11);

    CHECK(fp::ratio_sweep(cache, {}, 4).empty());
}

TEST_CASE("ratio_sweep is thread-count independent") {
    const auto& cache = cache_1e5();
    auto pairs = random_pairs(12, 50000, 666);
    auto rows1 = fp::ratio_sweep(cache, pairs, 1);
    auto rows8 = fp::ratio_sweep(cache, pairs, 8);
    REQUIRE(rows1.size() == rows8.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].ok == rows8[i].ok);
        CHECK(rows1[i].report.pi_cd == rows8[i].report.pi_cd);
        // bitwise equality: reductions are order-fixed
        CHECK(rows1[i].report.psi_cd == rows8[i].report.psi_cd);
        CHECK(rows1[i].report.ap_sum == rows8[i].report.ap_sum);
    }
}
