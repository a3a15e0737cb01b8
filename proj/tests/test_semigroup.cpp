#include <doctest.h>

#include <random>

#include "fp/semigroup.hpp"
#include "oracles.hpp"

using fp::SemigroupPair;
using fp::u64;

namespace {

// Deterministic coprime pair generator for property sweeps.
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

} // namespace

TEST_CASE("construction validates and precomputes g and d_inv") {
    SemigroupPair p(3, 5);
    CHECK(p.g() == 7);
    CHECK(p.d_inv() == 2);
    CHECK(5 * p.d_inv() % 3 == 1);

    SemigroupPair q(2, 3);
    CHECK(q.g() == 1);

    CHECK_THROWS_AS(SemigroupPair(4, 6), fp::NotCoprime);
    CHECK_THROWS_AS(SemigroupPair(5, 3), fp::BadOrder);
    CHECK_THROWS_AS(SemigroupPair(1, 5), fp::BadOrder);
    CHECK_THROWS_AS(SemigroupPair(3, 3), fp::BadOrder);

    for (const auto& pr : random_pairs(50, 1000000, 101)) {
        CHECK((fp::u128)pr.d() * pr.d_inv() % pr.c() == 1);
        CHECK(pr.d_inv() >= 1);
        CHECK(pr.d_inv() <= pr.c() - 1);
        CHECK(pr.g() == pr.c() * pr.d() - pr.c() - pr.d());
    }
}

TEST_CASE("membership: hand examples and the g boundary") {
    SemigroupPair p(3, 5);
    CHECK(p.is_representable(8));
    CHECK_FALSE(p.is_representable(7));  // g itself is never representable
    CHECK(p.is_representable(0));
    CHECK_FALSE(p.is_representable(1));
    CHECK_FALSE(p.is_representable(2));
    CHECK(p.is_representable(3));
    // everything past g is representable
    for (u64 n = p.g() + 1; n <= p.g() + 40; ++n) CHECK(p.is_representable(n));
}

TEST_CASE("membership agrees with the DP oracle") {
    SemigroupPair p(7, 11);
    auto table = oracle::representable_table(7, 11, p.g());
    for (u64 n = 0; n <= p.g(); ++n)
        CHECK(p.is_representable(n) == (bool)table[n]);

    for (const auto& pr : random_pairs(40, 10000, 202)) {
        u64 upto = pr.g() + 2 * pr.c();  // cross the boundary too
        auto t = oracle::representable_table(pr.c(), pr.d(), upto);
        for (u64 n = 0; n <= upto; ++n) {
            CAPTURE(pr.c());
            CAPTURE(pr.d());
            CAPTURE(n);
            REQUIRE(pr.is_representable(n) == (bool)t[n]);
        }
    }
}

TEST_CASE("representation returns the unique small-y witness") {
    SemigroupPair p(3, 5);
    auto r = p.representation(8);
    REQUIRE(r.has_value());
    CHECK(r->x == 1);
    CHECK(r->y == 1);
    r = p.representation(6);
    REQUIRE(r.has_value());
    CHECK(r->x == 2);
    CHECK(r->y == 0);
    CHECK_FALSE(p.representation(7).has_value());

    SemigroupPair q(11, 13);
    for (u64 n = 0; n <= q.g(); ++n) {
        auto w = q.representation(n);
        CHECK(w.has_value() == q.is_representable(n));
        if (w) {
            CHECK(11 * w->x + 13 * w->y == n);
            CHECK(w->y <= 10);
        }
    }
}

TEST_CASE("count_representable_upto: examples, brute force, and the half identity") {
    SemigroupPair p(3, 5);
    CHECK(p.count_representable_upto(7) == 4);  // 0, 3, 5, 6
    CHECK(p.count_representable_upto(0) == 1);
    SemigroupPair q(2, 3);
    CHECK(q.count_representable_upto(1) == 1);

    SemigroupPair big(101, 103);
    CHECK(big.count_representable_upto(big.g()) == (big.g() + 1) / 2);
    CHECK((big.g() + 1) / 2 == 5100);

    std::mt19937_64 rng(7);
    for (const auto& pr : random_pairs(25, 10000, 303)) {
        u64 upto = pr.g() + pr.c();
        auto t = oracle::representable_table(pr.c(), pr.d(), upto);
        u64 at = rng() % (upto + 1);
        u64 brute = 0;
        for (u64 n = 0; n <= at; ++n) brute += t[n];
        CHECK(pr.count_representable_upto(at) == brute);
        CHECK(pr.count_representable_upto(pr.g()) == (pr.g() + 1) / 2);
    }
}

TEST_CASE("Sylvester symmetry holds across random families") {
    CHECK(SemigroupPair(3, 5).sylvester_symmetry_holds());
    CHECK(SemigroupPair(2, 3).sylvester_symmetry_holds());
    for (const auto& pr : random_pairs(60, 1000000, 404))
        CHECK(pr.sylvester_symmetry_holds());
}

TEST_CASE("XOR form of the symmetry, streamed directly") {
    for (const auto& pr : random_pairs(10, 40000, 505)) {
        for (u64 s = 0; s <= pr.g(); ++s) {
            bool a = pr.is_representable(s);
            bool b = pr.is_representable(pr.g() - s);
            REQUIRE(a != b);
        }
    }
}

TEST_CASE("box representations are unique below g") {
    // #{(x,y) : 0<=x<=d, 0<=y<=c, cx+dy=n} is 0 or 1 for n <= g.
    for (const auto& pr : random_pairs(12, 10000, 606)) {
        std::vector<int> reps(pr.g() + 1, 0);
        for (u64 x = 0; x <= pr.d(); ++x) {
            u64 base = pr.c() * x;
            if (base > pr.g()) break;
            for (u64 y = 0; y <= pr.c(); ++y) {
                u64 n = base + pr.d() * y;
                if (n > pr.g()) break;
                reps[n]++;
            }
        }
        for (u64 n = 0; n <= pr.g(); ++n) {
            REQUIRE(reps[n] <= 1);
            REQUIRE((reps[n] == 1) == pr.is_representable(n));
        }
    }
}
