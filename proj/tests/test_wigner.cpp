#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "oracle_wigner.hpp"
#include "wigner.hpp"

using fockpulse::DomainError;
using fockpulse::HalfInt;
using fockpulse::SymbolValue;
using fockpulse::wigner_3j;
using fockpulse::wigner_6j;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

SymbolValue w3(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    return wigner_3j(h(tj1), h(tj2), h(tj3), h(tm1), h(tm2), h(tm3));
}

SymbolValue w6(int a, int b, int c, int d, int e, int f) {
    return wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
}

// Random valid (j, m) triple with all j <= jmax.
struct Triple {
    int tj[3];
    int tm[3];
};

Triple random_3j_args(std::mt19937& rng, int twice_jmax) {
    std::uniform_int_distribution<int> jdist(0, twice_jmax);
    Triple t{};
    for (int i = 0; i < 3; ++i) t.tj[i] = jdist(rng);
    for (int i = 0; i < 3; ++i) {
        std::uniform_int_distribution<int> mdist(0, t.tj[i]);
        t.tm[i] = -t.tj[i] + 2 * mdist(rng);
    }
    return t;
}

// Random triple that satisfies the triangle rule and m1+m2+m3 = 0, so most
// draws hit a nonzero symbol.
Triple random_coupled_3j_args(std::mt19937& rng, int twice_jmax) {
    std::uniform_int_distribution<int> jdist(0, twice_jmax);
    while (true) {
        Triple t{};
        t.tj[0] = jdist(rng);
        t.tj[1] = jdist(rng);
        const int lo = std::abs(t.tj[0] - t.tj[1]);
        const int hi = std::min(t.tj[0] + t.tj[1], twice_jmax);
        if (lo > hi) continue;
        std::uniform_int_distribution<int> j3dist(0, (hi - lo) / 2);
        t.tj[2] = lo + 2 * j3dist(rng);
        std::uniform_int_distribution<int> m1dist(0, t.tj[0]);
        std::uniform_int_distribution<int> m2dist(0, t.tj[1]);
        t.tm[0] = -t.tj[0] + 2 * m1dist(rng);
        t.tm[1] = -t.tj[1] + 2 * m2dist(rng);
        t.tm[2] = -t.tm[0] - t.tm[1];
        if (std::abs(t.tm[2]) > t.tj[2]) continue;
        return t;
    }
}

// Random 6j arguments with all four triads valid.
std::array<int, 6> random_coupled_6j_args(std::mt19937& rng, int twice_jmax) {
    std::uniform_int_distribution<int> jdist(0, twice_jmax);
    auto pick_in_triangle = [&](int ta, int tb) -> int {
        const int lo = std::abs(ta - tb);
        const int hi = std::min(ta + tb, twice_jmax);
        if (lo > hi) return -1;
        std::uniform_int_distribution<int> d(0, (hi - lo) / 2);
        return lo + 2 * d(rng);
    };
    while (true) {
        const int a = jdist(rng), b = jdist(rng), d = jdist(rng), e = jdist(rng);
        const int c = pick_in_triangle(a, b);  // triad (a b c)
        if (c < 0 || !fockpulse::triangle_ok(h(d), h(e), h(c))) continue;
        const int f = pick_in_triangle(a, e);  // triad (a e f)
        if (f < 0 || !fockpulse::triangle_ok(h(d), h(b), h(f))) continue;
        return {a, b, c, d, e, f};
    }
}

} // namespace

TEST_CASE("3j selection-rule zeros are exact") {
    auto r = w3(2, 2, 2, 2, 2, 2); // m-sum = 3 != 0
    CHECK(r.is_exact_zero);
    CHECK(r.value == 0.0);

    r = w3(2, 2, 10, 0, 0, 0); // triangle violated (1,1,5)
    CHECK(r.is_exact_zero);

    // Regge-type zero: odd perimeter with all m = 0 cancels inside the sum.
    r = w3(2, 2, 2, 0, 0, 0); // (1,1,1;0,0,0)
    CHECK(r.is_exact_zero);
    CHECK(r.value == 0.0);
}

TEST_CASE("3j frozen exact values") {
    // (1 1 0; 0 0 0) = -1/sqrt(3)
    CHECK(w3(2, 2, 0, 0, 0, 0).value == doctest::Approx(-0.57735026918962576451).epsilon(1e-14));
    // (2 1 3; -2 1 1) = +1/sqrt(105), used in the F=2 -> F'=3 pump table
    auto r = w3(4, 2, 6, -4, 2, 2);
    CHECK(!r.is_exact_zero);
    CHECK(r.value == doctest::Approx(0.097590007294853317935).epsilon(1e-14));
    // (2 1 3; 0 0 0) = -sqrt(105)/35
    CHECK(w3(4, 2, 6, 0, 0, 0).value == doctest::Approx(-0.29277002188455995381).epsilon(1e-14));
    // (2 1 3; 2 1 -3) = 1/sqrt(7)
    CHECK(w3(4, 2, 6, 4, 2, -6).value == doctest::Approx(0.37796447300922722721).epsilon(1e-14));
    // (1/2 1/2 1; 1/2 1/2 -1) = -1/sqrt(3)
    CHECK(w3(1, 1, 2, 1, 1, -2).value == doctest::Approx(-0.57735026918962576451).epsilon(1e-14));
    // (3/2 1 5/2; 1/2 1 -3/2) = 1/sqrt(10)
    CHECK(w3(3, 2, 5, 1, 2, -3).value == doctest::Approx(0.31622776601683793320).epsilon(1e-14));
    // (4 1 5; -4 1 3) = sqrt(55)/165
    CHECK(w3(8, 2, 10, -8, 2, 6).value == doctest::Approx(0.044946657497549472416).epsilon(1e-14));
    // (5 5 5; 3 -4 1) = -sqrt(715)/286
    CHECK(w3(10, 10, 10, 6, -8, 2).value == doctest::Approx(-0.093494699000845717781).epsilon(1e-14));
}

TEST_CASE("6j frozen exact values and triangle zeros") {
    // {1/2 1/2 2; 1/2 1/2 0}: triad (1/2,1/2,2) violates the triangle rule
    auto r = w6(1, 1, 4, 1, 1, 0);
    CHECK(r.is_exact_zero);
    CHECK(r.value == 0.0);

    // {1/2 3/2 1; 3 2 3/2} = sqrt(5)/10, common factor of the Rb tables
    r = w6(1, 3, 2, 6, 4, 3);
    CHECK(!r.is_exact_zero);
    CHECK(r.value == doctest::Approx(0.22360679774997896964).epsilon(1e-14));

    // {1 1 1; 1 1 1} = 1/6
    CHECK(w6(2, 2, 2, 2, 2, 2).value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // {1/2 3/2 1; 5 4 7/2} = 1/6 (Cs F=4 -> F'=5)
    CHECK(w6(1, 3, 2, 10, 8, 7).value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // {1/2 3/2 1; 2 3 7/2} = -sqrt(7)/14 (Cs F=3 -> F'=2)
    CHECK(w6(1, 3, 2, 4, 6, 7).value == doctest::Approx(-0.18898223650461361361).epsilon(1e-14));
    // {1 2 3; 3 2 1} = sqrt(14)/35
    CHECK(w6(2, 4, 6, 6, 4, 2).value == doctest::Approx(0.10690449676496975387).epsilon(1e-14));
    // {2 2 2; 2 2 2} = -3/70
    CHECK(w6(4, 4, 4, 4, 4, 4).value == doctest::Approx(-3.0 / 70.0).epsilon(1e-14));
    // {3 3 3; 3 3 3} = -1/14
    CHECK(w6(6, 6, 6, 6, 6, 6).value == doctest::Approx(-1.0 / 14.0).epsilon(1e-14));
}

TEST_CASE("malformed quantum numbers are domain errors") {
    CHECK_THROWS_AS(w3(2, 2, 2, 4, -2, -2), DomainError);  // |m| > j
    CHECK_THROWS_AS(w3(2, 2, 2, 1, 0, -1), DomainError);   // m parity mismatch
    CHECK_THROWS_AS(wigner_3j(h(-2), h(2), h(2), h(0), h(0), h(0)), DomainError);
    CHECK_THROWS_AS(w3(42, 2, 42, 0, 0, 0), DomainError);  // j > 20 unsupported
    CHECK_THROWS_AS(w6(-2, 2, 2, 2, 2, 2), DomainError);
    CHECK_THROWS_AS(w6(44, 2, 44, 2, 2, 2), DomainError);
}

TEST_CASE("3j matches the exact-rational oracle over random inputs") {
    std::mt19937 rng(20260810);
    int nonzero = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        // half unconstrained draws (to exercise the zero paths), half coupled
        const auto t = iter % 2 == 0 ? random_3j_args(rng, 10)
                                     : random_coupled_3j_args(rng, 10); // j <= 5
        const auto got = w3(t.tj[0], t.tj[1], t.tj[2], t.tm[0], t.tm[1], t.tm[2]);
        const auto want = oracle::three_j(t.tj[0], t.tj[1], t.tj[2], t.tm[0], t.tm[1], t.tm[2]);
        if (want.sign == 0) {
            CHECK(got.is_exact_zero);
            CHECK(got.value == 0.0);
        } else {
            ++nonzero;
            CHECK(!got.is_exact_zero);
            CHECK(got.value == doctest::Approx(want.to_double()).epsilon(1e-14));
        }
    }
    CHECK(nonzero > 200);
}

TEST_CASE("6j matches the exact-rational oracle over random inputs") {
    std::mt19937 rng(8376251);
    std::uniform_int_distribution<int> jdist(0, 10);
    int nonzero = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        std::array<int, 6> a;
        if (iter % 2 == 0) {
            for (auto& x : a) x = jdist(rng);
        } else {
            a = random_coupled_6j_args(rng, 10);
        }
        const auto got = w6(a[0], a[1], a[2], a[3], a[4], a[5]);
        const auto want = oracle::six_j(a[0], a[1], a[2], a[3], a[4], a[5]);
        if (want.sign == 0) {
            CHECK(got.is_exact_zero);
        } else {
            ++nonzero;
            CHECK(got.value == doctest::Approx(want.to_double()).epsilon(1e-14));
        }
    }
    CHECK(nonzero > 100);
}

TEST_CASE("3j column-permutation and m-flip symmetries") {
    std::mt19937 rng(424242);
    int checked = 0;
    while (checked < 1000) {
        const auto t = checked % 2 == 0 ? random_coupled_3j_args(rng, 10)
                                        : random_3j_args(rng, 10);
        const auto base = w3(t.tj[0], t.tj[1], t.tj[2], t.tm[0], t.tm[1], t.tm[2]);
        // even (cyclic) permutation: invariant
        const auto cyc = w3(t.tj[1], t.tj[2], t.tj[0], t.tm[1], t.tm[2], t.tm[0]);
        CHECK(cyc.value == doctest::Approx(base.value).epsilon(1e-12).scale(1.0));
        if ((t.tj[0] + t.tj[1] + t.tj[2]) % 2 == 0) {
            const int perimeter_half = (t.tj[0] + t.tj[1] + t.tj[2]) / 2;
            const double odd_phase = perimeter_half % 2 == 0 ? 1.0 : -1.0;
            // odd permutation: factor (-1)^(j1+j2+j3)
            const auto swapped = w3(t.tj[1], t.tj[0], t.tj[2], t.tm[1], t.tm[0], t.tm[2]);
            CHECK(swapped.value ==
                  doctest::Approx(odd_phase * base.value).epsilon(1e-12).scale(1.0));
            // sign flip of all m: same factor
            const auto flipped = w3(t.tj[0], t.tj[1], t.tj[2], -t.tm[0], -t.tm[1], -t.tm[2]);
            CHECK(flipped.value ==
                  doctest::Approx(odd_phase * base.value).epsilon(1e-12).scale(1.0));
        }
        ++checked;
    }
}

TEST_CASE("3j orthogonality in (m1, m2)") {
    // sum over m1, m2 of (2 j3 + 1) [3j]^2 = 1 for every valid (j3, m3)
    std::mt19937 rng(1729);
    std::uniform_int_distribution<int> jdist(0, 10);
    int done = 0;
    while (done < 60) {
        const int tj1 = jdist(rng);
        const int tj2 = jdist(rng);
        const int tj3 = jdist(rng);
        if (!fockpulse::triangle_ok(h(tj1), h(tj2), h(tj3))) continue;
        for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
            double total = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                const int tm2 = -tm3 - tm1;
                if (std::abs(tm2) > tj2) continue;
                const double v = w3(tj1, tj2, tj3, tm1, tm2, tm3).value;
                total += (tj3 + 1) * v * v;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
        ++done;
    }
}

TEST_CASE("6j symmetries: column permutations and pair swaps") {
    std::mt19937 rng(55501);
    int checked = 0;
    while (checked < 1000) {
        const auto a = random_coupled_6j_args(rng, 10);
        const auto base = w6(a[0], a[1], a[2], a[3], a[4], a[5]);
        // any permutation of the three columns
        const auto perm = w6(a[1], a[0], a[2], a[4], a[3], a[5]);
        CHECK(perm.value == doctest::Approx(base.value).epsilon(1e-12).scale(1.0));
        const auto cyc = w6(a[2], a[0], a[1], a[5], a[3], a[4]);
        CHECK(cyc.value == doctest::Approx(base.value).epsilon(1e-12).scale(1.0));
        // swap of upper/lower pairs in two columns
        const auto swap12 = w6(a[3], a[4], a[2], a[0], a[1], a[5]);
        CHECK(swap12.value == doctest::Approx(base.value).epsilon(1e-12).scale(1.0));
        const auto swap13 = w6(a[3], a[1], a[5], a[0], a[4], a[2]);
        CHECK(swap13.value == doctest::Approx(base.value).epsilon(1e-12).scale(1.0));
        ++checked;
    }
}
