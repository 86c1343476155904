#include "doctest.h"
#include "eisgeo/hecke.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace eisgeo;

namespace {

long divisor_sum(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

Mat2 random_gamma0(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> k(-2, 2);
    Mat2 m;
    for (int i = 0; i < 3; ++i) m = m * Mat2::of(1, k(rng), 0, 1) * Mat2::of(1, 0, p * k(rng), 1);
    return m;
}

ClosedGeodesic sample_geodesic(long D, long p, int cls, bool plus) {
    FieldData F = build_field(Int(D));
    NarrowClassGroup G = narrow_class_group(F);
    long r = choose_r(F, p).r;
    return rm_point(F, G, cls, p, plus ? r : -r);
}

} // namespace

TEST_CASE("sigma1") {
    CHECK(sigma1(1) == 1);
    CHECK(sigma1(6) == 12);
    CHECK(sigma1(28) == 56);
    for (long n = 1; n <= 60; ++n) CHECK(sigma1(n) == divisor_sum(n));
}

TEST_CASE("Delta_0(p) membership") {
    CHECK(in_delta0(Mat2::of(1, 0, 0, 2), 13));
    CHECK(in_delta0(Mat2::of(2, 5, 13, 33), 13));
    CHECK_FALSE(in_delta0(Mat2::of(13, 0, 0, 1), 13));
    CHECK_FALSE(in_delta0(Mat2::of(1, 0, 1, 2), 13));
    CHECK_FALSE(in_delta0(Mat2::of(0, 1, 1, 0), 13));
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> e(-9, 9);
    for (int i = 0; i < 300; ++i) {
        Mat2 m = Mat2::of(e(rng), e(rng), 5 * e(rng), e(rng));
        Mat2 g = random_gamma0(rng, 5);
        CHECK(in_delta0(m, 5) == in_delta0(m * g, 5));
    }
}

TEST_CASE("right cosets") {
    CHECK(right_cosets(1, 13).reps.size() == 1);
    CHECK(right_cosets(2, 13).reps.size() == 3);

    // brute force over det-2 matrices with entries bounded by 2
    std::vector<Mat2> all;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d) {
                    Mat2 m = Mat2::of(a, b, c, d);
                    if (m.det() == 2 && in_delta0(m, 13)) all.push_back(m);
                }
    std::vector<Mat2> distinct;
    for (const Mat2& m : all) {
        bool seen = false;
        for (const Mat2& y : distinct) seen = seen || same_right_coset(y, m, 2, 13);
        if (!seen) distinct.push_back(m);
    }
    CHECK(distinct.size() == 3);

    for (long p : {3L, 5L, 11L, 13L})
        for (long n = 1; n <= 30; ++n) {
            CosetSet S = right_cosets(n, p);
            for (const Mat2& y : S.reps) {
                CHECK(y.det() == n);
                CHECK(in_delta0(y, p));
            }
            for (std::size_t i = 0; i < S.reps.size(); ++i)
                for (std::size_t j = i + 1; j < S.reps.size(); ++j) CHECK_FALSE(same_right_coset(S.reps[i], S.reps[j], n, p));
            if (std::gcd(n, p) == 1) CHECK(static_cast<long>(S.reps.size()) == divisor_sum(n));
        }
}

TEST_CASE("double cosets partition the right cosets") {
    ClosedGeodesic Q = sample_geodesic(3, 13, 0, true);
    for (long n = 1; n <= 20; ++n) {
        CosetSet S = right_cosets(n, 13);
        DoubleCosetSet D = double_cosets(Q, S);
        CHECK(std::accumulate(D.orbit_sizes.begin(), D.orbit_sizes.end(), 0) == static_cast<int>(S.reps.size()));
        CHECK(D.reps.size() == D.orbit_sizes.size());
        std::set<int> image(D.permutation.begin(), D.permutation.end());
        CHECK(image.size() == S.reps.size());
        for (std::size_t i = 0; i < S.reps.size(); ++i)
            CHECK(same_right_coset(Q.gamma * S.reps[i], S.reps[D.permutation[i]], n, 13));
        if (n == 1) CHECK(D.reps.size() == 1);
    }
}

TEST_CASE("Hecke translates") {
    ClosedGeodesic Q = sample_geodesic(3, 13, 1, false);
    auto T1 = hecke_translate(Q, 1);
    REQUIRE(T1.size() == 1);
    CHECK(gamma0_equivalent(T1[0], Q));
    for (long n = 2; n <= 12; ++n)
        for (const ClosedGeodesic& T : hecke_translate(Q, n)) {
            CHECK_FALSE(is_square(T.disc()));
            CHECK(mod(Int(n * n) * Q.disc(), T.disc()) == 0);
            CHECK(mod(T.gamma.c, Int(13)) == 0);
            CHECK(mobius(T.gamma, ExtendedPoint(T.w())) == ExtendedPoint(T.w()));
        }
}

TEST_CASE("pairing: algorithms and representatives agree") {
    FieldData F = build_field(Int(6));
    NarrowClassGroup G = narrow_class_group(F);
    ClassCharacter psi = odd_characters(G).at(0);
    long r = choose_r(F, 5).r;
    TwistedCycle T = twisted_cycle(F, G, psi, 5, r);
    for (long n = 1; n <= 12; ++n) {
        Scalar v = pair_with_twisted_cycle(T, n, Algorithm::cycle);
        CHECK(v.is_exact());
        CHECK(v.rational().get_den() == 1);
        CHECK(pair_with_twisted_cycle(T, n, Algorithm::enumerate) == v);
        HeckeOptions shuffled;
        shuffled.shuffle_seed = 100 + n;
        CHECK(pair_with_twisted_cycle(T, n, Algorithm::cycle, shuffled) == v);
        CHECK(pair_with_twisted_cycle(T, n, Algorithm::enumerate, shuffled) == v);
    }
}

TEST_CASE("T_n is defined when p divides n") {
    ClosedGeodesic Q = sample_geodesic(6, 5, 0, true);
    for (long n : {5L, 10L, 25L}) {
        CosetSet S = right_cosets(n, 5);
        for (const Mat2& y : S.reps) CHECK(mod(y.d, Int(5)) == 0);
        for (const ClosedGeodesic& T : hecke_translate(Q, n))
            CHECK(intersect_winding(T, Algorithm::cycle) == intersect_winding(T, Algorithm::enumerate));
    }
}
