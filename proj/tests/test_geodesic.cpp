#include "doctest.h"
#include "eisgeo/errors.hpp"
#include "eisgeo/geodesic.hpp"

#include <algorithm>
#include <random>

using namespace eisgeo;

namespace {

Mat2 random_gamma0(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> k(-2, 2);
    Mat2 m;
    for (int i = 0; i < 3; ++i) m = m * Mat2::of(1, k(rng), 0, 1) * Mat2::of(1, 0, p * k(rng), 1);
    return m;
}

struct Setup {
    FieldData F;
    NarrowClassGroup G;
    explicit Setup(long D) : F(build_field(Int(D))), G(narrow_class_group(F)) {}
};

} // namespace

TEST_CASE("straddle table") {
    CHECK(straddle({ExtendedPoint(2L), ExtendedPoint(-1L)}) == 1);
    CHECK(straddle({ExtendedPoint(-1L), ExtendedPoint(2L)}) == -1);
    CHECK(straddle({ExtendedPoint(1L), ExtendedPoint(2L)}) == 0);
    CHECK(straddle({ExtendedPoint(-3L), ExtendedPoint(-2L)}) == 0);
    CHECK_THROWS_AS(straddle({ExtendedPoint(0L), ExtendedPoint(2L)}), NonTransverse);
}

TEST_CASE("straddle of a form's geodesic is sgn(a) when ac < 0") {
    for (QuadForm f : {QuadForm::of(3, 1, -2), QuadForm::of(-3, 1, 2), QuadForm::of(5, -7, -1), QuadForm::of(-2, 9, 4)}) {
        Geodesic g{ExtendedPoint(f.first_root()), ExtendedPoint(f.second_root())};
        CHECK(straddle(g) == sgn(f.a));
        CHECK(straddle({g.beta, g.alpha}) == -sgn(f.a));
    }
}

TEST_CASE("choose_r") {
    Setup s(3);
    RChoice c = choose_r(s.F, 13);
    CHECK(c.r == 8);
    CHECK(mod(Int(c.r * c.r) - s.F.dF, Int(52)) == 0);
    CHECK(c.N0 == 26);
    CHECK(c.eps_r == QuadIrr(Int(-8), Int(1), Int(2), Int(12)));
    // 18 also solves the congruence; the smallest root wins
    CHECK(mod(Int(18 * 18) - s.F.dF, Int(52)) == 0);
    CHECK_THROWS_AS(choose_r(s.F, 5), InertPrime);
    CHECK_THROWS_AS(choose_r(s.F, 3), DomainError);
    CHECK_THROWS_AS(choose_r(s.F, 9), DomainError);
    CHECK(choose_r(build_field(Int(6)), 5).r == 8);
    CHECK(choose_r(s.F, 11).r == 10);
    // brute-force oracle over r = 1..8p
    for (long D : {3L, 6L, 7L, 10L, 13L})
        for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
            FieldData F = build_field(Int(D));
            if (mod(F.dF, Int(p)) == 0) continue;
            long want = 0;
            for (long r = 1; r <= 8 * p && !want; ++r)
                if (mod(Int(r * r) - F.dF, Int(4 * p)) == 0 && Int(r * r) > F.dF) want = r;
            if (want)
                CHECK(choose_r(F, p).r == want);
            else
                CHECK_THROWS_AS(choose_r(F, p), InertPrime);
        }
}

TEST_CASE("rm points") {
    Setup s(3);
    long p = 13, r = 8;
    ClosedGeodesic base = make_closed_geodesic(base_rm_form(s.F, r), p);
    CHECK(base.form == QuadForm::of(13, -8, 1));
    CHECK(base.w() == QuadIrr(Int(8), Int(1), Int(26), Int(12)));
    ClosedGeodesic plus = rm_point(s.F, s.G, 0, p, r);
    CHECK(gamma0_equivalent(plus, base));
    ClosedGeodesic minus = rm_point(s.F, s.G, 0, p, -r);
    CHECK(gamma0_equivalent(minus, make_closed_geodesic(base_rm_form(s.F, -r), p)));
    // alpha_{-r} = -1/eps_{-r}
    QuadIrr eps_minus(Int(r), Int(1), Int(2), Int(12));
    CHECK(make_closed_geodesic(base_rm_form(s.F, -r), p).w() == QuadIrr(-1) / eps_minus);

    for (int c = 0; c < s.G.size(); ++c)
        for (long sr : {r, -r}) {
            ClosedGeodesic Q = rm_point(s.F, s.G, c, p, sr);
            CHECK(s.G.class_of(Q.form) == c);
            CHECK(mod(Q.form.a, Int(p)) == 0);
            CHECK(mod(Q.form.b + sr, Int(2 * p)) == 0);
            CHECK(Q.gamma.det() == 1);
            CHECK(mod(Q.gamma.c, Int(p)) == 0);
            CHECK(Q.gamma.trace() > 2);
            CHECK(mobius(Q.gamma, ExtendedPoint(Q.w())) == ExtendedPoint(Q.w()));
            CHECK(mobius(Q.gamma, ExtendedPoint(Q.w_sigma())) == ExtendedPoint(Q.w_sigma()));
        }
}

TEST_CASE("rm point depends only on the narrow class") {
    std::mt19937_64 rng(2);
    for (long D : {3L, 6L, 7L}) {
        Setup s(D);
        for (long p : {3L, 5L, 11L, 13L}) {
            if (mod(s.F.dF, Int(p)) == 0) continue;
            long r;
            try {
                r = choose_r(s.F, p).r;
            } catch (const InertPrime&) {
                continue;
            }
            for (int c = 0; c < s.G.size(); ++c)
                for (int i = 0; i < 4; ++i) {
                    Mat2 g = Mat2::of(1, static_cast<long>(rng() % 5) - 2, 0, 1) *
                             Mat2::of(1, 0, static_cast<long>(rng() % 5) - 2, 1);
                    QuadForm other = pullback(s.G.class_reps[c], g);
                    if (other.a == 0) continue;
                    CHECK(gamma0_equivalent(rm_point_from(other, p, r), rm_point(s.F, s.G, c, p, r)));
                    CHECK(gamma0_equivalent(rm_point_from(other, p, -r), rm_point(s.F, s.G, c, p, -r)));
                }
        }
    }
}

TEST_CASE("winding number: two algorithms, invariance, orientation") {
    std::mt19937_64 rng(4);
    for (auto [D, p] : std::vector<std::pair<long, long>>{{3, 13}, {3, 11}, {6, 5}, {7, 3}}) {
        Setup s(D);
        long r = choose_r(s.F, p).r;
        for (int c = 0; c < s.G.size(); ++c)
            for (long sr : {r, -r}) {
                ClosedGeodesic Q = rm_point(s.F, s.G, c, p, sr);
                long v = intersect_winding_cycle(Q);
                CHECK(intersect_winding_enum(Q) == v);
                CHECK(intersect_winding_enum(Q, Rational(Q.w().to_double() * 0.3 + Q.w_sigma().to_double() * 0.7)) ==
                      v);
                ClosedGeodesic R = Q.reversed();
                CHECK(intersect_winding_cycle(R) == -v);
                CHECK(intersect_winding_enum(R) == -v);
                for (int i = 0; i < 3; ++i) {
                    ClosedGeodesic T = translate(Q, random_gamma0(rng, p));
                    CHECK(gamma0_equivalent(T, Q));
                    CHECK(intersect_winding_cycle(T) == v);
                    CHECK(intersect_winding_enum(T) == v);
                }
            }
    }
}

TEST_CASE("empty sum") {
    // no form in the Gamma_0(5)-class of [5,5,1] has ac < 0
    ClosedGeodesic Q = make_closed_geodesic(QuadForm::of(5, 5, 1), 5);
    CHECK(gamma0_classifier(Q.disc(), 5)->winding_forms(Q.form).empty());
    CHECK(intersect_winding_cycle(Q) == 0);
    CHECK(intersect_winding_enum(Q) == 0);
}

TEST_CASE("twisted cycle") {
    Setup s(3);
    ClassCharacter psi = odd_characters(s.G).at(0);
    TwistedCycle T = twisted_cycle(s.F, s.G, psi, 13, 8);
    REQUIRE(T.terms.size() == 4);
    std::vector<Scalar> coeffs;
    for (const auto& t : T.terms) coeffs.push_back(t.coefficient);
    CHECK(coeffs == std::vector<Scalar>{1, 1, -1, -1});
    Scalar prod(1);
    for (const auto& t : T.terms) prod *= t.coefficient;
    CHECK(prod == psi.value(s.G.table[s.G.table[0][0]][s.G.table[1][1]]));
    CHECK_THROWS(twisted_cycle(s.F, s.G, characters(s.G).at(0), 13, 8));
    CHECK_THROWS(twisted_cycle(s.F, s.G, psi, 13, 7));

    // psi and its inverse give the same (coefficient, class) multiset
    TwistedCycle U = twisted_cycle(s.F, s.G, psi.inverse(), 13, 8);
    REQUIRE(U.terms.size() == T.terms.size());
    for (const auto& t : T.terms) {
        bool found = std::any_of(U.terms.begin(), U.terms.end(), [&](const TwistedTerm& u) {
            return u.coefficient == t.coefficient && gamma0_equivalent(u.geodesic, t.geodesic);
        });
        CHECK(found);
    }
}
