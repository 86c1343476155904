#include "doctest.h"
#include "eisgeo/forms.hpp"

#include <random>

using namespace eisgeo;

namespace {

Mat2 random_sl2(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-3, 3);
    Mat2 m;
    for (int i = 0; i < 3; ++i) m = m * Mat2::of(1, d(rng), 0, 1) * Mat2::of(1, 0, d(rng), 1);
    return m;
}

} // namespace

TEST_CASE("pullback and act") {
    QuadForm f = QuadForm::of(2, 3, -4);
    Mat2 m = Mat2::of(2, 1, 1, 1);
    QuadForm g = pullback(f, m);
    CHECK(g.disc() == f.disc());
    CHECK(g.eval(Int(3), Int(-2)) == f.eval(Int(2 * 3 - 2), Int(3 - 2)));
    CHECK(act(m, g) == f);
    // roots move by M^{-1} under pullback
    CHECK(mobius(m, ExtendedPoint(g.first_root())) == ExtendedPoint(f.first_root()));
}

TEST_CASE("reduction lands on reduced forms of the same class") {
    std::mt19937_64 rng(3);
    for (long d : {5L, 8L, 12L, 13L, 24L, 28L, 40L, 85L, 136L}) {
        for (const QuadForm& r : reduced_forms(Int(d))) CHECK(is_reduced(r));
        for (int i = 0; i < 20; ++i) {
            QuadForm f = pullback(principal_form(Int(d)), random_sl2(rng));
            Reduction red = reduce(f);
            CHECK(is_reduced(red.form));
            CHECK(pullback(f, red.transform) == red.form);
            CHECK(red.transform.det() == 1);
        }
    }
}

TEST_CASE("cycles close up under their automorph") {
    for (long d : {12L, 21L, 24L, 60L}) {
        for (const QuadForm& r : reduced_forms(Int(d))) {
            Cycle c = cycle_of(r);
            CHECK(pullback(c.forms[0], c.automorph) == c.forms[0]);
            for (std::size_t i = 0; i < c.forms.size(); ++i) CHECK(pullback(c.forms[0], c.prefix[i]) == c.forms[i]);
        }
    }
}

TEST_CASE("Pell fundamental solution matches brute force") {
    CHECK(pell_fundamental(Int(12)) == PellSolution{Int(4), Int(1)});
    CHECK(pell_fundamental(Int(5)) == PellSolution{Int(3), Int(1)});
    for (long d = 5; d < 400; ++d) {
        if (is_square(Int(d)) || (d % 4 != 0 && d % 4 != 1)) continue;
        auto bf = pell_bruteforce(Int(d), 100000);
        if (!bf) continue;
        CHECK(pell_fundamental(Int(d)) == *bf);
    }
}

TEST_CASE("automorphs fix their form") {
    for (QuadForm f : {QuadForm::of(1, 2, -2), QuadForm::of(13, -8, 1), QuadForm::of(-3, 6, 1), QuadForm::of(6, 0, -1)}) {
        Mat2 g = automorph(f);
        CHECK(g.det() == 1);
        CHECK(g.trace() > 2);
        CHECK(pullback(f, g) == f);
    }
}

TEST_CASE("composition keeps the discriminant and primitivity") {
    Int d(60);
    for (const QuadForm& f : reduced_forms(d))
        for (const QuadForm& g : reduced_forms(d)) {
            QuadForm h = compose(f, g);
            CHECK(h.disc() == d);
            CHECK(h.content() == 1);
        }
}

TEST_CASE("Gamma_0(p) equivalence") {
    std::mt19937_64 rng(9);
    QuadForm f = QuadForm::of(13, -8, 1);
    auto cls = gamma0_classifier(f.disc(), 13);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<long> k(-2, 2);
        Mat2 g0 = Mat2::of(1, k(rng), 0, 1) * Mat2::of(1, 0, 13 * k(rng), 1) * Mat2::of(1, k(rng), 0, 1);
        QuadForm h = pullback(f, g0);
        CHECK(cls->key(h) == cls->key(f));
        auto eq = cls->equivalence(f, h);
        REQUIRE(eq);
        CHECK(pullback(f, *eq) == h);
        CHECK(mod(eq->c, Int(13)) == 0);
    }
    // S moves the level structure
    CHECK_FALSE(cls->equivalence(f, pullback(f, Mat2::of(0, -1, 1, 0))).has_value());
}

TEST_CASE("winding forms have straddling roots") {
    QuadForm f = QuadForm::of(13, -8, 1);
    auto cls = gamma0_classifier(f.disc(), 13);
    long sum = 0;
    for (const QuadForm& h : cls->winding_forms(f)) {
        CHECK(sgn(h.a) * sgn(h.c) < 0);
        CHECK(cls->key(h) == cls->key(f));
        sum += sgn(h.a);
    }
    CHECK(sum == cls->winding_sum(f));
}
