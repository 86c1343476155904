#include "doctest.h"
#include "eisgeo/errors.hpp"
#include "eisgeo/field.hpp"

#include <numeric>
#include <random>

using namespace eisgeo;

namespace {

struct Lattice {
    Int X, B, Y; // basis (X, 0), (B, Y) in coordinates (x + y sqrt d)/2
};

// Hermite basis of the Z-span of integer vectors
Lattice hermite(std::vector<std::pair<Int, Int>> v) {
    // column operations on the y-coordinates until one vector carries gcd(y)
    for (;;) {
        std::size_t nonzero = 0, best = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].second != 0) {
                ++nonzero;
                if (v[best].second == 0 || abs(v[i].second) < abs(v[best].second)) best = i;
            }
        if (nonzero <= 1) {
            if (v[best].second < 0) v[best] = {-v[best].first, -v[best].second};
            Int X = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (i != best) X = gcd(X, v[i].first);
            X = abs(X);
            return {X, mod(v[best].first, X), v[best].second};
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != best && v[i].second != 0) {
                Int q = v[i].second / v[best].second;
                v[i].first -= q * v[best].first;
                v[i].second -= q * v[best].second;
            }
    }
}

// product of the ideals [a1, (-b1+sqrt d)/2] and [a2, (-b2+sqrt d)/2], returned as
// the primitive ideal (a, b) it is a rational multiple of
std::pair<Int, Int> ideal_product(const Int& d, const Int& a1, const Int& b1, const Int& a2, const Int& b2) {
    std::vector<std::pair<Int, Int>> g1{{2 * a1, 0}, {-b1, 1}}, g2{{2 * a2, 0}, {-b2, 1}}, prod;
    for (auto [x1, y1] : g1)
        for (auto [x2, y2] : g2) {
            Int x = x1 * x2 + d * y1 * y2, y = x1 * y2 + x2 * y1;
            REQUIRE(mod(x, Int(2)) == 0);
            REQUIRE(mod(y, Int(2)) == 0);
            prod.emplace_back(x / 2, y / 2);
        }
    Lattice L = hermite(prod);
    REQUIRE(mod(L.X, 2 * L.Y) == 0);
    REQUIRE(mod(L.B, L.Y) == 0);
    return {L.X / (2 * L.Y), -L.B / L.Y};
}

Mat2 random_sl2(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-2, 2);
    Mat2 m;
    for (int i = 0; i < 3; ++i) m = m * Mat2::of(1, d(rng), 0, 1) * Mat2::of(1, 0, d(rng), 1);
    return m;
}

} // namespace

TEST_CASE("build_field examples") {
    CHECK(build_field(Int(3)).dF == 12);
    CHECK(build_field(Int(5)).dF == 5);
    FieldData F = build_field(Int(3));
    CHECK(F.eps == QuadIrr(Int(2), Int(1), Int(1), Int(3)));
    CHECK(F.unit_norm == 1);
    CHECK(F.eps_plus == F.eps);
    FieldData F5 = build_field(Int(5));
    CHECK(F5.eps == QuadIrr(Int(1), Int(1), Int(2), Int(5)));
    CHECK(F5.unit_norm == -1);
    CHECK(F5.eps_plus == F5.eps * F5.eps);
    CHECK(F.lambda == QuadIrr(Int(12), Int(1), Int(2), Int(12)));
    CHECK_THROWS_AS(build_field(Int(4)), DomainError);
    CHECK_THROWS_AS(build_field(Int(12)), DomainError);
    CHECK_THROWS_AS(build_field(Int(1)), DomainError);
}

TEST_CASE("units are units, eps_plus totally positive") {
    for (long D : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 15L, 21L, 34L, 41L, 82L, 94L}) {
        FieldData F = build_field(Int(D));
        CHECK(F.eps.norm() == F.unit_norm);
        CHECK(F.eps.sign() > 0);
        CHECK(cmp(F.eps, QuadIrr(1)) == std::strong_ordering::greater);
        CHECK(F.eps_plus.norm() == 1);
        CHECK(F.eps_plus.conjugate().sign() > 0);
    }
}

TEST_CASE("narrow class numbers") {
    CHECK(narrow_class_group(build_field(Int(3))).size() == 2);
    CHECK(narrow_class_group(build_field(Int(5))).size() == 1);
    CHECK(narrow_class_group(build_field(Int(6))).size() == 2);
    CHECK(narrow_class_group(build_field(Int(7))).size() == 2);
    CHECK(narrow_class_group(build_field(Int(10))).size() == 2);
    CHECK(narrow_class_group(build_field(Int(34))).size() == 4);
    CHECK(narrow_class_group(build_field(Int(105))).size() == 4);
}

TEST_CASE("group table is an abelian group with the principal form as identity") {
    for (long D : {3L, 10L, 34L, 79L, 105L, 145L}) {
        NarrowClassGroup G = narrow_class_group(build_field(Int(D)));
        int h = G.size();
        CHECK(G.class_of(principal_form(G.dF)) == G.identity());
        for (int x = 0; x < h; ++x) {
            CHECK(G.table[G.identity()][x] == x);
            CHECK(G.table[x][G.inverse(x)] == G.identity());
            for (int y = 0; y < h; ++y) {
                CHECK(G.table[x][y] == G.table[y][x]);
                for (int z = 0; z < h; ++z) CHECK(G.table[G.table[x][y]][z] == G.table[x][G.table[y][z]]);
            }
        }
    }
}

TEST_CASE("Gauss composition agrees with ideal multiplication") {
    std::mt19937_64 rng(17);
    for (long D : {3L, 6L, 10L, 15L, 34L, 79L, 82L, 105L}) {
        FieldData F = build_field(Int(D));
        NarrowClassGroup G = narrow_class_group(F);
        std::vector<QuadForm> sample;
        for (const QuadForm& r : G.class_reps)
            for (int i = 0; sample.size() < 6u * G.class_reps.size() && i < 40; ++i) {
                QuadForm f = pullback(r, random_sl2(rng));
                if (f.a > 0) sample.push_back(f);
            }
        for (const QuadForm& f : sample)
            for (const QuadForm& g : sample) {
                auto [a, b] = ideal_product(F.dF, f.a, f.b, g.a, g.b);
                CHECK(class_of_ideal(G, a, b) == G.table[G.class_of(f)][G.class_of(g)]);
                CHECK(G.class_of(compose(f, g)) == G.table[G.class_of(f)][G.class_of(g)]);
            }
    }
}

TEST_CASE("class of the ideal (sqrt dF)") {
    NarrowClassGroup G = narrow_class_group(build_field(Int(3)));
    CHECK(G.class_of(sqrt_dF_form(G.dF)) == G.class_of_principal_sqrt_dF);
    CHECK(G.class_of_principal_sqrt_dF != G.identity());
    CHECK(G.table[G.class_of_principal_sqrt_dF][G.class_of_principal_sqrt_dF] == G.identity());
    for (long D : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 14L, 15L, 21L, 30L, 34L, 41L, 46L, 82L}) {
        FieldData F = build_field(Int(D));
        NarrowClassGroup H = narrow_class_group(F);
        CHECK((H.class_of_principal_sqrt_dF != H.identity()) == (F.unit_norm == 1));
        CHECK(H.table[H.class_of_principal_sqrt_dF][H.class_of_principal_sqrt_dF] == H.identity());
    }
}

TEST_CASE("ideal dictionary") {
    NarrowClassGroup G = narrow_class_group(build_field(Int(3)));
    CHECK(ideal_to_form(Int(12), Int(13), Int(8)) == QuadForm::of(13, 8, 1));
    CHECK(class_of_ideal(G, Int(1), Int(0)) == G.identity());
    CHECK_THROWS(class_of_ideal(G, Int(5), Int(1)));
    CHECK_THROWS(G.class_of(QuadForm::of(1, 1, -1)));
}

TEST_CASE("characters") {
    NarrowClassGroup G = narrow_class_group(build_field(Int(3)));
    auto odd = odd_characters(G);
    REQUIRE(odd.size() == 1);
    CHECK(odd[0].order == 2);
    CHECK(odd[0].value(G.class_of_principal_sqrt_dF) == Scalar(-1));
    CHECK(odd_characters(narrow_class_group(build_field(Int(5)))).empty());
    CHECK(odd_characters(narrow_class_group(build_field(Int(82)))).empty());

    for (long D : {3L, 34L, 79L, 105L, 145L}) {
        NarrowClassGroup H = narrow_class_group(build_field(Int(D)));
        auto all = characters(H);
        CHECK(static_cast<int>(all.size()) == H.size());
        CHECK(all[0].is_trivial());
        for (const ClassCharacter& chi : all) {
            for (int x = 0; x < H.size(); ++x)
                for (int y = 0; y < H.size(); ++y)
                    CHECK(approx_equal(chi.value(H.table[x][y]), chi.value(x) * chi.value(y), 1e-12));
            CHECK(chi.totally_odd == (chi.value(H.class_of_principal_sqrt_dF) == Scalar(-1) ||
                                      approx_equal(chi.value(H.class_of_principal_sqrt_dF), Scalar(-1), 1e-12)));
        }
        for (const ClassCharacter& chi : odd_characters(H)) {
            CHECK(chi.totally_odd);
            CHECK_FALSE(chi.is_trivial());
            CHECK(chi.inverse().inverse() == chi);
        }
    }
}

TEST_CASE("serialized parts are validated") {
    NarrowClassGroup G = narrow_class_group(build_field(Int(3)));
    NarrowClassGroup H = NarrowClassGroup::from_parts(G.dF, G.class_reps, G.table, G.class_of_principal_sqrt_dF);
    CHECK(H.class_reps == G.class_reps);
    CHECK(H.class_of(QuadForm::of(13, 8, 1)) == G.class_of(QuadForm::of(13, 8, 1)));
    auto bad = G.table;
    std::swap(bad[0], bad[1]);
    CHECK_THROWS(NarrowClassGroup::from_parts(G.dF, G.class_reps, bad, G.class_of_principal_sqrt_dF));
}
