#include "eisgeo/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace eisgeo {

bool in_delta0(const Mat2& m, long p) {
    Int P(p);
    return sgn(m.det()) > 0 && mod(m.c, P) == 0 && mod(m.a, P) != 0;
}

bool same_right_coset(const Mat2& y, const Mat2& y2, long n, long p) {
    Mat2 t = y.adj() * y2;
    Int N(n);
    for (const Int* e : {&t.a, &t.b, &t.c, &t.d})
        if (!mpz_divisible_p(e->get_mpz_t(), N.get_mpz_t())) return false;
    return mod(t.c / N, Int(p)) == 0;
}

long sigma1(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

CosetSet right_cosets(long n, long p) {
    if (n < 1) throw std::invalid_argument("Hecke index must be positive");
    CosetSet out{n, p, {}};
    std::vector<Mat2> left_reps;
    for (long k = 0; k < p; ++k) left_reps.push_back(Mat2::of(1, 0, k, 1));
    left_reps.push_back(Mat2::of(0, -1, 1, 0));
    for (long a = 1; a <= n; ++a) {
        if (n % a) continue;
        long d = n / a;
        for (long c = 0; c < d; ++c) {
            Mat2 y = Mat2::of(a, 0, c, d);
            for (const Mat2& g : left_reps) {
                Mat2 m = y * g;
                if (!in_delta0(m, p)) continue;
                bool dup = std::any_of(out.reps.begin(), out.reps.end(),
                                       [&](const Mat2& z) { return same_right_coset(z, m, n, p); });
                if (!dup) out.reps.push_back(m);
            }
        }
    }
    return out;
}

DoubleCosetSet double_cosets(const ClosedGeodesic& Q, const CosetSet& cosets) {
    const auto& ys = cosets.reps;
    size_t k = ys.size();
    DoubleCosetSet out;
    out.permutation.assign(k, -1);
    std::vector<char> hit(k, 0);
    for (size_t i = 0; i < k; ++i) {
        Mat2 m = Q.gamma * ys[i];
        for (size_t j = 0; j < k; ++j) {
            if (same_right_coset(ys[j], m, cosets.n, cosets.p)) {
                out.permutation[i] = static_cast<int>(j);
                if (hit[j]) throw std::logic_error("gamma_Q does not act bijectively on cosets");
                hit[j] = 1;
                break;
            }
        }
        if (out.permutation[i] < 0) throw std::logic_error("gamma_Q moved a coset outside the coset set");
    }
    std::vector<char> seen(k, 0);
    for (size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        int size = 0;
        for (size_t j = i; !seen[j]; j = out.permutation[j]) {
            seen[j] = 1;
            ++size;
        }
        out.reps.push_back(ys[i]);
        out.orbit_sizes.push_back(size);
    }
    return out;
}

namespace {

Mat2 random_gamma0(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> dist(-3, 3);
    Mat2 g;
    for (int i = 0; i < 3; ++i) g = g * Mat2::of(1, dist(rng), 0, 1) * Mat2::of(1, 0, p * dist(rng), 1);
    return g;
}

// smallest m >= 1 with delta^{-1} gamma^m delta in Gamma_0(p)
Mat2 conjugated_stabilizer(const Mat2& gamma, const Mat2& delta, long n, long p) {
    Int N(n), P(p);
    Mat2 g = gamma;
    for (long m = 1; m <= 1000000; ++m) {
        Mat2 t = delta.adj() * g * delta;
        bool integral = true;
        for (const Int* e : {&t.a, &t.b, &t.c, &t.d})
            if (!mpz_divisible_p(e->get_mpz_t(), N.get_mpz_t())) integral = false;
        if (integral && mod(t.c / N, P) == 0) return {t.a / N, t.b / N, t.c / N, t.d / N};
        g = g * gamma;
    }
    throw std::logic_error("conjugated stabilizer not found");
}

} // namespace

std::vector<ClosedGeodesic> hecke_translate(const ClosedGeodesic& Q, long n, const HeckeOptions& opts) {
    CosetSet cosets = right_cosets(n, Q.p);
    std::optional<std::mt19937_64> rng;
    if (opts.shuffle_seed) {
        rng.emplace(*opts.shuffle_seed);
        std::shuffle(cosets.reps.begin(), cosets.reps.end(), *rng);
        for (Mat2& y : cosets.reps) y = y * random_gamma0(*rng, Q.p);
    }
    DoubleCosetSet dc = double_cosets(Q, cosets);
    std::vector<ClosedGeodesic> out;
    for (Mat2 delta : dc.reps) {
        if (rng) {
            std::uniform_int_distribution<long> dist(-2, 2);
            delta = power(Q.gamma, dist(*rng)) * delta * random_gamma0(*rng, Q.p);
        }
        QuadForm f = pullback(Q.form, delta).primitive();
        ClosedGeodesic T = make_closed_geodesic(f, Q.p);
        if (n % Q.p != 0) {
            Mat2 c = conjugated_stabilizer(Q.gamma, delta, n, Q.p);
            if (!(c == T.gamma || c == -T.gamma))
                throw std::logic_error("stabilizer of a Hecke translate disagrees with its automorph");
        }
        out.push_back(std::move(T));
    }
    return out;
}

long intersect_winding(const ClosedGeodesic& Q, Algorithm alg, std::optional<double> base_fraction) {
    if (alg == Algorithm::cycle) return intersect_winding_cycle(Q);
    if (!base_fraction) return intersect_winding_enum(Q);
    double a = Q.w().to_double(), b = Q.w_sigma().to_double();
    Rational x(a + *base_fraction * (b - a));
    return intersect_winding_enum(Q, x);
}

Scalar pair_with_twisted_cycle(const TwistedCycle& T, long n, Algorithm alg, const HeckeOptions& opts) {
    Scalar total(0);
    for (const TwistedTerm& term : T.terms) {
        long s = 0;
        for (const ClosedGeodesic& g : hecke_translate(term.geodesic, n, opts)) s += intersect_winding(g, alg, opts.base_fraction);
        if (s != 0) total += term.coefficient * Scalar(s);
    }
    return total;
}

} // namespace eisgeo
