#include "eisgeo/lvalue.hpp"
#include "eisgeo/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <set>
#include <stdexcept>

namespace eisgeo {

namespace {

bool zagier_reduced(const QuadIrr& w) {
    QuadIrr ws = w.conjugate();
    return cmp(w, QuadIrr(1)) > 0 && cmp(ws, QuadIrr(0)) > 0 && cmp(ws, QuadIrr(1)) < 0;
}

QuadIrr minus_step(const QuadIrr& w, Int& digit) {
    digit = w.ceil();
    return QuadIrr(1) / (QuadIrr(Rational(digit)) - w);
}

} // namespace

std::vector<Int> minus_cf_period(const QuadForm& f) {
    if (sgn(f.disc()) <= 0 || is_square(f.disc())) throw DomainError("minus continued fraction needs a real quadratic root");
    QuadIrr w = f.first_root();
    Int digit;
    // a few steps suffice; the bound only guards against a bug
    for (int i = 0; !zagier_reduced(w); ++i) {
        if (i > 100000) throw std::logic_error("minus continued fraction never became reduced");
        w = minus_step(w, digit);
    }
    std::vector<Int> period;
    QuadIrr start = w;
    do {
        w = minus_step(w, digit);
        period.push_back(digit);
    } while (!(w == start));
    return period;
}

Rational partial_zeta_zero(const QuadForm& f) {
    Rational s = 0;
    for (const Int& b : minus_cf_period(f)) s += Rational(b - 3);
    s /= 12;
    s.canonicalize();
    return s;
}

std::vector<Rational> partial_zetas(const NarrowClassGroup& G) {
    std::vector<Rational> out;
    for (const QuadForm& f : G.class_reps) out.push_back(partial_zeta_zero(f));
    return out;
}

Scalar L_value_zagier(const NarrowClassGroup& G, const ClassCharacter& psi) {
    auto z = partial_zetas(G);
    Scalar total(0);
    for (int c = 0; c < G.size(); ++c) total += psi.value(c) * Scalar(z[c]);
    return total;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 1) return true;
    Int r = mod(d, Int(4));
    Int a = abs(d);
    if (r == 1) return is_squarefree(a);
    if (r != 0) return false;
    Int m = d / 4;
    Int rm = mod(m, Int(4));
    return (rm == 2 || rm == 3) && is_squarefree(abs(m));
}

Rational dirichlet_L_zero(const Int& d) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument(to_string(d) + " is not a fundamental discriminant");
    if (d == 1) return Rational(-1, 2);
    if (sgn(d) > 0) return 0; // even character
    Int m = -d;
    Rational s = 0;
    for (Int a = 1; a < m; ++a) s += Rational(a * mpz_kronecker(d.get_mpz_t(), a.get_mpz_t()));
    s = -s / m;
    s.canonicalize();
    return s;
}

namespace {

// a positive value of f prime to dF, which is the norm of an ideal in the inverse class
Int positive_value_prime_to(const QuadForm& f, const Int& dF) {
    for (long h = 1; h < 200; ++h)
        for (long x = -h; x <= h; ++x)
            for (long y : {h - std::labs(x), std::labs(x) - h}) {
                Int v = f.eval(Int(x), Int(y));
                if (sgn(v) > 0 && gcd(v, dF) == 1) return v;
            }
    throw std::logic_error("form " + f.str() + " represents no small value prime to the discriminant");
}

} // namespace

std::pair<Int, Int> genus_factorization(const NarrowClassGroup& G, const ClassCharacter& psi) {
    if (psi.order > 2) throw NotApplicable("genus oracle needs a character of order at most 2");
    const Int& dF = G.dF;
    std::vector<Int> values;
    for (const QuadForm& f : G.class_reps) values.push_back(positive_value_prime_to(f, dF));
    Int a = abs(dF);
    for (Int k = 1; k <= a; ++k) {
        if (!mpz_divisible_p(a.get_mpz_t(), k.get_mpz_t())) continue;
        for (int s : {1, -1}) {
            Int d1 = s * k;
            if (!mpz_divisible_p(dF.get_mpz_t(), d1.get_mpz_t())) continue;
            Int d2 = dF / d1;
            if (!is_fundamental_discriminant(d1) || !is_fundamental_discriminant(d2) || d1 > d2) continue;
            bool match = true;
            for (int c = 0; c < G.size() && match; ++c) {
                int chi = mpz_kronecker(d1.get_mpz_t(), values[c].get_mpz_t());
                match = psi.value(c) == Scalar(chi);
            }
            if (match) return {d1, d2};
        }
    }
    throw std::logic_error("character matches no genus factorization");
}

Rational L_value_genus_oracle(const NarrowClassGroup& G, const ClassCharacter& psi) {
    auto [d1, d2] = genus_factorization(G, psi);
    if (d1 > 0 && d2 > 0) throw NotApplicable("genus oracle needs an odd genus character");
    Rational v = dirichlet_L_zero(d1) * dirichlet_L_zero(d2);
    v.canonicalize();
    return v;
}

double hurwitz_zeta(double s, double x) {
    if (s == 1.0) throw DomainError("Hurwitz zeta has a pole at s = 1");
    if (x <= 0) throw std::invalid_argument("Hurwitz zeta needs x > 0");
    const int n = 20;
    double sum = 0;
    for (int k = 0; k < n; ++k) sum += std::pow(k + x, -s);
    double a = n + x;
    sum += std::pow(a, 1 - s) / (s - 1) + 0.5 * std::pow(a, -s);
    // s (s+1) ... (s+2j-2) / (2j)! a^{-s-2j+1}
    double rising = s, fact = 2;
    for (int j = 1; j <= 12; ++j) {
        sum += boost::math::bernoulli_b2n<double>(j) / fact * rising * std::pow(a, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

double dedekind_zeta_zero_numeric(const Int& dF) {
    long m = to_long(dF);
    double L = 0;
    for (long a = 1; a <= m; ++a) {
        int chi = mpz_kronecker_si(dF.get_mpz_t(), a);
        if (chi) L += chi * hurwitz_zeta(0.0, static_cast<double>(a) / static_cast<double>(m));
    }
    return hurwitz_zeta(0.0, 1.0) * L;
}

Scalar euler_factor(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r) {
    Int P(p);
    int c1 = class_of_ideal(G, P, Int(r));
    int c2 = class_of_ideal(G, P, Int(-r));
    return (Scalar(1) - psi.value(c1)) * (Scalar(1) - psi.value(c2));
}

ConstantTerm constant_term(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r) {
    ConstantTerm t;
    t.euler_factor_p = euler_factor(G, psi, p, r);
    t.raw_L = L_value_zagier(G, psi);
    t.value = t.euler_factor_p * t.raw_L;
    return t;
}

} // namespace eisgeo
