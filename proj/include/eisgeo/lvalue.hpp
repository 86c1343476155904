#pragma once

#include "eisgeo/exact.hpp"
#include "eisgeo/field.hpp"
#include "eisgeo/forms.hpp"
#include "eisgeo/scalar.hpp"

#include <utility>
#include <vector>

namespace eisgeo {

// minus continued fraction digits of one period of the reduced cycle reached from
// the first root of f (w > 1 > w^sigma > 0)
std::vector<Int> minus_cf_period(const QuadForm& f);

// partial zeta of the narrow class of f at s = 0
Rational partial_zeta_zero(const QuadForm& f);
std::vector<Rational> partial_zetas(const NarrowClassGroup& G);

Scalar L_value_zagier(const NarrowClassGroup& G, const ClassCharacter& psi);

bool is_fundamental_discriminant(const Int& d);
// L(chi_d, 0) for the Kronecker character of a fundamental discriminant, from -B_{1,chi}
Rational dirichlet_L_zero(const Int& d);

// dF = d1 d2 with psi(class of an ideal of norm m) = chi_{d1}(m) = chi_{d2}(m)
std::pair<Int, Int> genus_factorization(const NarrowClassGroup& G, const ClassCharacter& psi);
// L(chi_{d1},0) L(chi_{d2},0); NotApplicable for characters of order > 2
Rational L_value_genus_oracle(const NarrowClassGroup& G, const ClassCharacter& psi);

// Hurwitz zeta by Euler-Maclaurin, any s != 1
double hurwitz_zeta(double s, double x);
// zeta(0) L(chi_dF, 0) from Hurwitz values
double dedekind_zeta_zero_numeric(const Int& dF);

// (1 - psi(P))(1 - psi(P^sigma)) for P = [p, (-r + sqrt dF)/2]
Scalar euler_factor(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r);

struct ConstantTerm {
    Scalar value;
    Scalar euler_factor_p;
    Scalar raw_L;
};

ConstantTerm constant_term(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r);

} // namespace eisgeo
