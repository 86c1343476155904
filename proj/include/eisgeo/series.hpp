#pragma once

#include "eisgeo/field.hpp"
#include "eisgeo/geodesic.hpp"
#include "eisgeo/hecke.hpp"
#include "eisgeo/lvalue.hpp"
#include "eisgeo/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eisgeo {

// Orientation of the pairing relative to the constant term. Pinned so that the
// genus-zero proportionality constant and the constant term agree in sign.
inline constexpr int kConventionSign = 1;
// a_n = -kCoefficientFactor * kConventionSign * <Q(0,oo), T_n Q(psi)>
inline constexpr int kCoefficientFactor = 2;
inline constexpr int kKappa = 2;

struct QSeries {
    Int dF;
    long p = 0;
    long r = 0;
    ClassCharacter psi;
    bool inert = false;
    int kappa = kKappa;
    int convention_sign = kConventionSign;
    Scalar constant;
    Scalar euler_factor_p;
    Scalar raw_L;
    std::vector<Scalar> coeffs; // coeffs[n-1] = a_n
    std::vector<Scalar> pairings;

    long N() const { return static_cast<long>(coeffs.size()); }
    const Scalar& a(long n) const { return coeffs.at(n - 1); }
    friend bool operator==(const QSeries&, const QSeries&) = default;
};

struct SeriesOptions {
    long N = 30;
    int threads = 1;
    Algorithm algorithm = Algorithm::cycle;
    // compute with both algorithms and throw VerificationMismatch on disagreement
    bool both = false;
    std::optional<long> r;
    // per-class representatives replacing the reduced ones
    std::optional<std::vector<QuadForm>> class_reps;
    HeckeOptions hecke;
};

QSeries diagonal_restriction(const FieldData& F, const NarrowClassGroup& G, const ClassCharacter& psi, long p,
                             const SeriesOptions& opts = {});

long sigma1_p(long n, long p);
// q-expansion coefficients 1..N of eta(tau)^2 eta(11 tau)^2
std::vector<Int> eta_product_11(long N);

struct ModularityReport {
    bool ok = true;
    std::optional<long> first_failing_n; // 0 means the constant term
    std::string detail;
};

ModularityReport modularity_check(const QSeries& S);

} // namespace eisgeo
