#pragma once

#include "eisgeo/analytic.hpp"
#include "eisgeo/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eisgeo {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

// constant, pairings and coefficients agree exactly
bool same_values(const QSeries& x, const QSeries& y);

struct VerifyOptions {
    long N = 30;
    int threads = 1;
    bool both = true;
    std::uint64_t seed = 1;
};

// dual algorithms, modularity, and every invariance of the series under a change of
// auxiliary choices
std::vector<CheckResult> verify_series(const FieldData& F, const NarrowClassGroup& G, const ClassCharacter& psi, long p,
                                       const VerifyOptions& opts = {});

// perturb a_n by one and make sure modularity_check flags exactly that n
CheckResult fault_injection(const QSeries& S, long n);

struct AnalyticTolerances {
    double bessel = 1e-10;
    double J = 1e-8;
    double vanish = 1e-8;
    double phi0 = 1e-6;
    double Z = 1e-8;
};

std::vector<CheckResult> verify_analytic(const QuadratureConfig& cfg = {}, const AnalyticTolerances& tol = {},
                                         std::uint64_t seed = 7);

} // namespace eisgeo
