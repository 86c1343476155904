#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace eisgeo {

// one (x_sigma, x'_sigma) pair per real embedding
struct ArchVector {
    std::vector<std::pair<double, double>> coords;

    std::size_t N() const { return coords.size(); }
    // Q(x, x) = 2 sum x_sigma x'_sigma
    double Q() const;
};

enum class ArchCase { l1, l2, generic };
// l1: all x' = 0; l2: all x = 0; generic: every x_sigma x'_sigma != 0. Anything else throws DomainError.
ArchCase classify(const ArchVector& x);

struct QuadratureConfig {
    double rel_tol = 1e-12;
    std::size_t max_refinements = 12;
    // > 0: integrate over |log t - log t*| <= radius instead of the whole half-line
    double truncation_radius = 0;
    bool extended = false; // long double arithmetic

    void validate() const;
};

// int_0^oo exp(-alpha (b + 1/b)/2) b^s db/b, twice the usual K_s
double bessel_K(double s, double alpha, const QuadratureConfig& cfg = {});
double bessel_K_half_closed(double alpha);

double J_closed(const ArchVector& x, double s);
double J_quadrature(const ArchVector& x, double s, const QuadratureConfig& cfg = {});

// one place, t over the negative and the positive half-line separately, psi(t) = sgn t
std::pair<double, double> J_place_halves(double x, double xp, double s, const QuadratureConfig& cfg = {});

double phi0_integral(const ArchVector& x, const QuadratureConfig& cfg = {});
int phi0_expected(const ArchVector& x);

double lambda_fn(double s, std::size_t N);

// per embedding: tau_sigma and (m_sigma, n_sigma)
struct ZInput {
    std::vector<std::complex<double>> tau;
    std::vector<std::pair<double, double>> mn;
};

std::complex<double> Z_inf(const ZInput& in, double s);
std::complex<double> Z_inf_quadrature(const ZInput& in, double s, const QuadratureConfig& cfg = {});

} // namespace eisgeo
