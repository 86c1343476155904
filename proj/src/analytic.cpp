#include "eisgeo/analytic.hpp"
#include "eisgeo/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eisgeo {

namespace {

constexpr double pi = std::numbers::pi;

int sign(double v) { return (v > 0) - (v < 0); }

// int_{-oo}^{oo} f(y) dy for f concentrated near y0 with at least exponential decay
template <class Real, class F>
Real integrate_line(F f_raw, Real y0, const QuadratureConfig& cfg, const char* what) {
    // far out in the tails the integrands overflow to 0 * inf
    auto f = [&](Real y) {
        Real v = f_raw(y);
        return std::isfinite(v) ? v : Real(0);
    };
    Real err = 0, l1 = 0, total = 0;
    auto check = [&](Real value) {
        Real scale = std::max(l1, std::abs(value));
        if (scale > 0 && err > std::sqrt(static_cast<Real>(cfg.rel_tol)) * scale)
            throw ToleranceNotMet(std::string(what) + ": quadrature did not converge", static_cast<double>(value),
                                  static_cast<double>(err));
        total += value;
    };
    Real tol = std::sqrt(std::numeric_limits<Real>::epsilon());
    tol = std::min(tol, static_cast<Real>(cfg.rel_tol));
    if (cfg.truncation_radius > 0) {
        boost::math::quadrature::tanh_sinh<Real> ts(cfg.max_refinements);
        Real R = cfg.truncation_radius;
        check(ts.integrate([&](Real y) { return f(y); }, y0 - R, y0 + R, tol, &err, &l1));
        return total;
    }
    boost::math::quadrature::exp_sinh<Real> es(cfg.max_refinements);
    check(es.integrate([&](Real u) { return f(y0 + u); }, Real(0), std::numeric_limits<Real>::infinity(), tol, &err, &l1));
    check(es.integrate([&](Real u) { return f(y0 - u); }, Real(0), std::numeric_limits<Real>::infinity(), tol, &err, &l1));
    return total;
}

template <class Real>
Real bessel_K_impl(Real s, Real alpha, const QuadratureConfig& cfg) {
    // b = e^y: int exp(-alpha cosh y + s y) dy
    auto f = [&](Real y) { return std::exp(-alpha * std::cosh(y) + s * y); };
    return integrate_line<Real>(f, Real(0), cfg, "bessel_K");
}

// 2 int_0^oo exp(-pi (x/t)^2 - pi (x' t)^2) (x/t + x' t) t^s dt/t, in y = log t
template <class Real>
Real J_place_impl(Real x, Real xp, Real s, const QuadratureConfig& cfg) {
    auto f = [&](Real y) {
        Real t = std::exp(y);
        Real a = x / t, b = xp * t;
        return std::exp(-pi * (a * a + b * b)) * (a + b) * std::exp(s * y);
    };
    Real y0;
    if (xp == 0) y0 = std::log(std::abs(x));
    else if (x == 0) y0 = -std::log(std::abs(xp));
    else y0 = 0.5 * std::log(std::abs(x / xp));
    return 2 * integrate_line<Real>(f, y0, cfg, "J");
}

} // namespace

double ArchVector::Q() const {
    double q = 0;
    for (auto [x, xp] : coords) q += x * xp;
    return 2 * q;
}

ArchCase classify(const ArchVector& x) {
    if (x.N() == 0) throw DomainError("empty archimedean vector");
    bool all_x0 = true, all_xp0 = true, all_generic = true;
    for (auto [a, b] : x.coords) {
        all_x0 = all_x0 && a == 0 && b != 0;
        all_xp0 = all_xp0 && b == 0 && a != 0;
        all_generic = all_generic && a != 0 && b != 0;
    }
    if (all_xp0) return ArchCase::l1;
    if (all_x0) return ArchCase::l2;
    if (all_generic) return ArchCase::generic;
    throw DomainError("vector lies in none of l1, l2 or the generic locus");
}

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0 && rel_tol <= 1e-4)) throw std::invalid_argument("quadrature tolerance must lie in (0, 1e-4]");
    if (max_refinements < 1) throw std::invalid_argument("quadrature needs at least one refinement");
}

double bessel_K(double s, double alpha, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(alpha > 0)) throw DomainError("bessel_K needs alpha > 0");
    if (cfg.extended) return static_cast<double>(bessel_K_impl<long double>(s, alpha, cfg));
    return bessel_K_impl<double>(s, alpha, cfg);
}

double bessel_K_half_closed(double alpha) {
    if (!(alpha > 0)) throw DomainError("bessel_K needs alpha > 0");
    return std::sqrt(2 * pi / alpha) * std::exp(-alpha);
}

double J_closed(const ArchVector& x, double s) {
    switch (classify(x)) {
    case ArchCase::l1: {
        if (!(s < 1)) throw DomainError("l1 closed form needs s < 1");
        double r = 1;
        for (auto [a, b] : x.coords) r *= sign(a) * std::pow(std::abs(a), s) * std::tgamma((1 - s) / 2) * std::pow(pi, -(1 - s) / 2);
        return r;
    }
    case ArchCase::l2: {
        if (!(s > -1)) throw DomainError("l2 closed form needs s > -1");
        double r = 1;
        for (auto [a, b] : x.coords) r *= sign(b) * std::pow(std::abs(b), -s) * std::tgamma((1 + s) / 2) * std::pow(pi, -(1 + s) / 2);
        return r;
    }
    case ArchCase::generic: {
        QuadratureConfig cfg;
        double r = 1;
        for (auto [a, b] : x.coords) {
            double c = 2 * pi * std::abs(a * b);
            double k1 = (1 - s) / 2, k2 = (1 + s) / 2;
            auto K = [&](double nu) { return std::abs(nu) == 0.5 ? bessel_K_half_closed(c) : bessel_K(nu, c, cfg); };
            r *= std::pow(std::abs(a), (1 + s) / 2) * std::pow(std::abs(b), (1 - s) / 2) * (sign(a) * K(k1) + sign(b) * K(k2));
        }
        return r;
    }
    }
    throw std::logic_error("unreachable");
}

double J_quadrature(const ArchVector& x, double s, const QuadratureConfig& cfg) {
    cfg.validate();
    ArchCase c = classify(x);
    if (c == ArchCase::l1 && !(s < 1)) throw DomainError("l1 integral diverges for s >= 1");
    if (c == ArchCase::l2 && !(s > -1)) throw DomainError("l2 integral diverges for s <= -1");
    double r = 1;
    for (auto [a, b] : x.coords)
        r *= cfg.extended ? static_cast<double>(J_place_impl<long double>(a, b, s, cfg)) : J_place_impl<double>(a, b, s, cfg);
    return r;
}

std::pair<double, double> J_place_halves(double x, double xp, double s, const QuadratureConfig& cfg) {
    cfg.validate();
    // t = -e^y on the negative half: (x/t + x' t) flips sign and so does psi
    double pos = J_place_impl<double>(x, xp, s, cfg) / 2;
    double neg = J_place_impl<double>(-x, -xp, s, cfg) / 2 * -1;
    return {neg, pos};
}

double phi0_integral(const ArchVector& x, const QuadratureConfig& cfg) {
    if (classify(x) != ArchCase::generic) throw DomainError("phi0 integral needs nonzero coordinates");
    return std::pow(2.0, -static_cast<double>(x.N())) * std::exp(pi * x.Q()) * J_quadrature(x, 0, cfg);
}

int phi0_expected(const ArchVector& x) {
    int s = 1;
    for (auto [a, b] : x.coords) {
        if (sign(a) * sign(b) != 1) return 0;
        s *= sign(a);
    }
    return s;
}

double lambda_fn(double s, std::size_t N) {
    double n = static_cast<double>(N);
    return std::pow(std::tgamma((1 + s) / 2), n) * std::pow(pi, -n * (1 + s) / 2);
}

namespace {

void check_z_input(const ZInput& in, double s) {
    if (in.tau.size() != in.mn.size() || in.tau.empty()) throw std::invalid_argument("one tau and one (m, n) per embedding");
    if (!(s > -2)) throw DomainError("Z_inf needs s > -2");
    for (std::size_t i = 0; i < in.tau.size(); ++i) {
        if (!(in.tau[i].imag() > 0)) throw DomainError("tau must lie in the upper half plane");
        auto [m, n] = in.mn[i];
        if (m == 0 && n == 0) throw DomainError("m - n tau vanishes");
    }
}

} // namespace

std::complex<double> Z_inf(const ZInput& in, double s) {
    check_z_input(in, s);
    std::size_t N = in.tau.size();
    std::complex<double> norm = 1;
    double v = 1;
    for (std::size_t i = 0; i < N; ++i) {
        auto [m, n] = in.mn[i];
        norm *= m - n * in.tau[i];
        v *= in.tau[i].imag();
    }
    std::complex<double> iN = std::pow(std::complex<double>(0, 1), static_cast<int>(N));
    return lambda_fn(1 + s, N) / iN * std::pow(v, (1 + s) / 2) / (norm * std::pow(std::abs(norm), s));
}

std::complex<double> Z_inf_quadrature(const ZInput& in, double s, const QuadratureConfig& cfg) {
    check_z_input(in, s);
    cfg.validate();
    std::complex<double> r = 1;
    for (std::size_t i = 0; i < in.tau.size(); ++i) {
        auto [m, n] = in.mn[i];
        double u = in.tau[i].real(), v = in.tau[i].imag();
        std::complex<double> z((m - n * u) / std::sqrt(v), n * std::sqrt(v));
        double z2 = std::norm(z);
        // int_0^oo exp(-pi t^2 |z|^2) t^{2+s} dt/t, in y = log t
        auto f = [&](double y) { return std::exp(-pi * std::exp(2 * y) * z2 + (2 + s) * y); };
        double I = integrate_line<double>(f, -0.5 * std::log(z2), cfg, "Z_inf");
        r *= 2.0 * std::complex<double>(0, -1) * z * I;
    }
    return r;
}

} // namespace eisgeo
