#include "eisgeo/scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eisgeo {

Scalar Scalar::root_of_unity(long k, long order) {
    if (order <= 0) throw std::invalid_argument("root of unity needs a positive order");
    k = mod(k, order);
    if (k == 0) return Scalar(1);
    if (2 * k == order) return Scalar(-1);
    double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order);
    return Scalar(std::complex<double>(std::cos(t), std::sin(t)));
}

const Rational& Scalar::rational() const {
    if (!is_exact()) throw std::logic_error("complex scalar used as exact rational");
    return std::get<Rational>(v_);
}

std::complex<double> Scalar::complex() const {
    if (is_exact()) return {std::get<Rational>(v_).get_d(), 0.0};
    return std::get<std::complex<double>>(v_);
}

bool Scalar::is_zero() const {
    if (is_exact()) return std::get<Rational>(v_) == 0;
    return std::get<std::complex<double>>(v_) == std::complex<double>(0, 0);
}

std::string Scalar::str() const {
    if (is_exact()) return std::get<Rational>(v_).get_str();
    std::ostringstream os;
    os.precision(17);
    auto z = std::get<std::complex<double>>(v_);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(Rational(-std::get<Rational>(v_)));
    return Scalar(-std::get<std::complex<double>>(v_));
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return Scalar(Rational(x.rational() + y.rational()));
    return Scalar(x.complex() + y.complex());
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return Scalar(Rational(x.rational() * y.rational()));
    return Scalar(x.complex() * y.complex());
}

Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.is_zero()) throw std::domain_error("division by zero");
    if (x.is_exact() && y.is_exact()) return Scalar(Rational(x.rational() / y.rational()));
    return Scalar(x.complex() / y.complex());
}

bool operator==(const Scalar& x, const Scalar& y) {
    if (x.is_exact() != y.is_exact()) return false;
    if (x.is_exact()) return x.rational() == y.rational();
    return x.complex() == y.complex();
}

bool approx_equal(const Scalar& x, const Scalar& y, double tol) {
    if (x.is_exact() && y.is_exact()) return x.rational() == y.rational();
    return std::abs(x.complex() - y.complex()) <= tol * std::max(1.0, std::abs(x.complex()));
}

} // namespace eisgeo
