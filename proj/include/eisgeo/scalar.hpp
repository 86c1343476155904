#pragma once

#include "eisgeo/exact.hpp"

#include <complex>
#include <string>
#include <variant>

namespace eisgeo {

// Exact rational, or a complex double once a character of order > 2 is involved.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(std::complex<double> z) : v_(z) {}

    // exp(2 pi i k / order); exact when order <= 2
    static Scalar root_of_unity(long k, long order);

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const;
    std::complex<double> complex() const;
    bool is_zero() const;
    std::string str() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    // exact equality; complex values compare bitwise
    friend bool operator==(const Scalar& x, const Scalar& y);

private:
    std::variant<Rational, std::complex<double>> v_;
};

bool approx_equal(const Scalar& x, const Scalar& y, double tol);

} // namespace eisgeo
