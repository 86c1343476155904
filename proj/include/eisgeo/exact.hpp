#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>

namespace eisgeo {

using Int = mpz_class;
using Rational = mpq_class;

int sgn(const Int& x);
Int isqrt(const Int& n);
bool is_square(const Int& n);
// residue in [0, |m|)
Int mod(const Int& a, const Int& m);
long mod(long a, long m);
long to_long(const Int& x);
std::string to_string(const Int& x);
std::string to_string(const Rational& q);

// (u + v*sqrt(disc)) / w.
// Canonical form: w > 0, gcd(u, v, w) = 1, disc squarefree > 1 whenever v != 0.
// Rational values carry v = 0 and disc = 1, so equality is structural.
class QuadIrr {
public:
    QuadIrr() = default;
    QuadIrr(Int u, Int v, Int w, Int disc);
    QuadIrr(const Rational& q);
    QuadIrr(long n) : QuadIrr(Rational(n)) {}

    const Int& u() const { return u_; }
    const Int& v() const { return v_; }
    const Int& w() const { return w_; }
    const Int& disc() const { return disc_; }

    bool is_rational() const { return v_ == 0; }
    Rational rational() const;

    QuadIrr conjugate() const;
    Rational norm() const;
    Rational trace() const;
    int sign() const;
    Int floor() const;
    Int ceil() const;
    double to_double() const;
    std::string str() const;

    QuadIrr operator-() const;
    friend QuadIrr operator+(const QuadIrr& x, const QuadIrr& y);
    friend QuadIrr operator-(const QuadIrr& x, const QuadIrr& y);
    friend QuadIrr operator*(const QuadIrr& x, const QuadIrr& y);
    friend QuadIrr operator/(const QuadIrr& x, const QuadIrr& y);
    friend bool operator==(const QuadIrr&, const QuadIrr&) = default;

private:
    Int u_{0}, v_{0}, w_{1}, disc_{1};
};

std::strong_ordering cmp(const QuadIrr& x, const QuadIrr& y);
std::ostream& operator<<(std::ostream& os, const QuadIrr& x);

struct Infinity {
    friend bool operator==(Infinity, Infinity) { return true; }
};

// A point of R ∪ {∞}.
class ExtendedPoint {
public:
    ExtendedPoint() = default;
    ExtendedPoint(Infinity) : v_(Infinity{}) {}
    ExtendedPoint(QuadIrr x) : v_(std::move(x)) {}
    ExtendedPoint(const Rational& q) : v_(QuadIrr(q)) {}
    ExtendedPoint(long n) : v_(QuadIrr(n)) {}

    bool is_infinity() const { return std::holds_alternative<Infinity>(v_); }
    const QuadIrr& value() const;
    ExtendedPoint conjugate() const;
    std::string str() const;

    friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;

private:
    std::variant<QuadIrr, Infinity> v_{QuadIrr{}};
};

// ∞ is greater than every finite point.
std::strong_ordering cmp(const ExtendedPoint& x, const ExtendedPoint& y);
std::ostream& operator<<(std::ostream& os, const ExtendedPoint& x);

struct Mat2 {
    Int a{1}, b{0}, c{0}, d{1};

    static Mat2 identity() { return {}; }
    static Mat2 of(long a, long b, long c, long d) { return {Int(a), Int(b), Int(c), Int(d)}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    Mat2 adj() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend bool operator==(const Mat2&, const Mat2&) = default;
    std::string str() const;
};

Mat2 power(const Mat2& m, long k);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

ExtendedPoint mobius(const Mat2& m, const ExtendedPoint& x);

} // namespace eisgeo
