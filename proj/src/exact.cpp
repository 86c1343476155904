#include "eisgeo/exact.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace eisgeo {

int sgn(const Int& x) {
    int s = mpz_sgn(x.get_mpz_t());
    return (s > 0) - (s < 0);
}

Int isqrt(const Int& n) {
    if (sgn(n) < 0) throw std::invalid_argument("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

long mod(long a, long m) {
    if (m < 0) m = -m;
    long r = a % m;
    return r < 0 ? r + m : r;
}

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + x.get_str());
    return x.get_si();
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

// disc = k^2 * core with core squarefree. Trial division; discriminants here stay small.
std::pair<Int, Int> square_split(const Int& disc) {
    thread_local std::unordered_map<unsigned long, std::pair<unsigned long, unsigned long>> memo;
    bool small = disc.fits_ulong_p();
    if (small) {
        auto it = memo.find(disc.get_ui());
        if (it != memo.end()) return {Int(it->second.first), Int(it->second.second)};
    }
    Int core = disc, k = 1;
    for (unsigned long q = 2; q <= 1000000; ++q) {
        Int qq = Int(q) * q;
        if (qq > core) break;
        while (mpz_divisible_p(core.get_mpz_t(), qq.get_mpz_t())) {
            core /= qq;
            k *= q;
        }
    }
    if (core > 1 && is_square(core)) {
        Int s = isqrt(core);
        k *= s;
        core = 1;
    }
    if (small && k.fits_ulong_p() && core.fits_ulong_p()) {
        if (memo.size() > 100000) memo.clear();
        memo.emplace(disc.get_ui(), std::make_pair(core.get_ui(), k.get_ui()));
    }
    return {core, k};
}

int cmp_sqrt(const Int& u, const Int& v, const Int& disc) {
    // sign of u + v*sqrt(disc)
    int su = sgn(u), sv = sgn(v);
    if (sv == 0 || disc == 0) return su;
    if (su == 0 || su == sv) return sv;
    Int lhs = u * u, rhs = v * v * disc;
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
}

} // namespace

QuadIrr::QuadIrr(Int u, Int v, Int w, Int disc) : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)), disc_(std::move(disc)) {
    if (w_ == 0) throw std::invalid_argument("QuadIrr with zero denominator");
    if (v_ == 0) {
        disc_ = 1;
    } else {
        if (sgn(disc_) <= 0) throw std::invalid_argument("QuadIrr needs a positive radicand");
        auto [core, k] = square_split(disc_);
        v_ *= k;
        disc_ = core;
        if (disc_ == 1) {
            u_ += v_;
            v_ = 0;
        }
    }
    if (sgn(w_) < 0) {
        u_ = -u_;
        v_ = -v_;
        w_ = -w_;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), u_.get_mpz_t(), v_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w_.get_mpz_t());
    if (g != 1) {
        u_ /= g;
        v_ /= g;
        w_ /= g;
    }
}

QuadIrr::QuadIrr(const Rational& q) : QuadIrr(q.get_num(), 0, q.get_den(), 1) {}

Rational QuadIrr::rational() const {
    if (!is_rational()) throw std::logic_error("irrational value " + str() + " used as rational");
    return Rational(u_, w_);
}

QuadIrr QuadIrr::conjugate() const {
    QuadIrr r = *this;
    r.v_ = -r.v_;
    return r;
}

Rational QuadIrr::norm() const {
    Rational r(u_ * u_ - v_ * v_ * disc_, w_ * w_);
    r.canonicalize();
    return r;
}

Rational QuadIrr::trace() const {
    Rational r(2 * u_, w_);
    r.canonicalize();
    return r;
}

int QuadIrr::sign() const { return cmp_sqrt(u_, v_, disc_); }

Int QuadIrr::floor() const {
    Int t;
    if (sgn(v_) > 0) {
        t = isqrt(v_ * v_ * disc_);
    } else if (sgn(v_) < 0) {
        t = -isqrt(v_ * v_ * disc_) - 1;
    }
    Int q;
    Int num = u_ + t;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), w_.get_mpz_t());
    return q;
}

Int QuadIrr::ceil() const {
    QuadIrr neg = -*this;
    return -neg.floor();
}

double QuadIrr::to_double() const {
    return (u_.get_d() + v_.get_d() * std::sqrt(disc_.get_d())) / w_.get_d();
}

std::string QuadIrr::str() const {
    std::ostringstream os;
    if (is_rational()) {
        os << u_;
        if (w_ != 1) os << "/" << w_;
        return os.str();
    }
    os << "(" << u_ << (sgn(v_) < 0 ? "-" : "+");
    Int av = abs(v_);
    if (av != 1) os << av << "*";
    os << "sqrt(" << disc_ << "))/" << w_;
    return os.str();
}

QuadIrr QuadIrr::operator-() const {
    QuadIrr r = *this;
    r.u_ = -r.u_;
    r.v_ = -r.v_;
    return r;
}

namespace {
Int common_disc(const QuadIrr& x, const QuadIrr& y) {
    if (x.is_rational()) return y.disc();
    if (y.is_rational() || x.disc() == y.disc()) return x.disc();
    throw std::domain_error("QuadIrr arithmetic across different quadratic fields");
}
} // namespace

QuadIrr operator+(const QuadIrr& x, const QuadIrr& y) {
    Int d = common_disc(x, y);
    return QuadIrr(x.u_ * y.w_ + y.u_ * x.w_, x.v_ * y.w_ + y.v_ * x.w_, x.w_ * y.w_, d);
}

QuadIrr operator-(const QuadIrr& x, const QuadIrr& y) { return x + (-y); }

QuadIrr operator*(const QuadIrr& x, const QuadIrr& y) {
    Int d = common_disc(x, y);
    return QuadIrr(x.u_ * y.u_ + x.v_ * y.v_ * d, x.u_ * y.v_ + x.v_ * y.u_, x.w_ * y.w_, d);
}

QuadIrr operator/(const QuadIrr& x, const QuadIrr& y) {
    if (y.u_ == 0 && y.v_ == 0) throw std::domain_error("QuadIrr division by zero");
    Int d = common_disc(x, y);
    // 1/y = w (u - v s) / (u^2 - v^2 D)
    Int n = y.u_ * y.u_ - y.v_ * y.v_ * d;
    QuadIrr inv(y.w_ * y.u_, -y.w_ * y.v_, n, d);
    return x * inv;
}

std::strong_ordering cmp(const QuadIrr& x, const QuadIrr& y) {
    int s;
    if (x.is_rational() && y.is_rational()) {
        Int l = x.u() * y.w(), r = y.u() * x.w();
        s = l < r ? -1 : (l > r ? 1 : 0);
    } else {
        s = (x - y).sign();
    }
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const QuadIrr& x) { return os << x.str(); }

const QuadIrr& ExtendedPoint::value() const {
    if (is_infinity()) throw std::logic_error("value() of the point at infinity");
    return std::get<QuadIrr>(v_);
}

ExtendedPoint ExtendedPoint::conjugate() const {
    if (is_infinity()) return *this;
    return ExtendedPoint(value().conjugate());
}

std::string ExtendedPoint::str() const { return is_infinity() ? std::string("oo") : value().str(); }

std::strong_ordering cmp(const ExtendedPoint& x, const ExtendedPoint& y) {
    if (x.is_infinity() || y.is_infinity()) {
        if (x.is_infinity() && y.is_infinity()) return std::strong_ordering::equal;
        return x.is_infinity() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return cmp(x.value(), y.value());
}

std::ostream& operator<<(std::ostream& os, const ExtendedPoint& x) { return os << x.str(); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

// negative exponents use the adjugate, i.e. assume det = 1
Mat2 power(const Mat2& m, long k) {
    Mat2 base = k < 0 ? m.adj() : m;
    unsigned long e = k < 0 ? -(unsigned long)k : (unsigned long)k;
    Mat2 r;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << m.str(); }

ExtendedPoint mobius(const Mat2& m, const ExtendedPoint& x) {
    if (x.is_infinity()) {
        if (m.c == 0) return Infinity{};
        return ExtendedPoint(QuadIrr(m.a, 0, m.c, 1));
    }
    const QuadIrr& z = x.value();
    QuadIrr den = QuadIrr(m.c, 0, 1, 1) * z + QuadIrr(m.d, 0, 1, 1);
    if (den.u() == 0 && den.v() == 0) return Infinity{};
    QuadIrr num = QuadIrr(m.a, 0, 1, 1) * z + QuadIrr(m.b, 0, 1, 1);
    return ExtendedPoint(num / den);
}

} // namespace eisgeo
