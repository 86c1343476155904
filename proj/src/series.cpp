#include "eisgeo/series.hpp"
#include "eisgeo/errors.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace eisgeo {

namespace {

Scalar pairing(const TwistedCycle& T, long n, const SeriesOptions& opts) {
    if (!opts.both) return pair_with_twisted_cycle(T, n, opts.algorithm, opts.hecke);
    Scalar c = pair_with_twisted_cycle(T, n, Algorithm::cycle, opts.hecke);
    Scalar e = pair_with_twisted_cycle(T, n, Algorithm::enumerate, opts.hecke);
    if (!(c == e))
        throw VerificationMismatch("cycle and enumeration disagree at n = " + std::to_string(n) + ": " + c.str() +
                                   " vs " + e.str());
    return c;
}

} // namespace

QSeries diagonal_restriction(const FieldData& F, const NarrowClassGroup& G, const ClassCharacter& psi, long p,
                             const SeriesOptions& opts) {
    if (!psi.totally_odd) throw std::invalid_argument("diagonal restriction needs a totally odd character");
    if (opts.N < 1) throw std::invalid_argument("truncation must be at least 1");
    QSeries S;
    S.dF = F.dF;
    S.p = p;
    S.psi = psi;
    try {
        S.r = opts.r ? *opts.r : choose_r(F, p).r;
    } catch (const InertPrime&) {
        S.inert = true;
        S.coeffs.assign(opts.N, Scalar(0));
        S.pairings.assign(opts.N, Scalar(0));
        return S;
    }
    if (mod(Int(S.r) * S.r - F.dF, Int(4 * p)) != 0) throw std::invalid_argument("r^2 != dF mod 4p");
    ConstantTerm ct = constant_term(G, psi, p, S.r);
    S.constant = ct.value;
    S.euler_factor_p = ct.euler_factor_p;
    S.raw_L = ct.raw_L;

    TwistedCycle T = opts.class_reps ? twisted_cycle(G, psi, p, S.r, *opts.class_reps) : twisted_cycle(F, G, psi, p, S.r);
    S.pairings.assign(opts.N, Scalar(0));
    std::atomic<long> next{1};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (long n = next++; n <= opts.N; n = next++) {
            try {
                S.pairings[n - 1] = pairing(T, n, opts);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = opts.N + 1;
            }
        }
    };
    int threads = std::max(1, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (const Scalar& x : S.pairings) S.coeffs.push_back(Scalar(-kCoefficientFactor * kConventionSign) * x);
    return S;
}

long sigma1_p(long n, long p) {
    if (n < 1) throw std::invalid_argument("sigma1_p needs n >= 1");
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0 && d % p != 0) s += d;
    return s;
}

std::vector<Int> eta_product_11(long N) {
    // prod (1-q^k)^2 (1-q^{11k})^2 up to q^{N-1}, then shift by q
    std::vector<Int> c(N, Int(0));
    c[0] = 1;
    auto times = [&](long k) {
        for (long i = N - 1; i >= k; --i) c[i] -= c[i - k];
    };
    for (long k = 1; k < N; ++k) {
        times(k);
        times(k);
        if (11 * k < N) {
            times(11 * k);
            times(11 * k);
        }
    }
    return c; // c[n-1] is the coefficient of q^n
}

namespace {

bool same(const Scalar& x, const Scalar& y) {
    if (x.is_exact() && y.is_exact()) return x == y;
    return approx_equal(x, y, 1e-8);
}

} // namespace

ModularityReport modularity_check(const QSeries& S) {
    ModularityReport rep;
    auto fail = [&](long n, std::string why) {
        rep.ok = false;
        rep.first_failing_n = n;
        rep.detail = std::move(why);
        return rep;
    };
    long N = S.N();
    long p = S.p;
    bool zero = S.constant.is_zero();
    for (const Scalar& x : S.coeffs) zero = zero && x.is_zero();
    if (zero) {
        rep.detail = "zero series";
        return rep;
    }
    if (p == 2 || p == 3 || p == 5 || p == 7 || p == 13) {
        if (N < 1) return rep;
        const Scalar& a1 = S.a(1);
        if (!same(S.constant * Scalar(24), a1 * Scalar(p - 1)))
            return fail(0, "constant " + S.constant.str() + " is not a_1 (p-1)/24 for a_1 = " + a1.str());
        for (long n = 2; n <= N; ++n)
            if (!same(S.a(n), a1 * Scalar(sigma1_p(n, p))))
                return fail(n, "a_" + std::to_string(n) + " = " + S.a(n).str() + ", expected " +
                                   (a1 * Scalar(sigma1_p(n, p))).str());
        rep.detail = "proportional to the weight-2 Eisenstein series of level " + std::to_string(p);
        return rep;
    }
    if (p == 11) {
        if (N < 4) throw std::invalid_argument("level 11 check needs at least 4 coefficients");
        auto eta = eta_product_11(N);
        // S = c E + d f with E = 5/12 + sum sigma q^n, f = q + ...
        Scalar c = S.constant * Scalar(Rational(12, 5));
        Scalar d = S.a(1) - c;
        for (long n = 2; n <= N; ++n) {
            Scalar expect = c * Scalar(sigma1_p(n, 11)) + d * Scalar(Rational(eta[n - 1]));
            if (!same(S.a(n), expect))
                return fail(n, "a_" + std::to_string(n) + " = " + S.a(n).str() + ", expected " + expect.str());
        }
        rep.detail = "in the span of the Eisenstein series and eta(tau)^2 eta(11 tau)^2, cusp coefficient " + d.str();
        return rep;
    }
    throw NotApplicable("modularity check only supports levels 2, 3, 5, 7, 11, 13");
}

} // namespace eisgeo
