#include "eisgeo/geodesic.hpp"
#include "eisgeo/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace eisgeo {

int straddle(const Geodesic& g) {
    ExtendedPoint zero(0L);
    if (g.alpha == zero || g.beta == zero) throw NonTransverse("geodesic endpoint at 0");
    auto a = cmp(g.alpha, zero), b = cmp(g.beta, zero);
    if (b < 0 && a > 0) return 1;
    if (a < 0 && b > 0) return -1;
    return 0;
}

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

namespace {

long gamma0_power(const Mat2& a, long p) {
    Int P(p);
    Mat2 cur = a;
    for (long k = 1; k <= p + 1; ++k) {
        if (mod(cur.c, P) == 0) return k;
        cur = cur * a;
        cur = {mod(cur.a, P), mod(cur.b, P), mod(cur.c, P), mod(cur.d, P)};
    }
    throw std::logic_error("no power of the automorph lies in Gamma_0(p)");
}

} // namespace

ClosedGeodesic make_closed_geodesic(const QuadForm& form, long p) {
    Int d = form.disc();
    if (sgn(d) <= 0 || is_square(d)) throw DomainError("closed geodesic needs a positive nonsquare discriminant");
    if (form.content() != 1) throw std::invalid_argument("closed geodesic needs a primitive form, got " + form.str());
    ClosedGeodesic Q;
    Q.form = form;
    Q.p = p;
    Q.sl2_generator = automorph(form);
    Q.power = gamma0_power(Q.sl2_generator, p);
    Q.gamma = power(Q.sl2_generator, Q.power);
    return Q;
}

ClosedGeodesic ClosedGeodesic::reversed() const {
    ClosedGeodesic R = *this;
    R.form = -form;
    R.sl2_generator = sl2_generator.adj();
    R.gamma = gamma.adj();
    return R;
}

ClosedGeodesic translate(const ClosedGeodesic& Q, const Mat2& g) {
    if (g.det() != 1 || mod(g.c, Int(Q.p)) != 0) throw std::invalid_argument("translate needs an element of Gamma_0(p)");
    ClosedGeodesic R = Q;
    R.form = act(g, Q.form);
    R.sl2_generator = g * Q.sl2_generator * g.adj();
    R.gamma = g * Q.gamma * g.adj();
    return R;
}

bool gamma0_equivalent(const ClosedGeodesic& x, const ClosedGeodesic& y) {
    if (x.p != y.p || x.disc() != y.disc()) return false;
    auto cls = gamma0_classifier(x.disc(), x.p);
    return cls->key(x.form) == cls->key(y.form);
}

RChoice choose_r(const FieldData& F, long p) {
    if (!is_odd_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not an odd prime");
    Int P(p);
    if (mod(F.dF, P) == 0) throw DomainError("p = " + std::to_string(p) + " ramifies in the field");
    if (mpz_legendre(mod(F.dF, P).get_mpz_t(), P.get_mpz_t()) != 1)
        throw InertPrime("p = " + std::to_string(p) + " is inert");
    Int four_p = 4 * P;
    long bound = to_long(isqrt(F.dF)) + 4 * p + 2;
    for (long r = 1; r <= bound; ++r) {
        Int r2 = Int(r) * r;
        if (r2 > F.dF && mod(r2 - F.dF, four_p) == 0) return {r, QuadIrr(Int(-r), 1, 2, F.dF), (r2 - F.dF) / 2};
    }
    throw std::logic_error("no square root of dF modulo 4p found");
}

QuadForm base_rm_form(const FieldData& F, long r) {
    Int num = Int(r) * r - F.dF;
    if (mod(num, Int(4)) != 0) throw std::invalid_argument("r^2 - dF not divisible by 4");
    return {num / 4, Int(-r), Int(1)};
}

ClosedGeodesic rm_point_from(const QuadForm& f, long p, long r) {
    Int P(p);
    Int target = mod(Int(-r), P);
    for (long x = 0; x <= p; ++x) {
        Mat2 m = x < p ? Mat2::of(x, -1, 1, 0) : Mat2::identity();
        QuadForm g = pullback(f, m);
        if (mod(g.a, P) == 0 && mod(g.b, P) == target) return make_closed_geodesic(g, p);
    }
    throw DomainError("no level-" + std::to_string(p) + " refinement of " + f.str() + " for r = " + std::to_string(r));
}

ClosedGeodesic rm_point(const FieldData& F, const NarrowClassGroup& G, int cls, long p, long r) {
    if (cls < 0 || cls >= G.size()) throw std::out_of_range("class index out of range");
    if (mod(Int(r) * r - F.dF, Int(4 * p)) != 0) throw std::invalid_argument("r^2 != dF mod 4p");
    return rm_point_from(G.class_reps[cls], p, r);
}

RmPointPair rm_point_pair(const FieldData& F, const NarrowClassGroup& G, int cls, long p, long r) {
    return {cls, r, rm_point(F, G, cls, p, r), rm_point(F, G, cls, p, -r)};
}

TwistedCycle twisted_cycle(const FieldData& F, const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r) {
    if (mod(Int(r) * r - F.dF, Int(4 * p)) != 0) throw std::invalid_argument("r^2 != dF mod 4p");
    return twisted_cycle(G, psi, p, r, G.class_reps);
}

TwistedCycle twisted_cycle(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r,
                           const std::vector<QuadForm>& reps) {
    if (!psi.totally_odd) throw std::invalid_argument("twisted cycle needs a totally odd character");
    if (static_cast<int>(reps.size()) != G.size()) throw std::invalid_argument("one representative per class expected");
    TwistedCycle T;
    T.p = p;
    T.r = r;
    for (int c = 0; c < G.size(); ++c) {
        if (G.class_of(reps[c]) != c) throw std::invalid_argument(reps[c].str() + " is not in class " + std::to_string(c));
        T.terms.push_back({psi.value(c), rm_point_from(reps[c], p, r), c, r});
        T.terms.push_back({psi.value(c), rm_point_from(reps[c], p, -r), c, -r});
    }
    return T;
}

long intersect_winding_cycle(const ClosedGeodesic& Q) {
    return gamma0_classifier(Q.disc(), Q.p)->winding_sum(Q.form);
}

namespace {

struct FareyEdge {
    Int p1, q1, p2, q2; // p1/q1 < p2/q2, p2 q1 - p1 q2 = 1
};

} // namespace

long intersect_winding_enum(const ClosedGeodesic& Q, const std::optional<Rational>& base_x) {
    const QuadForm& f = Q.form;
    QuadIrr w = Q.w(), ws = Q.w_sigma();
    QuadIrr lo = cmp(w, ws) < 0 ? w : ws;
    QuadIrr hi = cmp(w, ws) < 0 ? ws : w;

    Rational x0 = base_x ? *base_x : Rational(-f.b, 2 * f.a);
    x0.canonicalize();
    if (!(cmp(lo, QuadIrr(x0)) < 0 && cmp(QuadIrr(x0), hi) < 0)) throw std::invalid_argument("base point off the geodesic");
    // height^2 of the point of Q above x0
    Rational y2 = -(f.a * x0 * x0 + f.b * x0 + f.c) / f.a;
    const Mat2& A = Q.sl2_generator;
    Rational cx = A.c * x0 + A.d;
    Rational x1 = ((A.a * x0 + A.b) * cx + A.a * A.c * y2) / (cx * cx + A.c * A.c * y2);
    x1.canonicalize();
    bool forward = x0 < x1;
    Rational wmin = forward ? x0 : x1, wmax = forward ? x1 : x0;
    // half-open arc [tau0, A tau0)
    auto in_window = [&](const Rational& x) { return forward ? (x0 <= x && x < x1) : (x1 < x && x <= x0); };

    std::vector<Mat2> crossing;
    Int nlo, nhi;
    mpz_cdiv_q(nlo.get_mpz_t(), wmin.get_num_mpz_t(), wmin.get_den_mpz_t());
    mpz_fdiv_q(nhi.get_mpz_t(), wmax.get_num_mpz_t(), wmax.get_den_mpz_t());
    for (Int n = nlo; n <= nhi; ++n)
        if (in_window(Rational(n))) crossing.push_back({1, n, 0, 1});

    QuadIrr qwmin(wmin), qwmax(wmax);
    std::vector<FareyEdge> stack;
    for (Int n = lo.floor(); n <= hi.floor(); ++n) stack.push_back({n, 1, n + 1, 1});
    while (!stack.empty()) {
        FareyEdge e = std::move(stack.back());
        stack.pop_back();
        int s1 = sgn(f.eval(e.p1, e.q1)), s2 = sgn(f.eval(e.p2, e.q2));
        QuadIrr xa(e.p1, 0, e.q1, 1), xb(e.p2, 0, e.q2, 1);
        bool crosses = s1 != s2;
        bool covers = !crosses && cmp(xa, lo) < 0 && cmp(hi, xb) < 0;
        if (!crosses && !covers) continue;
        const QuadIrr& left = cmp(xa, lo) > 0 ? xa : lo;
        const QuadIrr& right = cmp(xb, hi) < 0 ? xb : hi;
        if (cmp(left, qwmax) > 0 || cmp(right, qwmin) < 0) continue;
        if (crosses) {
            Int num = f.a * e.p1 * e.p2 - f.c * e.q1 * e.q2;
            Int den = f.a * (e.p1 * e.q2 + e.p2 * e.q1) + f.b * e.q1 * e.q2;
            Rational xc(num, den);
            xc.canonicalize();
            if (in_window(xc)) crossing.push_back({e.p2, e.p1, e.q2, e.q1});
        }
        Int pm = e.p1 + e.p2, qm = e.q1 + e.q2;
        stack.push_back({e.p1, e.q1, pm, qm});
        stack.push_back({pm, qm, e.p2, e.q2});
    }

    Int P(Q.p);
    ExtendedPoint W(w), WS(ws);
    long total = 0;
    for (const Mat2& g : crossing) {
        Mat2 gs{g.b, -g.a, g.d, -g.c}; // g S: same edge, reversed
        int sg = 0, sgs = 0;
        bool have_sg = false, have_sgs = false;
        // lower row of A^j modulo p
        Int r0 = 0, r1 = 1;
        for (long j = 0; j < Q.power; ++j) {
            if (mod(r0 * g.a + r1 * g.c, P) == 0) {
                if (!have_sg) {
                    Mat2 gi = g.adj();
                    sg = straddle({mobius(gi, W), mobius(gi, WS)});
                    have_sg = true;
                }
                total += sg;
            }
            if (mod(r0 * gs.a + r1 * gs.c, P) == 0) {
                if (!have_sgs) {
                    Mat2 gi = gs.adj();
                    sgs = straddle({mobius(gi, W), mobius(gi, WS)});
                    have_sgs = true;
                }
                total += sgs;
            }
            Int n0 = mod(r0 * A.a + r1 * A.c, P), n1 = mod(r0 * A.b + r1 * A.d, P);
            r0 = n0;
            r1 = n1;
        }
    }
    return total;
}

} // namespace eisgeo
