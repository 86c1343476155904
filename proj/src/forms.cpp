#include "eisgeo/forms.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eisgeo {

Int QuadForm::content() const {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

QuadForm QuadForm::primitive() const {
    Int g = content();
    if (g == 0) throw std::invalid_argument("zero form");
    return {a / g, b / g, c / g};
}

QuadIrr QuadForm::first_root() const {
    if (a == 0) throw std::domain_error("form " + str() + " has a root at infinity");
    return QuadIrr(-b, 1, 2 * a, disc());
}

QuadIrr QuadForm::second_root() const {
    if (a == 0) throw std::domain_error("form " + str() + " has a root at infinity");
    return QuadIrr(-b, -1, 2 * a, disc());
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << "[" << a << "," << b << "," << c << "]";
    return os.str();
}

std::strong_ordering operator<=>(const QuadForm& x, const QuadForm& y) {
    auto three = [](const Int& l, const Int& r) {
        int s = cmp(l, r);
        return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    };
    if (auto o = three(x.a, y.a); o != 0) return o;
    if (auto o = three(x.b, y.b); o != 0) return o;
    return three(x.c, y.c);
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) { return os << f.str(); }

QuadForm pullback(const QuadForm& f, const Mat2& m) {
    return {f.eval(m.a, m.c),
            2 * f.a * m.a * m.b + f.b * (m.a * m.d + m.b * m.c) + 2 * f.c * m.c * m.d,
            f.eval(m.b, m.d)};
}

QuadForm act(const Mat2& g, const QuadForm& f) { return pullback(f, g.adj()); }

QuadForm principal_form(const Int& disc) {
    Int delta = mod(disc, Int(2));
    return {Int(1), delta, (delta - disc) / 4};
}

namespace {

// x < sqrt(d)
bool below_sqrt(const Int& x, const Int& d) { return sgn(x) < 0 || x * x < d; }
// sqrt(d) < y
bool above_sqrt(const Int& y, const Int& d) { return sgn(y) > 0 && y * y > d; }

} // namespace

bool is_reduced(const QuadForm& f) {
    Int d = f.disc();
    if (sgn(f.b) <= 0 || !below_sqrt(f.b, d)) return false;
    Int aa = 2 * abs(f.a);
    return below_sqrt(aa - f.b, d) && above_sqrt(aa + f.b, d);
}

FormStep rho(const QuadForm& f) {
    if (f.c == 0) throw std::domain_error("rho on a form with c = 0");
    Int d = f.disc();
    Int ac = abs(f.c), twoc = 2 * ac;
    Int bp;
    if (ac * ac > d) {
        bp = mod(-f.b, twoc);
        if (bp > ac) bp -= twoc;
    } else {
        Int s = isqrt(d);
        bp = s - mod(s + f.b, twoc);
    }
    Int s = (bp + f.b) / (2 * f.c);
    Mat2 m{0, -1, 1, s};
    QuadForm g{f.c, bp, (bp * bp - d) / (4 * f.c)};
    return {g, m};
}

Reduction reduce(const QuadForm& f) {
    Reduction r{f, Mat2::identity()};
    for (int guard = 0; !is_reduced(r.form); ++guard) {
        if (guard > 100000) throw std::logic_error("reduction did not terminate for " + f.str());
        FormStep st = rho(r.form);
        r.form = st.form;
        r.transform = r.transform * st.m;
    }
    return r;
}

std::vector<QuadForm> reduced_forms(const Int& disc) {
    if (sgn(disc) <= 0 || is_square(disc)) throw std::domain_error("discriminant must be positive and nonsquare");
    std::vector<QuadForm> out;
    Int s = isqrt(disc);
    for (Int b = mod(disc, Int(2)); b <= s; b += 2) {
        if (b == 0) continue;
        Int m = (disc - b * b) / 4;
        for (Int q = 1; q * q <= m; ++q) {
            if (!mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) continue;
            Int q2 = m / q;
            for (const Int& A : {q, q2}) {
                for (int sign : {1, -1}) {
                    QuadForm f{sign * A, b, -sign * (m / A)};
                    if (is_reduced(f) && f.content() == 1) out.push_back(f);
                }
                if (q == q2) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cycle cycle_of(const QuadForm& reduced) {
    if (!is_reduced(reduced)) throw std::invalid_argument("cycle_of needs a reduced form, got " + reduced.str());
    Cycle cyc;
    cyc.forms.push_back(reduced);
    cyc.prefix.push_back(Mat2::identity());
    QuadForm cur = reduced;
    Mat2 acc;
    for (;;) {
        FormStep st = rho(cur);
        cur = st.form;
        acc = acc * st.m;
        if (cur == reduced) break;
        cyc.forms.push_back(cur);
        cyc.prefix.push_back(acc);
    }
    cyc.automorph = acc;
    return cyc;
}

PellSolution pell_fundamental(const Int& disc) {
    QuadForm g = reduce(principal_form(disc)).form;
    Mat2 m = cycle_of(g).automorph;
    return {abs(m.trace()), abs(m.c / g.a)};
}

std::optional<PellSolution> pell_bruteforce(const Int& disc, long bound) {
    for (long u = 1; u <= bound; ++u) {
        Int t2 = disc * u * u + 4;
        if (is_square(t2)) return PellSolution{isqrt(t2), Int(u)};
    }
    return std::nullopt;
}

Mat2 automorph(const QuadForm& f, const PellSolution& e) {
    return {(e.t - f.b * e.u) / 2, -f.c * e.u, f.a * e.u, (e.t + f.b * e.u) / 2};
}

Mat2 automorph(const QuadForm& f) { return automorph(f, pell_fundamental(f.disc())); }

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    Int d = f.disc();
    if (g.disc() != d) throw std::invalid_argument("composition of forms with different discriminants");
    Int s = (f.b + g.b) / 2;
    Int d1, x1, y1, e, x2, z;
    mpz_gcdext(d1.get_mpz_t(), x1.get_mpz_t(), y1.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
    mpz_gcdext(e.get_mpz_t(), x2.get_mpz_t(), z.get_mpz_t(), d1.get_mpz_t(), s.get_mpz_t());
    Int x = x2 * x1, y = x2 * y1;
    Int A = f.a * g.a / (e * e);
    Int B = (x * f.a * g.b + y * g.a * f.b + z * (f.b * g.b + d) / 2) / e;
    B = mod(B, 2 * abs(A));
    return {A, B, (B * B - d) / (4 * A)};
}

Gamma0Classifier::Gamma0Classifier(Int disc, long p) : disc_(std::move(disc)), p_(p) {
    if (p < 2) throw std::invalid_argument("level must be at least 2");
    for (const QuadForm& f : reduced_forms(disc_)) {
        if (where_.count(f)) continue;
        // reduced_forms is sorted, so the first unseen form is the minimum of its cycle
        Cycle cyc = cycle_of(f);
        int id = static_cast<int>(cycles_.size());
        for (size_t i = 0; i < cyc.forms.size(); ++i) where_[cyc.forms[i]] = {id, static_cast<int>(i)};
        Mat2 am{mod(cyc.automorph.a, Int(p)), mod(cyc.automorph.b, Int(p)), mod(cyc.automorph.c, Int(p)),
                mod(cyc.automorph.d, Int(p))};
        automorph_mod_p_.push_back(am);
        cycles_.push_back(std::move(cyc));

        std::vector<long> orbit(p + 1, -1);
        for (long start = 0; start <= p; ++start) {
            if (orbit[start] >= 0) continue;
            std::vector<long> members;
            long idx = start;
            Int x = start < p ? Int(start) : Int(1), y = start < p ? Int(1) : Int(0);
            do {
                members.push_back(idx);
                Int nx = am.a * x + am.b * y, ny = am.c * x + am.d * y;
                x = nx;
                y = ny;
                idx = p1_index(x, y);
            } while (idx != start);
            long mn = *std::min_element(members.begin(), members.end());
            for (long m : members) orbit[m] = mn;
        }
        orbit_min_.push_back(std::move(orbit));
    }
}

long Gamma0Classifier::p1_index(const Int& x, const Int& y) const {
    Int P(p_);
    Int ym = mod(y, P);
    if (ym == 0) return p_;
    Int inv;
    mpz_invert(inv.get_mpz_t(), ym.get_mpz_t(), P.get_mpz_t());
    return mod(x * inv, P).get_si();
}

Gamma0Classifier::Located Gamma0Classifier::locate(const QuadForm& h) const {
    if (h.disc() != disc_) throw std::invalid_argument("form " + h.str() + " has the wrong discriminant");
    if (h.content() != 1) throw std::invalid_argument("form " + h.str() + " is not primitive");
    Reduction r = reduce(h);
    auto it = where_.find(r.form);
    if (it == where_.end()) throw std::logic_error("reduced form missing from cycle table: " + r.form.str());
    auto [cyc, pos] = it->second;
    return {cyc, cycles_[cyc].prefix[pos] * r.transform.adj()};
}

Gamma0Classifier::Key Gamma0Classifier::key(const QuadForm& h) const {
    Located l = locate(h);
    return {l.cycle, orbit_min_[l.cycle][p1_index(l.n.a, l.n.c)]};
}

std::optional<Mat2> Gamma0Classifier::equivalence(const QuadForm& f, const QuadForm& g) const {
    Located lf = locate(f), lg = locate(g);
    if (lf.cycle != lg.cycle) return std::nullopt;
    long target = p1_index(lf.n.a, lf.n.c);
    const Mat2& a0 = cycles_[lg.cycle].automorph;
    Mat2 cur = lg.n;
    for (long k = 0; k <= p_ + 1; ++k) {
        if (p1_index(cur.a, cur.c) == target) return lf.n.adj() * cur;
        cur = a0 * cur;
    }
    return std::nullopt;
}

void Gamma0Classifier::build_winding() const {
    Int s = isqrt(disc_);
    Int b = -s;
    if (mod(b - disc_, Int(2)) != 0) b += 1;
    for (; b <= s; b += 2) {
        Int m = (disc_ - b * b) / 4;
        for (Int q = 1; q * q <= m; ++q) {
            if (!mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) continue;
            Int q2 = m / q;
            for (const Int& A : {q, q2}) {
                for (int sign : {1, -1}) {
                    QuadForm f{sign * A, b, -sign * (m / A)};
                    if (f.content() != 1) continue;
                    winding_[key(f)].push_back(f);
                }
                if (q == q2) break;
            }
        }
    }
}

std::vector<QuadForm> Gamma0Classifier::winding_forms(const QuadForm& h) const {
    std::call_once(winding_once_, [this] { build_winding(); });
    auto it = winding_.find(key(h));
    return it == winding_.end() ? std::vector<QuadForm>{} : it->second;
}

long Gamma0Classifier::winding_sum(const QuadForm& h) const {
    long total = 0;
    for (const QuadForm& f : winding_forms(h)) total += sgn(f.a);
    return total;
}

std::shared_ptr<const Gamma0Classifier> gamma0_classifier(const Int& disc, long p) {
    static std::mutex mu;
    static std::map<std::pair<Int, long>, std::shared_ptr<const Gamma0Classifier>> cache;
    auto k = std::make_pair(disc, p);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const Gamma0Classifier>(disc, p);
    std::lock_guard lock(mu);
    return cache.emplace(k, built).first->second;
}

} // namespace eisgeo
