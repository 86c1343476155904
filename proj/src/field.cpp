#include "eisgeo/field.hpp"
#include "eisgeo/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eisgeo {

bool is_squarefree(const Int& n) {
    if (sgn(n) <= 0) return false;
    Int m = n;
    for (Int q = 2; q * q <= m; ++q) {
        if (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
            m /= q;
            if (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) return false;
        }
    }
    return true;
}

FieldData build_field(const Int& D) {
    if (D <= 1 || !is_squarefree(D)) throw DomainError("D = " + D.get_str() + " is not a squarefree integer > 1");
    FieldData F;
    F.D = D;
    F.dF = mod(D, Int(4)) == 1 ? D : 4 * D;
    F.lambda = QuadIrr(F.dF, 1, 2, F.dF);

    // smallest y with x^2 - dF y^2 = -4 or 4
    std::optional<std::pair<Int, Int>> sol;
    int norm = 0;
    for (long y = 1; y <= 2000000 && !sol; ++y) {
        Int dy2 = F.dF * y * y;
        if (dy2 > 4 && is_square(dy2 - 4)) {
            sol = {isqrt(dy2 - 4), Int(y)};
            norm = -1;
        } else if (is_square(dy2 + 4)) {
            sol = {isqrt(dy2 + 4), Int(y)};
            norm = 1;
        }
    }
    if (!sol) {
        // too large for the search: derive from the cycle of the principal form
        PellSolution e = pell_fundamental(F.dF);
        Int t2 = e.t - 2, u2 = (e.t + 2);
        if (is_square(t2) && mpz_divisible_p(u2.get_mpz_t(), F.dF.get_mpz_t()) && is_square(u2 / F.dF)) {
            sol = {isqrt(t2), isqrt(u2 / F.dF)};
            norm = -1;
        } else {
            sol = {e.t, e.u};
            norm = 1;
        }
    }
    F.eps = QuadIrr(sol->first, sol->second, 2, F.dF);
    F.unit_norm = norm;
    F.eps_plus = norm == 1 ? F.eps : F.eps * F.eps;
    return F;
}

int NarrowClassGroup::inverse(int c) const {
    for (int j = 0; j < size(); ++j)
        if (table[c][j] == identity()) return j;
    throw std::logic_error("class without inverse");
}

int NarrowClassGroup::order(int c) const {
    int k = 1;
    for (int x = c; x != identity(); x = table[x][c]) ++k;
    return k;
}

int NarrowClassGroup::class_of(const QuadForm& f) const {
    if (f.disc() != dF) throw std::invalid_argument("form " + f.str() + " does not have discriminant " + dF.get_str());
    if (f.content() != 1) throw std::invalid_argument("form " + f.str() + " is not primitive");
    auto it = reduced_class.find(reduce(f).form);
    if (it == reduced_class.end()) throw std::logic_error("reduced form outside every cycle");
    return it->second;
}

namespace {

std::map<QuadForm, int> cycle_lookup(const std::vector<QuadForm>& reps) {
    std::map<QuadForm, int> out;
    for (size_t i = 0; i < reps.size(); ++i)
        for (const QuadForm& f : cycle_of(reps[i]).forms) out[f] = static_cast<int>(i);
    return out;
}

} // namespace

NarrowClassGroup NarrowClassGroup::from_parts(Int dF, std::vector<QuadForm> reps, std::vector<std::vector<int>> table,
                                              int sqrt_class) {
    NarrowClassGroup G;
    G.dF = std::move(dF);
    G.class_reps = std::move(reps);
    G.table = std::move(table);
    G.class_of_principal_sqrt_dF = sqrt_class;
    int h = G.size();
    if (h == 0 || static_cast<int>(G.table.size()) != h || sqrt_class < 0 || sqrt_class >= h)
        throw std::invalid_argument("inconsistent class group data");
    for (const auto& row : G.table)
        if (static_cast<int>(row.size()) != h ||
            std::any_of(row.begin(), row.end(), [h](int x) { return x < 0 || x >= h; }))
            throw std::invalid_argument("inconsistent class group table");
    for (const QuadForm& f : G.class_reps)
        if (f.disc() != G.dF || !is_reduced(f)) throw std::invalid_argument("bad class representative " + f.str());
    G.reduced_class = cycle_lookup(G.class_reps);
    if (G.class_of(principal_form(G.dF)) != 0) throw std::invalid_argument("identity class is not first");
    for (int i = 0; i < h; ++i) {
        if (G.class_of(G.class_reps[i]) != i) throw std::invalid_argument("class representatives out of order");
        for (int j = 0; j < h; ++j)
            if (G.class_of(compose(G.class_reps[i], G.class_reps[j])) != G.table[i][j])
                throw std::invalid_argument("class group table disagrees with composition");
    }
    if (G.class_of(sqrt_dF_form(G.dF)) != sqrt_class) throw std::invalid_argument("wrong class for (sqrt dF)");
    return G;
}

NarrowClassGroup narrow_class_group(const FieldData& F) {
    NarrowClassGroup G;
    G.dF = F.dF;
    std::vector<QuadForm> canon;
    std::map<QuadForm, int> seen;
    for (const QuadForm& f : reduced_forms(F.dF)) {
        if (seen.count(f)) continue;
        for (const QuadForm& g : cycle_of(f).forms) seen[g] = 1;
        canon.push_back(f); // sorted input: first member seen is the cycle minimum
    }
    QuadForm id = reduce(principal_form(F.dF)).form;
    auto idpos = std::find_if(canon.begin(), canon.end(), [&](const QuadForm& f) {
        auto forms = cycle_of(f).forms;
        return std::find(forms.begin(), forms.end(), id) != forms.end();
    });
    std::rotate(canon.begin(), idpos, idpos + 1);
    std::sort(canon.begin() + 1, canon.end());
    G.class_reps = canon;
    G.reduced_class = cycle_lookup(canon);

    int h = G.size();
    G.table.assign(h, std::vector<int>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) G.table[i][j] = G.class_of(compose(canon[i], canon[j]));
    G.class_of_principal_sqrt_dF = G.class_of(sqrt_dF_form(F.dF));
    return G;
}

QuadForm ideal_to_form(const Int& dF, const Int& a0, const Int& b0) {
    if (sgn(a0) <= 0) throw std::invalid_argument("ideal norm must be positive");
    Int num = b0 * b0 - dF;
    if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a0).get_mpz_t()))
        throw std::invalid_argument("[a0, (-b0+sqrt d)/2] is not an ideal basis");
    return {a0, b0, num / (4 * a0)};
}

int class_of_ideal(const NarrowClassGroup& G, const Int& a0, const Int& b0) {
    return G.class_of(ideal_to_form(G.dF, a0, b0));
}

QuadForm sqrt_dF_form(const Int& dF) {
    // (sqrt dF) = (2)(sqrt(dF/4)) when 4 | dF, basis [dF/4, sqrt(dF/4)]; otherwise basis [dF, (dF + sqrt dF)/2]
    if (mod(dF, Int(4)) == 0) return ideal_to_form(dF, dF / 4, Int(0));
    return ideal_to_form(dF, dF, -dF);
}

ClassCharacter ClassCharacter::inverse() const {
    ClassCharacter r = *this;
    for (long& e : r.exponent) e = mod(-e, order);
    return r;
}

std::vector<ClassCharacter> characters(const NarrowClassGroup& G) {
    int h = G.size();
    std::vector<int> ord(h);
    long e = 1;
    for (int c = 0; c < h; ++c) {
        ord[c] = G.order(c);
        e = std::lcm(e, static_cast<long>(ord[c]));
    }
    // greedy generating set, largest orders first
    std::vector<int> by_order(h);
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(), [&](int x, int y) { return ord[x] > ord[y]; });
    std::vector<int> gens;
    std::vector<char> in_sub(h, 0);
    in_sub[G.identity()] = 1;
    for (int c : by_order) {
        if (in_sub[c]) continue;
        gens.push_back(c);
        std::vector<int> sub;
        for (int x = 0; x < h; ++x)
            if (in_sub[x]) sub.push_back(x);
        for (int x : sub)
            for (int y = c, k = 1; k <= ord[c]; y = G.table[y][c], ++k) in_sub[G.table[x][y]] = 1;
    }

    std::vector<ClassCharacter> out;
    std::vector<long> choice(gens.size(), 0);
    auto try_assign = [&]() -> std::optional<std::vector<long>> {
        std::vector<long> val(h, -1);
        val[G.identity()] = 0;
        std::vector<int> queue{G.identity()};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (size_t i = 0; i < gens.size(); ++i) {
                int y = G.table[x][gens[i]];
                long v = mod(val[x] + choice[i], e);
                if (val[y] < 0) {
                    val[y] = v;
                    queue.push_back(y);
                } else if (val[y] != v) {
                    return std::nullopt;
                }
            }
        }
        for (int x = 0; x < h; ++x)
            for (int y = 0; y < h; ++y)
                if (mod(val[x] + val[y], e) != val[G.table[x][y]]) return std::nullopt;
        return val;
    };
    for (;;) {
        if (auto val = try_assign()) {
            long g = e;
            for (long v : *val) g = std::gcd(g, v);
            ClassCharacter chi;
            chi.order = e / g;
            for (long v : *val) chi.exponent.push_back(v / g);
            chi.totally_odd = chi.value(G.class_of_principal_sqrt_dF) == Scalar(-1);
            out.push_back(chi);
        }
        size_t i = 0;
        for (; i < gens.size(); ++i) {
            long step = e / ord[gens[i]];
            choice[i] += step;
            if (choice[i] < e) break;
            choice[i] = 0;
        }
        if (i == gens.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const ClassCharacter& x, const ClassCharacter& y) {
        if (x.order != y.order) return x.order < y.order;
        return x.exponent < y.exponent;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (static_cast<int>(out.size()) != h) throw std::logic_error("character count differs from class number");
    return out;
}

std::vector<ClassCharacter> odd_characters(const NarrowClassGroup& G) {
    std::vector<ClassCharacter> out;
    for (const ClassCharacter& chi : characters(G))
        if (chi.totally_odd) out.push_back(chi);
    return out;
}

} // namespace eisgeo
