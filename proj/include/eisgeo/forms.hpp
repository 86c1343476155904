#pragma once

#include "eisgeo/exact.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace eisgeo {

// a x^2 + b x y + c y^2
struct QuadForm {
    Int a{0}, b{0}, c{0};

    static QuadForm of(long a, long b, long c) { return {Int(a), Int(b), Int(c)}; }

    Int disc() const { return b * b - 4 * a * c; }
    Int content() const;
    QuadForm primitive() const;
    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
    // (-b + sqrt(disc)) / 2a and its conjugate
    QuadIrr first_root() const;
    QuadIrr second_root() const;
    QuadForm operator-() const { return {-a, -b, -c}; }
    std::string str() const;

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend std::strong_ordering operator<=>(const QuadForm& x, const QuadForm& y);
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

// f∘M, i.e. (x, y) -> f(M (x, y)); the roots move by M^{-1}
QuadForm pullback(const QuadForm& f, const Mat2& m);
// left action g.f = f∘g^{-1} for det g = 1; roots move by g
QuadForm act(const Mat2& g, const QuadForm& f);

QuadForm principal_form(const Int& disc);

bool is_reduced(const QuadForm& f);

struct FormStep {
    QuadForm form; // = previous ∘ m
    Mat2 m;
};

FormStep rho(const QuadForm& f);

struct Reduction {
    QuadForm form;   // reduced
    Mat2 transform;  // form = input ∘ transform
};

Reduction reduce(const QuadForm& f);

// all primitive reduced forms of the discriminant, sorted
std::vector<QuadForm> reduced_forms(const Int& disc);

struct Cycle {
    std::vector<QuadForm> forms; // forms[i] = forms[0] ∘ prefix[i]
    std::vector<Mat2> prefix;
    Mat2 automorph;              // forms[0] ∘ automorph = forms[0]
};

Cycle cycle_of(const QuadForm& reduced);

// t^2 - disc u^2 = 4 with t, u > 0 minimal
struct PellSolution {
    Int t, u;
    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

PellSolution pell_fundamental(const Int& disc);
std::optional<PellSolution> pell_bruteforce(const Int& disc, long bound);

Mat2 automorph(const QuadForm& f, const PellSolution& e);
// automorph from the fundamental unit of the order of discriminant disc(f)
Mat2 automorph(const QuadForm& f);

// Gauss (Dirichlet) composition of primitive forms of equal discriminant, unreduced
QuadForm compose(const QuadForm& f, const QuadForm& g);

// Gamma_0(p)-equivalence classes of primitive forms of one discriminant.
// Two forms h, h' are equivalent when h' = h∘gamma for some gamma in Gamma_0(p).
class Gamma0Classifier {
public:
    Gamma0Classifier(Int disc, long p);

    struct Key {
        int cycle;
        long orbit;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    Key key(const QuadForm& h) const;
    // gamma in Gamma_0(p) with g = f∘gamma, if any
    std::optional<Mat2> equivalence(const QuadForm& f, const QuadForm& g) const;
    // sum of sgn(a) over all forms [a,b,c] with ac < 0 in the class
    long winding_sum(const QuadForm& h) const;
    // the forms with ac < 0 in the class of h
    std::vector<QuadForm> winding_forms(const QuadForm& h) const;

    const Int& disc() const { return disc_; }
    long level() const { return p_; }

private:
    struct Located {
        int cycle;
        Mat2 n; // h = canonical ∘ n
    };
    Located locate(const QuadForm& h) const;
    long p1_index(const Int& x, const Int& y) const;
    void build_winding() const;

    Int disc_;
    long p_;
    std::vector<Cycle> cycles_;              // each starts at its canonical (minimal) form
    std::map<QuadForm, std::pair<int, int>> where_; // reduced form -> (cycle, position)
    std::vector<std::vector<long>> orbit_min_;      // per cycle, P^1(F_p) index -> orbit minimum
    std::vector<Mat2> automorph_mod_p_;
    mutable std::once_flag winding_once_;
    mutable std::map<Key, std::vector<QuadForm>> winding_;
};

// shared per (disc, p); thread safe
std::shared_ptr<const Gamma0Classifier> gamma0_classifier(const Int& disc, long p);

} // namespace eisgeo
