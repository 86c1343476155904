#pragma once

#include "eisgeo/exact.hpp"
#include "eisgeo/field.hpp"
#include "eisgeo/forms.hpp"
#include "eisgeo/scalar.hpp"

#include <optional>
#include <vector>

namespace eisgeo {

// oriented from alpha to beta
struct Geodesic {
    ExtendedPoint alpha, beta;
};

// intersection number of the imaginary axis (0 -> oo) with g
int straddle(const Geodesic& g);

// Closed geodesic on Y_0(p) through the first root w of a primitive form.
// Oriented from w to its conjugate.
struct ClosedGeodesic {
    QuadForm form;
    long p = 0;
    Mat2 sl2_generator; // automorph from the totally positive fundamental unit of the order
    long power = 1;     // gamma = sl2_generator^power, minimal with p | lower-left
    Mat2 gamma;

    QuadIrr w() const { return form.first_root(); }
    QuadIrr w_sigma() const { return form.second_root(); }
    Int disc() const { return form.disc(); }
    ClosedGeodesic reversed() const;
};

ClosedGeodesic make_closed_geodesic(const QuadForm& form, long p);
// the translate g.Q for g in Gamma_0(p)
ClosedGeodesic translate(const ClosedGeodesic& Q, const Mat2& g);
bool gamma0_equivalent(const ClosedGeodesic& x, const ClosedGeodesic& y);

bool is_odd_prime(long p);

struct RChoice {
    long r;
    QuadIrr eps_r; // (sqrt dF - r)/2
    Int N0;        // (r^2 - dF)/2
};

// smallest r > 0 with r^2 = dF mod 4p and r^2 > dF
RChoice choose_r(const FieldData& F, long p);
// the form [N0/2, -r, 1] whose first root is (r + sqrt dF)/N0
QuadForm base_rm_form(const FieldData& F, long r);

// RM point for the class with p | a and b = -r mod 2p; r may be negative
ClosedGeodesic rm_point(const FieldData& F, const NarrowClassGroup& G, int cls, long p, long r);
ClosedGeodesic rm_point_from(const QuadForm& class_rep, long p, long r);

struct RmPointPair {
    int cls;
    long r;
    ClosedGeodesic point_plus, point_minus;
};

RmPointPair rm_point_pair(const FieldData& F, const NarrowClassGroup& G, int cls, long p, long r);

struct TwistedTerm {
    Scalar coefficient;
    ClosedGeodesic geodesic;
    int cls;
    long r;
};

struct TwistedCycle {
    long p = 0;
    long r = 0;
    std::vector<TwistedTerm> terms;
};

TwistedCycle twisted_cycle(const FieldData& F, const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r);
// same, from caller-chosen forms in each class (reps[c] in class c)
TwistedCycle twisted_cycle(const NarrowClassGroup& G, const ClassCharacter& psi, long p, long r,
                           const std::vector<QuadForm>& reps);

// sum over Gamma_0(p)-translates of Q of their intersection with the imaginary axis
long intersect_winding_cycle(const ClosedGeodesic& Q);
// same, by walking the Farey edges met by one fundamental arc of Q starting at
// the point of Q above base_x (default: the apex)
long intersect_winding_enum(const ClosedGeodesic& Q, const std::optional<Rational>& base_x = std::nullopt);

} // namespace eisgeo
