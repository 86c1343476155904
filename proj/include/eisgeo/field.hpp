#pragma once

#include "eisgeo/exact.hpp"
#include "eisgeo/forms.hpp"
#include "eisgeo/scalar.hpp"

#include <map>
#include <vector>

namespace eisgeo {

bool is_squarefree(const Int& n);

struct FieldData {
    Int D;
    Int dF;
    QuadIrr lambda;   // (dF + sqrt dF)/2
    QuadIrr eps;      // fundamental unit > 1
    QuadIrr eps_plus; // fundamental totally positive unit
    int unit_norm;
};

FieldData build_field(const Int& D);

struct NarrowClassGroup {
    Int dF;
    std::vector<QuadForm> class_reps; // canonical reduced form per class, identity first
    std::vector<std::vector<int>> table;
    int class_of_principal_sqrt_dF = 0;
    std::map<QuadForm, int> reduced_class; // every primitive reduced form -> class

    int size() const { return static_cast<int>(class_reps.size()); }
    int identity() const { return 0; }
    int inverse(int c) const;
    int order(int c) const;
    int class_of(const QuadForm& f) const;

    // rebuild lookup data from serialized parts, validating them
    static NarrowClassGroup from_parts(Int dF, std::vector<QuadForm> reps, std::vector<std::vector<int>> table,
                                       int sqrt_class);
};

NarrowClassGroup narrow_class_group(const FieldData& F);

// the ideal with Z-basis [a0, (-b0 + sqrt dF)/2], a0 > 0
int class_of_ideal(const NarrowClassGroup& G, const Int& a0, const Int& b0);
QuadForm ideal_to_form(const Int& dF, const Int& a0, const Int& b0);
// form representing the class of the principal ideal (sqrt dF)
QuadForm sqrt_dF_form(const Int& dF);

// psi(c) = exp(2 pi i exponent[c] / order)
struct ClassCharacter {
    long order = 1;
    std::vector<long> exponent;
    bool totally_odd = false;

    Scalar value(int c) const { return Scalar::root_of_unity(exponent.at(c), order); }
    bool is_trivial() const { return order == 1; }
    ClassCharacter inverse() const;
    friend bool operator==(const ClassCharacter&, const ClassCharacter&) = default;
};

// all characters of the group, trivial first, in a fixed order
std::vector<ClassCharacter> characters(const NarrowClassGroup& G);
std::vector<ClassCharacter> odd_characters(const NarrowClassGroup& G);

} // namespace eisgeo
