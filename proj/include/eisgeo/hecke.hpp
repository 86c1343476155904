#pragma once

#include "eisgeo/exact.hpp"
#include "eisgeo/geodesic.hpp"
#include "eisgeo/scalar.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace eisgeo {

enum class Algorithm { cycle, enumerate };

bool in_delta0(const Mat2& m, long p);
// y^{-1} y' in Gamma_0(p), for y, y' of determinant n
bool same_right_coset(const Mat2& y, const Mat2& y2, long n, long p);
long sigma1(long n);

// Delta_0(p) of determinant n modulo right multiplication by Gamma_0(p)
struct CosetSet {
    long n = 1;
    long p = 0;
    std::vector<Mat2> reps;
};

CosetSet right_cosets(long n, long p);

struct DoubleCosetSet {
    std::vector<Mat2> reps;          // one per orbit of gamma_Q
    std::vector<int> orbit_sizes;
    std::vector<int> permutation;    // gamma_Q y_i in y_{perm[i]} Gamma_0(p)
};

DoubleCosetSet double_cosets(const ClosedGeodesic& Q, const CosetSet& cosets);

struct HeckeOptions {
    // reorder cosets and replace every representative by a random element of its
    // (double) coset; used to check representative independence
    std::optional<std::uint64_t> shuffle_seed;
    // enumeration base point at this fraction of the way between the endpoints,
    // instead of the apex
    std::optional<double> base_fraction;
};

// the closed geodesics delta^{-1} Q, one per double coset
std::vector<ClosedGeodesic> hecke_translate(const ClosedGeodesic& Q, long n, const HeckeOptions& opts = {});

long intersect_winding(const ClosedGeodesic& Q, Algorithm alg, std::optional<double> base_fraction = std::nullopt);

Scalar pair_with_twisted_cycle(const TwistedCycle& T, long n, Algorithm alg, const HeckeOptions& opts = {});

} // namespace eisgeo
