#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/rational.hpp"

namespace cubeharm {

// full      f**      sup over 0 ≤ k ≤ n           of |σ_k*f|
// half      f*       sup over 0 ≤ k ≤ floor(n/2)  of |σ_k*f|
// even      M        sup over 0 ≤ k ≤ floor(n/4)  of |σ_{2k}*f|
// smooth             sup over 0 ≤ K ≤ floor(n/2)  of |Σ_{j≤K} σ_j*f|/(K+1)
// semigroup          sup over the dyadic t-grid   of |𝒩_t f|
// The floors stand in for the half/quarter index bounds when n is not a
// multiple of 4; they are part of the reported convention.
enum class MaximalVariant { full, half, even, smooth, semigroup };

const char* variant_name(MaximalVariant v);
MaximalVariant variant_from_name(const std::string& name);

CubeFunction maximal_function(const CubeFunction& f, MaximalVariant variant);

// Weak-type (1,1) functional of a nonnegative g: sup_λ λ·#{x : g(x) > λ},
// evaluated exactly by scanning thresholds just below each distinct value.
struct WeakTypeReport {
    int n = 0;
    int q = 2;
    double quasinorm = 0.0;
    double argmax_level = 0.0; // the distinct value whose lower limit attains the sup
    double input_l1 = 0.0;
    double ratio_to_sqrt_n = 0.0; // quasinorm / (input_l1 · √n)

    nlohmann::json to_json() const;
};

// input_l1 < 0 means "use ‖g‖₁" (g is then both the tested function and the
// normalizer); pass the L¹ norm of the original f when g is an operator image.
WeakTypeReport weak_type_quasinorm(const CubeFunction& g, double input_l1 = -1.0);

// Weak-type lower bound of the full spherical maximal operator tested on the
// point mass over ℤ_q^n: q^n / max_j[(q-1)^j·binom(n,j)], in exact integers.
// Grows like √(π n/2) for q = 2.
Rational delta_lower_bound_exact(int n, int q);
double delta_lower_bound(int n, int q);

struct CenterSearchResult {
    std::uint64_t index = 0;      // argmin z of (1_L)*(z)
    double value = 0.0;           // (1_L)*(z) at the argmin
    double averaging_bound = 0.0; // (2^{-n} Σ ((1_L)*)^p)^{1/p}, always ≥ value
};

// Exhaustive search for the sphere-avoiding center: the point whose spherical
// averages of 1_L are all small. L must be 0/1-valued and not the full cube.
CenterSearchResult find_center(const CubeFunction& L, LpExponent p);

} // namespace cubeharm
