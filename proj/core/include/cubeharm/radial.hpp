#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/krawtchouk.hpp"

namespace cubeharm {

// Kernel depending only on Hamming weight: weights[j] is the value at any
// point of weight j. Spherical means σ_k and the noise kernels live here.
struct RadialProfile {
    int n = 0;
    std::vector<double> weights; // length n+1
};

// Fourier side of a radial kernel: multiplier value at frequency level r.
struct SpectralProfile {
    int n = 0;
    std::vector<double> multiplier; // length n+1
};

// Exact twins, used wherever identities must hold as rational equalities.
struct RadialProfileExact {
    int n = 0;
    std::vector<Rational> weights;
};

struct SpectralProfileExact {
    int n = 0;
    std::vector<Rational> multiplier;
};

// σ_k: the L¹-normalized indicator of the k-sphere.
RadialProfile sphere_kernel(int n, int k);
RadialProfileExact sphere_kernel_exact(int n, int k);

// multiplier[r] = Σ_j weights[j]·binom(n,j)·κ_j^n(r); for σ_k this is the
// table column κ_k^n(·).
SpectralProfile profile_to_multiplier(const RadialProfile& p, const KrawtchoukTable& table);
SpectralProfileExact profile_to_multiplier_exact(const RadialProfileExact& p,
                                                 const KrawtchoukTable& table);

// Inverse of the line above: weights[j] = 2^{-n} Σ_r multiplier[r]·binom(n,r)·κ_r^n(j).
RadialProfileExact multiplier_to_profile_exact(const SpectralProfileExact& s,
                                               const KrawtchoukTable& table);

// Convolution p*f computed spectrally in O(n·2^n).
CubeFunction radial_convolve(const RadialProfile& p, const CubeFunction& f);

// Radial profile of p1*p2: multiply spectral profiles, invert through the
// exact Krawtchouk system (convolution of radial kernels is radial).
RadialProfile radial_compose(const RadialProfile& p1, const RadialProfile& p2);
RadialProfileExact radial_compose_exact(const RadialProfileExact& p1, const RadialProfileExact& p2);

// Noise semigroup 𝒩_t: spectral multiplier e^{-t·r} at level r.
CubeFunction noise_semigroup(double t, const CubeFunction& f);

// Time grid used by the semigroup maximal variant: {0} ∪ {2^j : -8 ≤ j ≤ 6}.
// The continuous supremum is replaced by this grid in every report.
std::vector<double> semigroup_time_grid();

// Caches the character-sum transform of f so that any number of level
// multipliers can be applied at one inverse transform each.
class LevelMultiplierEngine {
  public:
    explicit LevelMultiplierEngine(const CubeFunction& f);

    int n() const { return transform_.n(); }

    // Returns 2^{-n}·T[mult(level)·Tf], i.e. the multiplier operator applied
    // to f, where mult has length n+1 and acts at frequency level |S|.
    CubeFunction apply_levels(const std::vector<double>& mult) const;

  private:
    CubeFunction transform_;        // unnormalized character sums of f
    std::vector<std::uint8_t> level_; // |S| per index
};

nlohmann::json radial_profile_to_json(const RadialProfile& p);   // {"n", "weights"}
nlohmann::json spectral_profile_to_json(const SpectralProfile& s); // {"n", "multiplier"}
RadialProfile radial_profile_from_json(const nlohmann::json& j);
SpectralProfile spectral_profile_from_json(const nlohmann::json& j);

} // namespace cubeharm
