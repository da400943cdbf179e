#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/maximal.hpp"
#include "cubeharm/rational.hpp"

namespace cubeharm {

// Every tolerance and trend threshold used by the verification suites, in one
// place. Identity checks that are exact in rational arithmetic use zero; the
// float tolerances absorb rounding noise only.
struct Thresholds {
    double transform_roundtrip = 1e-10;  // ℱℱ = id, Plancherel
    double conv_agreement = 1e-10;       // spectral vs direct convolution
    double radial_agreement = 1e-10;     // radial_convolve vs direct
    double mass_relative = 1e-9;         // Σ σ_k*f vs Σ f
    double multiplier_float = 1e-12;     // float multiplier vs table column
    double cesaro_identity = 1e-9;       // order composition, summation by parts
    double telescoping = 1e-10;          // S_n - S_{n-1} = order - 1
    double diff_vs_cesaro = 1e-10;       // difference means vs order -m-1
    double order_minus1_exact = 1e-12;   // S_n^{-1}f = σ_{2n}*f
    double coeff_float_rel = 1e-12;      // A_n^λ recurrence identity, float
    double maximal_pointwise = 1e-10;    // pointwise maximal inequalities
    double chain_bound = 1e-9;           // ‖f*‖_p vs ‖Mf‖_p + 2‖M(σ_1*f)‖_p
    double noise_domination = 0.70;      // min over grid of √n·𝒩_*f / f*
    double prop_main_float_rel = 1e-11;  // exact vs float T(n,m,r)
    double prop_main_saturation = 10.0;  // max/min of max_r T over the n-grid
    double prop_main_tail_growth = 0.25; // last grid step growth allowance
    double geometric_residual = 1e-10;
    double stirling_ratio = 0.05;        // bound vs √(πn/2), n ≥ 16
    double slope_q2_lo = 0.45, slope_q2_hi = 0.55;
    double slope_q3_lo = 0.40, slope_q3_hi = 0.60;
    double trend_growth = 0.10;          // per-step growth of dimension-free ratios
    double ratio_guard = 1e-12;          // denominator cutoff in empirical ratios

    nlohmann::json to_json() const;
};

const Thresholds& thresholds();

// Declarative family of test functions. Member strings: "delta",
// "random_uniform", "random_signed", "sphere:<k>" (0/1 indicator of the
// k-sphere), "halfcube" (indicator of {x : bit 0 of x is 0}). Realization is
// deterministic: the generator is splitmix64 and the stream for slot i at
// dimension n is seeded with seed ^ (n << 32) ^ i.
struct TestFamily {
    std::uint64_t seed = 0;
    std::vector<std::string> members;

    static TestFamily default_family(std::uint64_t seed);
    static TestFamily nonneg_family(std::uint64_t seed);

    std::vector<std::pair<std::string, CubeFunction>> realize(int n) const;
};

struct SweepCell {
    int n = 0;
    std::string member;
    double statistic = 0.0;
    nlohmann::json meta;
};

struct PerNRow {
    int n = 0;
    double statistic = 0.0;
    nlohmann::json meta;
};

struct SweepReport {
    std::string campaign;
    std::vector<int> n_values;
    std::optional<int> m;
    std::vector<SweepCell> cells; // one per (n, member)
    std::vector<PerNRow> per_n;   // per-n maxima
    double estimated_constant = 0.0;
    std::uint64_t family_seed = 0;
    nlohmann::json tolerance_profile;
    std::string tool_version;
    std::string generator = "splitmix64";
    std::vector<std::string> flags; // failed-threshold descriptions

    nlohmann::json to_json() const;
    std::string to_csv() const; // one row per (n, member)
};

// Largest ratio rows[i+1]/rows[i] of consecutive per-n statistics (1.0 for
// fewer than two rows); the flatness checks compare it against 1 + trend.
double max_consecutive_growth(const std::vector<PerNRow>& rows);

// T(n, m, r) = Σ_{k=m}^{floor(n/4)} (k+1)^{2m-1}·(∂^m κ_r^n(2k))², the
// spectral sum behind the square-function bound. Computed exactly and by an
// independent double-precision route.
struct PropMainRow {
    int n = 0;
    int m = 0;
    Rational max_exact;
    int argmax_r = 0;
    double max_value = 0.0; // rounded from max_exact
    double max_float = 0.0; // independent float recomputation at argmax_r
};

PropMainRow prop_main_sum(int n, int m);
SweepReport prop_main_sweep(const std::vector<int>& n_values, int m);

// |closed form − truncated series| for Σ_k k^p t^k, both sides evaluated in
// exact rational arithmetic (t taken as the exact value of the double); the
// truncation point is chosen so the tail is below 1e-13.
double geometric_series_check(int p, double t);

SweepReport ratio_sweep(MaximalVariant variant, LpExponent p, const TestFamily& family,
                        const std::vector<int>& n_values, bool weak_mode = false, int threads = 1);

SweepReport weak_type_growth(const std::vector<int>& n_values, int q);

// Per-n maxima of the three Nevo–Stein lemma ratios over the family:
//   lemma1: S_*^{α+iβ}f / S_*^0|f|            (α over {0.5, 1})
//   lemma2: S_*^{-m+iβ}f / Σ_{j=1}^{m+1} S_*^{-j}f
//   lemma3: (S_*^{-m}f − 2·S_*^{-(m-1)}f)_+ / R_m f
// Growth beyond the trend threshold between consecutive n is flagged.
SweepReport nevo_stein_ratios(const TestFamily& family, int m, double beta,
                              const std::vector<int>& n_values, int threads = 1);

} // namespace cubeharm
