#include "cubeharm/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <chrono>
#include <complex>
#include <functional>
#include <sstream>

#include "cubeharm/cesaro.hpp"
#include "cubeharm/cube_function.hpp"
#include "cubeharm/harness.hpp"
#include "cubeharm/krawtchouk.hpp"
#include "cubeharm/maximal.hpp"
#include "cubeharm/radial.hpp"
#include "cubeharm/rng.hpp"

namespace cubeharm {

namespace {

struct Outcome {
    bool pass = false;
    double residual = 0.0;
    std::string detail;
};

Outcome ok(double residual, std::string detail = {}) {
    return {true, residual, std::move(detail)};
}

Outcome fail(double residual, std::string detail) {
    return {false, residual, std::move(detail)};
}

Outcome judged(double residual, double tolerance, std::string detail = {}) {
    std::ostringstream os;
    os << detail << (detail.empty() ? "" : "; ") << "residual " << residual << " vs tolerance "
       << tolerance;
    return {residual <= tolerance, residual, os.str()};
}

double linf(const CubeFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::fabs(v));
    return m;
}

double linf_diff(const CubeFunction& a, const CubeFunction& b) {
    double m = 0.0;
    for (std::uint64_t x = 0; x < a.size(); ++x) m = std::max(m, std::fabs(a[x] - b[x]));
    return m;
}

double linf_diff(const ComplexCubeFunction& a, const ComplexCubeFunction& b) {
    double m = 0.0;
    for (std::uint64_t x = 0; x < a.re.size(); ++x)
        m = std::max(m, std::hypot(a.re[x] - b.re[x], a.im[x] - b.im[x]));
    return m;
}

std::string rational_str_local(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

CubeFunction embed_profile(const RadialProfile& p) {
    CubeFunction f(p.n);
    for (std::uint64_t x = 0; x < f.size(); ++x) f[x] = p.weights[std::popcount(x)];
    return f;
}

std::vector<std::pair<std::string, CubeFunction>> family_at(const VerifyOptions& opt, int n,
                                                            bool nonneg) {
    const TestFamily fam = nonneg ? TestFamily::nonneg_family(opt.seed)
                                  : TestFamily::default_family(opt.seed);
    return fam.realize(n);
}

// ---- cube_core ----

Outcome check_self_inverse(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, false))
        worst = std::max(worst, linf_diff(wht_normalized(wht_normalized(f)), f));
    return judged(worst, thresholds().transform_roundtrip, "n=" + std::to_string(n));
}

Outcome check_plancherel(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, false)) {
        const double nf = lp_norm(f, LpExponent(2.0));
        if (nf == 0.0) continue;
        worst = std::max(worst, std::fabs(lp_norm(wht_normalized(f), LpExponent(2.0)) - nf) / nf);
    }
    return judged(worst, thresholds().transform_roundtrip, "relative, n=" + std::to_string(n));
}

Outcome check_convolution_theorem(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 10);
    const auto family = family_at(opt, n, false);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < family.size(); i += 2) {
        const CubeFunction& f = family[i].second;
        const CubeFunction& g = family[i + 1].second;
        worst = std::max(worst, linf_diff(convolve(f, g, ConvolveMethod::spectral),
                                          convolve(f, g, ConvolveMethod::direct)));
        worst = std::max(worst, linf_diff(convolve(f, g, ConvolveMethod::spectral),
                                          convolve(g, f, ConvolveMethod::spectral)));
    }
    return judged(worst, thresholds().conv_agreement, "n=" + std::to_string(n));
}

Outcome check_young_contraction(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 12);
    const auto family = family_at(opt, n, false);
    double worst = 0.0;
    std::vector<CubeFunction> kernels{embed_profile(sphere_kernel(n, std::min(2, n)))};
    SplitMix64 rng(opt.seed ^ 0x10adULL);
    CubeFunction g(n);
    double mass = 0.0;
    for (double& v : g.values()) {
        v = rng.next_double();
        mass += v;
    }
    for (double& v : g.values()) v /= mass;
    kernels.push_back(g);
    for (const auto& kernel : kernels) {
        const double kernel_l1 = lp_norm(kernel, LpExponent(1.0));
        for (const auto& [name, f] : family) {
            const CubeFunction conv = convolve(kernel, f);
            worst = std::max(worst, lp_norm(conv, LpExponent(1.0)) -
                                        kernel_l1 * lp_norm(f, LpExponent(1.0)));
            worst = std::max(worst, lp_norm(conv, LpExponent::infinity()) -
                                        kernel_l1 * lp_norm(f, LpExponent::infinity()));
        }
    }
    worst = std::max(worst, 0.0);
    return judged(worst, thresholds().conv_agreement, "max norm excess over the L1/Linf bounds");
}

// ---- krawtchouk ----

Outcome check_table_symmetry(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 24);
    const KrawtchoukTable& t = table_cache(n);
    for (int k = 0; k <= n; ++k)
        for (int r = 0; r <= n; ++r)
            if (t.at(k, r) != t.at(r, k))
                return fail(1.0, "entries(k,r) != entries(r,k) at (" + std::to_string(k) + "," +
                                     std::to_string(r) + ")");
    return ok(0.0, "exact, n=" + std::to_string(n));
}

Outcome check_table_reflection(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 24);
    const KrawtchoukTable& t = table_cache(n);
    for (int k = 0; k <= n; ++k)
        for (int r = 0; r <= n; ++r) {
            Rational expect = t.at(k, r);
            if (k % 2 == 1) expect = -expect;
            if (t.at(k, n - r) != expect)
                return fail(1.0, "reflection fails at (" + std::to_string(k) + "," +
                                     std::to_string(r) + ")");
        }
    return ok(0.0, "exact, n=" + std::to_string(n));
}

Outcome check_table_bounded(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 24);
    const KrawtchoukTable& t = table_cache(n);
    for (int k = 0; k <= n; ++k)
        for (int r = 0; r <= n; ++r) {
            const Rational& v = t.at(k, r);
            if (v > 1 || v < -1)
                return fail(to_double(v),
                            "|entry| > 1 at (" + std::to_string(k) + "," + std::to_string(r) + ")");
        }
    return ok(0.0, "exact, n=" + std::to_string(n));
}

Outcome check_table_edges(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 24);
    const KrawtchoukTable& t = table_cache(n);
    for (int i = 0; i <= n; ++i)
        if (t.at(0, i) != 1 || t.at(i, 0) != 1)
            return fail(1.0, "row 0 / column 0 entry differs from 1 at index " + std::to_string(i));
    return ok(0.0, "exact, n=" + std::to_string(n));
}

Outcome check_contiguous(const VerifyOptions& opt) {
    const int n = std::max(2, std::min(opt.n, 24));
    const KrawtchoukTable& big = table_cache(n);
    const KrawtchoukTable& small = table_cache(n - 1);
    for (int r = 1; r <= n; ++r)
        for (int l = 1; l <= n; ++l) {
            const auto [add, sub] = contiguous_residuals(big, small, r, l);
            if (add != 0 || sub != 0)
                return fail(1.0, "nonzero residual at (r,l)=(" + std::to_string(r) + "," +
                                     std::to_string(l) + ")");
        }
    return ok(0.0, "exact, n=" + std::to_string(n));
}

Outcome check_partial_agreement(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    for (int m = 0; m <= 4; ++m)
        for (int r = 0; r <= n; ++r)
            for (int l = 0; l <= n; ++l)
                if (partial_m(n, m, r, l, PartialMethod::iterated) !=
                    partial_m(n, m, r, l, PartialMethod::closed_form))
                    return fail(1.0, "methods disagree at (m,r,l)=(" + std::to_string(m) + "," +
                                         std::to_string(r) + "," + std::to_string(l) + ")");
    return ok(0.0, "exact, m <= 4, n=" + std::to_string(n));
}

Outcome check_coeff_difference_identity(const VerifyOptions& opt) {
    const int depth = opt.exact ? 300 : 120;
    const std::vector<Rational> orders{Rational(-3), Rational(-2), Rational(-1), Rational(-1, 2),
                                       Rational(0),  Rational(1, 2), Rational(2)};
    for (const Rational& alpha : orders) {
        const auto a = complex_binomial_exact(alpha, depth);
        const auto b = complex_binomial_exact(alpha - 1, depth);
        for (int j = 1; j <= depth; ++j)
            if (a[j] - a[j - 1] != b[j])
                return fail(1.0, "exact identity fails at order " + rational_str_local(alpha) +
                                     ", j=" + std::to_string(j));
    }
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, -1.5})
        for (double beta : {0.0, 0.5, 1.0}) {
            const auto a = complex_binomial(CesaroOrder{alpha, beta}, depth);
            const auto b = complex_binomial(CesaroOrder{alpha - 1.0, beta}, depth);
            for (int j = 1; j <= depth; ++j) {
                const double scale = std::max(
                    {std::abs(a.values[j]), std::abs(a.values[j - 1]), std::abs(b.values[j]),
                     1e-300});
                worst = std::max(worst,
                                 std::abs(a.values[j] - a.values[j - 1] - b.values[j]) / scale);
            }
        }
    return judged(worst, thresholds().coeff_float_rel, "float part relative");
}

Outcome check_coeff_growth_interval(const VerifyOptions&) {
    const int depth = 10000;
    std::ostringstream detail;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto seq = complex_binomial(CesaroOrder{alpha, 0.0}, depth);
        double lo = 1e300, hi = 0.0;
        for (int j = 0; j <= depth; ++j) {
            const double ratio = seq.values[j].real() / std::pow(double(j + 1), alpha);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (!(lo > 0.0) || !std::isfinite(hi))
            return fail(0.0, "ratio interval degenerate for alpha=" + std::to_string(alpha));
        detail << "alpha=" << alpha << " in [" << lo << ", " << hi << "] ";
    }
    return ok(0.0, detail.str());
}

Outcome check_coeff_complex_growth(const VerifyOptions&) {
    const int depth = 10000;
    const std::vector<double> betas{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
    std::ostringstream detail;
    // Part B(2): sup_n |A_n^{α+iβ}| / A_n^α, normalized by e^{2β²}.
    for (double alpha : {0.5, 1.0, 2.0})
        for (double beta : betas) {
            const auto num = complex_binomial(CesaroOrder{alpha, beta}, depth);
            const auto den = complex_binomial(CesaroOrder{alpha, 0.0}, depth);
            double sup_half = 0.0, sup_full = 0.0;
            for (int j = 0; j <= depth; ++j) {
                const double v = std::abs(num.values[j]) / den.values[j].real();
                sup_full = std::max(sup_full, v);
                if (j <= depth / 2) sup_half = std::max(sup_half, v);
            }
            if (!std::isfinite(sup_full))
                return fail(sup_full, "B(2) supremum infinite");
            if (sup_full > 1.01 * sup_half)
                return fail(sup_full, "B(2) supremum still growing at depth " +
                                          std::to_string(depth));
        }
    // Part B(3): sup_n (n+1)^m |A_n^{-m+iβ}|, normalized by e^{3β²}.
    double worst_b3 = 0.0;
    for (int m = 1; m <= 3; ++m)
        for (double beta : betas) {
            const auto seq = complex_binomial(CesaroOrder{double(-m), beta}, depth);
            double sup_half = 0.0, sup_full = 0.0;
            for (int j = 0; j <= depth; ++j) {
                const double v = std::pow(double(j + 1), m) * std::abs(seq.values[j]);
                sup_full = std::max(sup_full, v);
                if (j <= depth / 2) sup_half = std::max(sup_half, v);
            }
            if (!std::isfinite(sup_full))
                return fail(sup_full, "B(3) supremum infinite");
            if (sup_full > 1.01 * sup_half)
                return fail(sup_full, "B(3) supremum still growing at depth " +
                                          std::to_string(depth));
            worst_b3 = std::max(worst_b3, sup_full / std::exp(3.0 * beta * beta));
        }
    detail << "empirical B_m normalizer max " << worst_b3;
    return ok(0.0, detail.str());
}

// ---- spherical ----

Outcome check_multiplier_vs_table(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const KrawtchoukTable& t = table_cache(n);
    for (int k = 0; k <= n; ++k) {
        const auto s = profile_to_multiplier_exact(sphere_kernel_exact(n, k), t);
        for (int r = 0; r <= n; ++r)
            if (s.multiplier[r] != t.at(k, r))
                return fail(1.0, "exact multiplier mismatch at k=" + std::to_string(k) +
                                     ", r=" + std::to_string(r));
    }
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const auto s = profile_to_multiplier(sphere_kernel(n, k), t);
        for (int r = 0; r <= n; ++r)
            worst = std::max(worst, std::fabs(s.multiplier[r] - t.float_at(k, r)));
    }
    return judged(worst, thresholds().multiplier_float, "float part, n=" + std::to_string(n));
}

Outcome check_radial_convolve_agreement(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 10);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[1].second; // a random member
    double worst = 0.0;
    for (int k : {0, 1, n / 2, n}) {
        const RadialProfile p = sphere_kernel(n, k);
        worst = std::max(worst, linf_diff(radial_convolve(p, f),
                                          convolve(embed_profile(p), f, ConvolveMethod::direct)));
    }
    return judged(worst, thresholds().radial_agreement, "n=" + std::to_string(n));
}

Outcome check_mass_preservation(const VerifyOptions& opt) {
    const int n = opt.n;
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, false)) {
        double total = 0.0;
        for (double v : f.values()) total += v;
        for (int k : {1, n / 2, n}) {
            const CubeFunction conv = radial_convolve(sphere_kernel(n, k), f);
            double conv_total = 0.0;
            for (double v : conv.values()) conv_total += v;
            worst = std::max(worst, std::fabs(conv_total - total) /
                                        std::max(1.0, lp_norm(f, LpExponent(1.0))));
        }
    }
    return judged(worst, thresholds().mass_relative, "relative to L1 mass");
}

Outcome check_sigma1_identity(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto sigma1 = sphere_kernel_exact(n, 1);
    for (int k = 0; k <= n; ++k) {
        const auto lhs = radial_compose_exact(sigma1, sphere_kernel_exact(n, k));
        std::vector<Rational> expect(n + 1, Rational(0));
        if (k > 0) {
            const auto lower = sphere_kernel_exact(n, k - 1);
            for (int j = 0; j <= n; ++j) expect[j] += Rational(k, n) * lower.weights[j];
        }
        if (k < n) {
            const auto upper = sphere_kernel_exact(n, k + 1);
            for (int j = 0; j <= n; ++j) expect[j] += Rational(n - k, n) * upper.weights[j];
        }
        for (int j = 0; j <= n; ++j)
            if (lhs.weights[j] != expect[j])
                return fail(1.0, "three-term identity fails at k=" + std::to_string(k));
    }
    return ok(0.0, "exact rational profiles, n=" + std::to_string(n));
}

Outcome check_sigmaN_reflection(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto sigma_n = sphere_kernel_exact(n, n);
    for (int k = 0; k <= n; ++k) {
        const auto lhs = radial_compose_exact(sigma_n, sphere_kernel_exact(n, k));
        const auto expect = sphere_kernel_exact(n, n - k);
        for (int j = 0; j <= n; ++j)
            if (lhs.weights[j] != expect.weights[j])
                return fail(1.0, "antipodal composition fails at k=" + std::to_string(k));
    }
    return ok(0.0, "exact rational profiles, n=" + std::to_string(n));
}

Outcome check_semigroup_law(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 14);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[1].second;
    double worst = linf_diff(noise_semigroup(0.0, f), f);
    worst = std::max(worst, linf_diff(noise_semigroup(1.0, noise_semigroup(1.0, f)),
                                      noise_semigroup(2.0, f)));
    return judged(worst, thresholds().transform_roundtrip, "identity at t=0 and composition");
}

Outcome check_noise_domination(const VerifyOptions& opt) {
    const int n = opt.n;
    const double sqrt_n = std::sqrt(double(n));
    double measured = 1e300;
    for (const auto& [name, f] : family_at(opt, n, true)) {
        const CubeFunction star = maximal_function(f, MaximalVariant::half);
        const CubeFunction semi = maximal_function(f, MaximalVariant::semigroup);
        const double cutoff = thresholds().ratio_guard * linf(star);
        for (std::uint64_t x = 0; x < star.size(); ++x)
            if (star[x] > cutoff) measured = std::min(measured, sqrt_n * semi[x] / star[x]);
    }
    std::ostringstream detail;
    detail << "min over family of sqrt(n)*N_*f/f_* = " << measured << ", constant threshold "
           << thresholds().noise_domination
           << " (the semigroup grid dominates f*/sqrt(n) up to this constant, not up to 1)";
    return {measured >= thresholds().noise_domination, measured, detail.str()};
}

// ---- maximal ----

Outcome check_pointwise_reduction(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 12);
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, true)) {
        const CubeFunction full = maximal_function(f, MaximalVariant::full);
        const CubeFunction half = maximal_function(f, MaximalVariant::half);
        const CubeFunction shifted =
            maximal_function(radial_convolve(sphere_kernel(n, n), f), MaximalVariant::half);
        for (std::uint64_t x = 0; x < full.size(); ++x)
            worst = std::max(worst, full[x] - half[x] - shifted[x]);
    }
    worst = std::max(worst, 0.0);
    return judged(worst, thresholds().maximal_pointwise, "f** vs f* + (sigma_n*f)*");
}

Outcome check_odd_majorization(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 12);
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, true)) {
        const CubeFunction smooth = radial_convolve(sphere_kernel(n, 1), f);
        for (int j = 1; 2 * j <= n; ++j) {
            const CubeFunction odd = radial_convolve(sphere_kernel(n, 2 * j - 1), f);
            const CubeFunction lo = radial_convolve(sphere_kernel(n, 2 * j - 2), smooth);
            const CubeFunction hi = radial_convolve(sphere_kernel(n, 2 * j), smooth);
            for (std::uint64_t x = 0; x < odd.size(); ++x)
                worst = std::max(worst, odd[x] - lo[x] - hi[x]);
        }
    }
    worst = std::max(worst, 0.0);
    return judged(worst, thresholds().maximal_pointwise, "odd radius vs neighboring even radii");
}

Outcome check_variant_monotonicity(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 12);
    for (const auto& [name, f] : family_at(opt, n, false)) {
        const CubeFunction even = maximal_function(f, MaximalVariant::even);
        const CubeFunction half = maximal_function(f, MaximalVariant::half);
        const CubeFunction full = maximal_function(f, MaximalVariant::full);
        for (std::uint64_t x = 0; x < full.size(); ++x)
            if (even[x] > half[x] || half[x] > full[x])
                return fail(std::max(even[x] - half[x], half[x] - full[x]),
                            "index-set inclusion violated on member " + name);
    }
    return ok(0.0, "even <= half <= full pointwise, zero slack");
}

Outcome check_sublinearity(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 12);
    const auto family = family_at(opt, n, true);
    const CubeFunction& f = family[1].second;
    const CubeFunction& g = family[2].second;
    CubeFunction sum(n);
    for (std::uint64_t x = 0; x < sum.size(); ++x) sum[x] = f[x] + g[x];
    const CubeFunction ms = maximal_function(sum, MaximalVariant::full);
    const CubeFunction mf = maximal_function(f, MaximalVariant::full);
    const CubeFunction mg = maximal_function(g, MaximalVariant::full);
    double worst = 0.0;
    for (std::uint64_t x = 0; x < ms.size(); ++x)
        worst = std::max(worst, ms[x] - mf[x] - mg[x]);
    worst = std::max(worst, 0.0);

    CubeFunction scaled(n);
    const double c = 2.5;
    for (std::uint64_t x = 0; x < scaled.size(); ++x) scaled[x] = c * f[x];
    const CubeFunction mscaled = maximal_function(scaled, MaximalVariant::full);
    double hom = 0.0;
    const double scale = std::max(1.0, linf(mf));
    for (std::uint64_t x = 0; x < mscaled.size(); ++x)
        hom = std::max(hom, std::fabs(mscaled[x] - c * mf[x]) / (c * scale));
    return judged(std::max(worst, hom), thresholds().maximal_pointwise,
                  "subadditivity slack and homogeneity error");
}

Outcome check_chain_bound(const VerifyOptions& opt) {
    // The odd-radius majorization feeding this bound needs every odd radius
    // ≤ n/2 to sit between even radii that M covers, which holds when n is a
    // multiple of 4; run at the nearest such dimension.
    const int n = std::max(4, (std::min(opt.n, 12) / 4) * 4);
    double worst = 0.0;
    for (const auto& [name, f] : family_at(opt, n, true)) {
        const CubeFunction half = maximal_function(f, MaximalVariant::half);
        const CubeFunction even = maximal_function(f, MaximalVariant::even);
        const CubeFunction even_smooth =
            maximal_function(radial_convolve(sphere_kernel(n, 1), f), MaximalVariant::even);
        for (double p : {1.5, 2.0, 3.0}) {
            const LpExponent lp(p);
            worst = std::max(worst, lp_norm(half, lp) - lp_norm(even, lp) -
                                        2.0 * lp_norm(even_smooth, lp));
        }
    }
    worst = std::max(worst, 0.0);
    return judged(worst, thresholds().chain_bound, "n=" + std::to_string(n));
}

// ---- cesaro ----

Outcome check_composition_identity(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[3].second; // signed random member
    const EvenSphereCache cache(f);
    const int kmax = cache.kmax();
    struct Pair {
        CesaroOrder lambda, delta;
    };
    const std::vector<Pair> grid{{{-2.0, 0.0}, {2.0, 0.0}},
                                 {{-1.0, 0.0}, {1.0, 0.5}},
                                 {{0.0, 0.0}, {-1.0, 0.0}}};
    double worst = 0.0;
    for (const auto& [lambda, delta] : grid) {
        const CesaroSequence base = cesaro_mean_cached(cache, lambda);
        const CesaroSequence shifted = cesaro_mean_cached(
            cache, CesaroOrder{lambda.alpha + delta.alpha, lambda.beta + delta.beta});
        const ComplexBinomialSeq coeff =
            complex_binomial(CesaroOrder{delta.alpha - 1.0, delta.beta}, kmax);
        for (int nn = 0; nn <= kmax; ++nn) {
            ComplexCubeFunction rhs(n);
            for (int k = 0; k <= nn; ++k) axpy(rhs, coeff.values[nn - k], base.terms[k]);
            worst = std::max(worst, linf_diff(shifted.terms[nn], rhs));
        }
    }
    return judged(worst, thresholds().cesaro_identity, "three (lambda, delta) pairs");
}

Outcome check_telescoping(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[3].second;
    const EvenSphereCache cache(f);
    const std::vector<CesaroOrder> grid{
        {0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.5, 1.0}, {-2.0, 0.7}};
    double worst = 0.0;
    for (const CesaroOrder& order : grid) {
        const CesaroSequence at = cesaro_mean_cached(cache, order);
        const CesaroSequence below =
            cesaro_mean_cached(cache, CesaroOrder{order.alpha - 1.0, order.beta});
        for (int nn = 1; nn <= cache.kmax(); ++nn) {
            ComplexCubeFunction diff = at.terms[nn];
            axpy(diff, std::complex<double>(-1.0, 0.0), at.terms[nn - 1]);
            worst = std::max(worst, linf_diff(diff, below.terms[nn]));
        }
    }
    return judged(worst, thresholds().telescoping, "S_n - S_{n-1} vs order - 1");
}

Outcome check_order_minus1_collapse(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[1].second;
    const EvenSphereCache cache(f);
    const CesaroSequence seq = cesaro_mean_cached(cache, CesaroOrder{-1.0, 0.0});
    double worst = 0.0;
    for (int nn = 0; nn <= cache.kmax(); ++nn) {
        worst = std::max(worst, linf_diff(seq.terms[nn].re, cache.term(nn)));
        worst = std::max(worst, linf(seq.terms[nn].im));
    }
    return judged(worst, thresholds().order_minus1_exact, "coefficient collapse at order -1");
}

Outcome check_difference_vs_cesaro(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[3].second;
    double worst = 0.0;
    for (int m = 0; m <= 3; ++m) {
        const CesaroSequence diff = difference_means(f, m);
        const CesaroSequence ces = cesaro_mean(f, CesaroOrder{-double(m) - 1.0, 0.0});
        for (std::size_t nn = 0; nn < diff.terms.size(); ++nn)
            worst = std::max(worst, linf_diff(diff.terms[nn], ces.terms[nn]));
    }
    return judged(worst, thresholds().diff_vs_cesaro, "m <= 3");
}

Outcome check_sbp(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const auto family = family_at(opt, n, false);
    const CubeFunction& f = family[3].second;
    const int kmax = n / 4;
    double worst = 0.0;
    struct Params {
        int n, t, l, m;
        double beta;
    };
    std::vector<Params> grid{{kmax, kmax, 0, 1, 0.0},
                             {kmax, 0, 1, 1, 0.3},
                             {kmax, kmax / 2, 1, 2, 0.7},
                             {std::min(2, kmax), std::min(1, kmax), 1, 1, 1.0}};
    for (const auto& prm : grid)
        worst = std::max(worst, sbp_residual(f, prm.n, prm.t, prm.l, prm.m, prm.beta));
    const double tol = thresholds().cesaro_identity * (1.0 + linf(f));
    return judged(worst, tol, "summation-by-parts grid");
}

Outcome check_choice_reconstruction(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 14);
    const auto family = family_at(opt, n, true);
    const CubeFunction& f = family[1].second;
    const EvenSphereCache cache(f);
    const std::vector<int> radius = choice_function(f);
    const CubeFunction target = cesaro_maximal_cached(cache, CesaroOrder{-1.0, 0.0});
    double worst = 0.0;
    for (std::uint64_t x = 0; x < f.size(); ++x)
        worst = std::max(worst, std::fabs(cache.term(radius[x] / 2)[x] - target[x]));
    return judged(worst, thresholds().order_minus1_exact, "sigma_{r(x)}*f vs S_*^{-1}f");
}

Outcome check_lemma_ratios_finite(const VerifyOptions& opt) {
    const int n = std::min(opt.n, 16);
    const TestFamily fam = TestFamily::default_family(opt.seed);
    std::ostringstream detail;
    for (int m : {1, 2})
        for (double beta : {0.0, 1.0}) {
            const SweepReport rep = nevo_stein_ratios(fam, m, beta, {n});
            const auto& meta = rep.per_n.front().meta;
            for (const char* key : {"lemma1", "lemma2", "lemma3"}) {
                const double v = meta.at(key).get<double>();
                if (!std::isfinite(v))
                    return fail(v, std::string(key) + " ratio not finite at m=" +
                                       std::to_string(m));
            }
            detail << "m=" << m << ",b=" << beta << ":max=" << rep.estimated_constant << " ";
        }
    return ok(0.0, detail.str());
}

// ---- harness ----

Outcome check_prop_main_float(const VerifyOptions& opt) {
    double worst = 0.0;
    for (int m : {1, 2}) {
        const int n = std::min(std::max(opt.n, 3 * m + 1), 24);
        const PropMainRow row = prop_main_sum(n, m);
        const double rel =
            std::fabs(row.max_value - row.max_float) / std::max(row.max_value, 1e-300);
        worst = std::max(worst, rel);
    }
    return judged(worst, thresholds().prop_main_float_rel, "exact vs double route, m in {1,2}");
}

Outcome check_geometric_series(const VerifyOptions&) {
    double worst = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double t : {0.1, 0.5, 0.9}) worst = std::max(worst, geometric_series_check(p, t));
    return judged(worst, thresholds().geometric_residual, "p <= 5, t in {0.1, 0.5, 0.9}");
}

Outcome check_report_determinism(const VerifyOptions& opt) {
    const TestFamily fam = TestFamily::default_family(opt.seed);
    const std::vector<int> grid{6, 8};
    const std::string a =
        ratio_sweep(MaximalVariant::even, LpExponent(2.0), fam, grid, false, 2).to_json().dump();
    const std::string b =
        ratio_sweep(MaximalVariant::even, LpExponent(2.0), fam, grid, false, 1).to_json().dump();
    if (a != b) return fail(1.0, "re-run with different thread count changed the report");
    const std::string c = weak_type_growth({8, 12, 16}, 2).to_json().dump();
    const std::string d = weak_type_growth({8, 12, 16}, 2).to_json().dump();
    if (c != d) return fail(1.0, "weak-type growth report not reproducible");
    return ok(0.0, "byte-identical JSON across re-runs and thread counts");
}

struct Entry {
    const char* name;
    Outcome (*fn)(const VerifyOptions&);
};

const Entry kRegistry[] = {
    {"transform/self_inverse", check_self_inverse},
    {"transform/plancherel", check_plancherel},
    {"transform/convolution_theorem", check_convolution_theorem},
    {"transform/young_contraction", check_young_contraction},
    {"krawtchouk/symmetry", check_table_symmetry},
    {"krawtchouk/reflection", check_table_reflection},
    {"krawtchouk/bounded", check_table_bounded},
    {"krawtchouk/edge_rows", check_table_edges},
    {"krawtchouk/contiguous_relations", check_contiguous},
    {"krawtchouk/partial_iterated_vs_closed", check_partial_agreement},
    {"coeff/difference_identity", check_coeff_difference_identity},
    {"coeff/growth_interval", check_coeff_growth_interval},
    {"coeff/complex_growth", check_coeff_complex_growth},
    {"spherical/multiplier_vs_table", check_multiplier_vs_table},
    {"spherical/radial_convolve_agreement", check_radial_convolve_agreement},
    {"spherical/mass_preservation", check_mass_preservation},
    {"spherical/sigma1_three_term", check_sigma1_identity},
    {"spherical/antipodal_composition", check_sigmaN_reflection},
    {"spherical/semigroup_law", check_semigroup_law},
    {"spherical/noise_domination", check_noise_domination},
    {"maximal/pointwise_reduction", check_pointwise_reduction},
    {"maximal/odd_majorization", check_odd_majorization},
    {"maximal/variant_monotonicity", check_variant_monotonicity},
    {"maximal/sublinearity", check_sublinearity},
    {"maximal/chain_bound", check_chain_bound},
    {"cesaro/composition_identity", check_composition_identity},
    {"cesaro/telescoping", check_telescoping},
    {"cesaro/order_minus1_collapse", check_order_minus1_collapse},
    {"cesaro/difference_vs_cesaro", check_difference_vs_cesaro},
    {"cesaro/summation_by_parts", check_sbp},
    {"cesaro/choice_reconstruction", check_choice_reconstruction},
    {"cesaro/lemma_ratios_finite", check_lemma_ratios_finite},
    {"harness/prop_main_float_agreement", check_prop_main_float},
    {"harness/geometric_series", check_geometric_series},
    {"harness/report_determinism", check_report_determinism},
};

} // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const Entry& e : kRegistry) names.emplace_back(e.name);
    return names;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
    std::vector<CheckResult> results;
    results.reserve(std::size(kRegistry));
    for (const Entry& e : kRegistry) {
        CheckResult r;
        r.name = e.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = e.fn(options);
            r.pass = o.pass;
            r.residual = o.residual;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.pass = false;
            r.residual = std::numeric_limits<double>::quiet_NaN();
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace cubeharm
