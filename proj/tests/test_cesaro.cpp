#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cubeharm/cesaro.hpp"
#include "cubeharm/radial.hpp"
#include "cubeharm/rng.hpp"

using namespace cubeharm;

namespace {

CubeFunction random_f(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CubeFunction f(n);
    for (double& v : f.values()) v = 2.0 * rng.next_double() - 1.0;
    return f;
}

double max_abs_diff(const CubeFunction& a, const CubeFunction& b) {
    double m = 0.0;
    for (std::uint64_t x = 0; x < a.size(); ++x) m = std::max(m, std::fabs(a[x] - b[x]));
    return m;
}

} // namespace

TEST_CASE("complex helpers") {
    ComplexCubeFunction z(1);
    z.re[0] = 3.0;
    z.im[0] = 4.0;
    const CubeFunction mod = modulus(z);
    CHECK(mod[0] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(mod[1] == 0.0);

    ComplexCubeFunction acc(1);
    axpy(acc, std::complex<double>(0.0, 1.0), z); // i·(3+4i) = -4+3i
    CHECK(acc.re[0] == doctest::Approx(-4.0));
    CHECK(acc.im[0] == doctest::Approx(3.0));

    CubeFunction real_only(1, {2.0, 0.0});
    axpy(acc, std::complex<double>(1.0, 1.0), real_only);
    CHECK(acc.re[0] == doctest::Approx(-2.0));
    CHECK(acc.im[0] == doctest::Approx(5.0));
}

TEST_CASE("even sphere cache") {
    const int n = 8;
    const CubeFunction f = random_f(n, 3);
    const EvenSphereCache cache(f);
    CHECK(cache.n_cube() == n);
    CHECK(cache.kmax() == 2);
    // σ_0 = δ, but the cache realizes every radius through the same spectral
    // roundtrip, so term(0) matches f only to transform precision
    CHECK(max_abs_diff(cache.term(0), f) <= 1e-14);
    CHECK(max_abs_diff(cache.term(1), radial_convolve(sphere_kernel(n, 2), f)) <= 1e-12);
    CHECK(max_abs_diff(cache.term(2), radial_convolve(sphere_kernel(n, 4), f)) <= 1e-12);
    CHECK_THROWS(cache.term(3));
}

TEST_CASE("cesaro means with integer orders have binomial weights") {
    const int n = 8;
    const CubeFunction f = random_f(n, 5);
    const EvenSphereCache cache(f);

    // order 0: plain partial sums
    const CesaroSequence s0 = cesaro_mean_cached(cache, CesaroOrder{0.0, 0.0});
    CubeFunction partial(n);
    for (int k = 0; k <= 2; ++k) {
        for (std::uint64_t x = 0; x < partial.size(); ++x) partial[x] += cache.term(k)[x];
        CHECK(max_abs_diff(s0.terms[k].re, partial) <= 1e-12);
        for (double v : s0.terms[k].im.values()) CHECK(v == 0.0);
    }

    // order 1 at nn = 2: weights A_2^1, A_1^1, A_0^1 = 3, 2, 1
    const CesaroSequence s1 = cesaro_mean_cached(cache, CesaroOrder{1.0, 0.0});
    CubeFunction expect(n);
    for (std::uint64_t x = 0; x < expect.size(); ++x)
        expect[x] = 3.0 * cache.term(0)[x] + 2.0 * cache.term(1)[x] + 1.0 * cache.term(2)[x];
    CHECK(max_abs_diff(s1.terms[2].re, expect) <= 1e-12);

    // cached and uncached entry points agree
    const CesaroSequence direct = cesaro_mean(f, CesaroOrder{1.0, 0.0});
    CHECK(max_abs_diff(direct.terms[2].re, s1.terms[2].re) == 0.0);
}

TEST_CASE("difference means are iterated step-2 differences") {
    const int n = 8;
    const CubeFunction f = random_f(n, 9);
    const EvenSphereCache cache(f);

    const CesaroSequence d0 = difference_means(f, 0);
    for (int k = 0; k <= 2; ++k) CHECK(max_abs_diff(d0.terms[k].re, cache.term(k)) == 0.0);

    const CesaroSequence d1 = difference_means(f, 1);
    CHECK(max_abs_diff(d1.terms[0].re, cache.term(0)) == 0.0); // σ_{-2} ≡ 0
    CubeFunction expect(n);
    for (std::uint64_t x = 0; x < expect.size(); ++x)
        expect[x] = cache.term(1)[x] - cache.term(0)[x];
    CHECK(max_abs_diff(d1.terms[1].re, expect) <= 1e-15);

    // equals the order -(m+1) mean, both routes
    const CesaroSequence c2 = cesaro_mean(f, CesaroOrder{-3.0, 0.0});
    const CesaroSequence d2 = difference_means(f, 2);
    for (int k = 0; k <= 2; ++k) CHECK(max_abs_diff(d2.terms[k].re, c2.terms[k].re) <= 1e-12);

    CHECK_THROWS(difference_means(f, -1));
}

TEST_CASE("cesaro maximal normalization") {
    const int n = 8;
    const CubeFunction f = random_f(n, 13);
    const EvenSphereCache cache(f);

    // α = -1: exponent α+1 = 0, so this is max_k |σ_{2k}*f|
    const CubeFunction m1 = cesaro_maximal_cached(cache, CesaroOrder{-1.0, 0.0});
    CubeFunction expect(n);
    for (int k = 0; k <= 2; ++k)
        for (std::uint64_t x = 0; x < expect.size(); ++x)
            expect[x] = std::max(expect[x], std::fabs(cache.term(k)[x]));
    CHECK(max_abs_diff(m1, expect) == 0.0);

    // α = 0: divide the partial sums by (nn+1)
    const CubeFunction m0 = cesaro_maximal_cached(cache, CesaroOrder{0.0, 0.0});
    const CesaroSequence s0 = cesaro_mean_cached(cache, CesaroOrder{0.0, 0.0});
    CubeFunction expect0(n);
    for (int k = 0; k <= 2; ++k)
        for (std::uint64_t x = 0; x < expect0.size(); ++x)
            expect0[x] = std::max(expect0[x], std::fabs(s0.terms[k].re[x]) / double(k + 1));
    CHECK(max_abs_diff(m0, expect0) <= 1e-14);
}

TEST_CASE("square function of the point mass") {
    const int n = 8;
    const CubeFunction rm = square_function(delta_function(n), 1);
    // At 0: differences are 1, -1, 0 across k = 0, 1, 2; weights (k+1)^1.
    // R_1δ(0)² = 1·1 + 2·1 + 3·0 = 3.
    CHECK(rm[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK_THROWS(square_function(delta_function(n), 0));
}

TEST_CASE("choice function picks the smallest maximizing radius") {
    const int n = 8;
    const CubeFunction d = delta_function(n);
    const std::vector<int> radius = choice_function(d);
    CHECK(radius[0] == 0);
    // weight-2 point: only σ_2 is nonzero there among even radii ≤ 4
    CHECK(radius[0b11] == 2);
    // weight-1 point: every even-radius average vanishes; ties give radius 0
    CHECK(radius[1] == 0);

    // defining property σ_{r(x)}*f(x) = S_*^{-1}f(x), bitwise
    const CubeFunction f = random_f(n, 21);
    CubeFunction g(n);
    for (std::uint64_t x = 0; x < g.size(); ++x) g[x] = std::fabs(f[x]);
    const EvenSphereCache cache(g);
    const std::vector<int> r = choice_function(g);
    const CubeFunction target = cesaro_maximal_cached(cache, CesaroOrder{-1.0, 0.0});
    for (std::uint64_t x = 0; x < g.size(); ++x)
        CHECK(cache.term(r[x] / 2)[x] == doctest::Approx(target[x]).epsilon(1e-15));

    CHECK_THROWS_AS(choice_function(f), std::invalid_argument); // f has negative values
}

TEST_CASE("summation by parts residual and preconditions") {
    const CubeFunction f = random_f(12, 33); // kmax = 3
    CHECK(sbp_residual(f, 3, 3, 0, 1, 0.0) <= 1e-10);
    CHECK(sbp_residual(f, 3, 1, 1, 2, 0.5) <= 1e-10);
    CHECK(sbp_residual(f, 2, 0, 0, 0, 1.0) <= 1e-10); // m = 0 endpoint
    CHECK_THROWS_AS(sbp_residual(f, 4, 0, 0, 1, 0.0), std::out_of_range); // n > kmax
    CHECK_THROWS_AS(sbp_residual(f, 3, 4, 0, 1, 0.0), std::out_of_range); // t > n
    CHECK_THROWS_AS(sbp_residual(f, 3, 0, 2, 1, 0.0), std::out_of_range); // l > m
}
