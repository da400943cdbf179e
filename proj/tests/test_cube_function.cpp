#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/rng.hpp"

using namespace cubeharm;

namespace {

CubeFunction random_f(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CubeFunction f(n);
    for (double& v : f.values()) v = 2.0 * rng.next_double() - 1.0;
    return f;
}

} // namespace

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(0, 4) == 0);
    CHECK(hamming_weight(0b1011, 4) == 3);
    CHECK(hamming_weight((std::uint64_t(1) << 20) - 1, 20) == 20);
    CHECK_THROWS_AS(hamming_weight(1 << 5, 5), std::out_of_range);
}

TEST_CASE("construction and validation") {
    CubeFunction f(3);
    CHECK(f.n() == 3);
    CHECK(f.size() == 8);
    CHECK(f[5] == 0.0);
    CHECK_THROWS_AS(CubeFunction(31), std::invalid_argument);
    CHECK_THROWS_AS(CubeFunction(-1), std::invalid_argument);
    CHECK_THROWS_AS(CubeFunction(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    f[0] = std::nan("");
    CHECK_THROWS_AS(f.check_finite("test"), std::invalid_argument);
}

TEST_CASE("lp norms on a two-point cube") {
    CubeFunction f(1, {3.0, -4.0});
    CHECK(lp_norm(f, LpExponent(1.0)) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(lp_norm(f, LpExponent(2.0)) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lp_norm(f, LpExponent::infinity()) == doctest::Approx(4.0).epsilon(1e-15));
    const double p = 1.5;
    CHECK(lp_norm(f, LpExponent(p)) ==
          doctest::Approx(std::pow(std::pow(3.0, p) + std::pow(4.0, p), 1.0 / p)));
    CHECK_THROWS_AS(LpExponent(0.5), std::invalid_argument);
    CHECK(LpExponent::infinity().is_infinity());
    CHECK_FALSE(LpExponent(3.0).is_infinity());
}

TEST_CASE("normalized transform of the point mass is flat") {
    const int n = 4;
    const CubeFunction hat = wht_normalized(delta_function(n));
    for (std::uint64_t s = 0; s < hat.size(); ++s)
        CHECK(hat[s] == doctest::Approx(0.25).epsilon(1e-15)); // 2^{-n/2}
}

TEST_CASE("transform is self-inverse and preserves the L2 norm") {
    const CubeFunction f = random_f(6, 99);
    const CubeFunction back = wht_normalized(wht_normalized(f));
    for (std::uint64_t x = 0; x < f.size(); ++x)
        CHECK(back[x] == doctest::Approx(f[x]).epsilon(1e-12));
    CHECK(lp_norm(wht_normalized(f), LpExponent(2.0)) ==
          doctest::Approx(lp_norm(f, LpExponent(2.0))).epsilon(1e-12));
}

TEST_CASE("character sums compose to 2^n times the identity") {
    const CubeFunction f = random_f(5, 7);
    const CubeFunction twice = character_sum_transform(character_sum_transform(f));
    for (std::uint64_t x = 0; x < f.size(); ++x)
        CHECK(twice[x] == doctest::Approx(32.0 * f[x]).epsilon(1e-12));
}

TEST_CASE("convolution theorem under the unnormalized transform") {
    const CubeFunction f = random_f(5, 11), g = random_f(5, 13);
    const CubeFunction tf = character_sum_transform(f);
    const CubeFunction tg = character_sum_transform(g);
    const CubeFunction tconv = character_sum_transform(convolve(f, g, ConvolveMethod::direct));
    for (std::uint64_t s = 0; s < tf.size(); ++s)
        CHECK(tconv[s] == doctest::Approx(tf[s] * tg[s]).epsilon(1e-11));
}

TEST_CASE("spectral and direct convolution agree") {
    const CubeFunction f = random_f(6, 17), g = random_f(6, 19);
    const CubeFunction a = convolve(f, g, ConvolveMethod::direct);
    const CubeFunction b = convolve(f, g, ConvolveMethod::spectral);
    for (std::uint64_t x = 0; x < a.size(); ++x)
        CHECK(b[x] == doctest::Approx(a[x]).epsilon(1e-12));
}

TEST_CASE("point mass is the convolution identity") {
    const CubeFunction f = random_f(5, 23);
    const CubeFunction conv = convolve(delta_function(5), f, ConvolveMethod::direct);
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(conv[x] == f[x]); // exact: sum of one term
    CHECK_THROWS_AS(convolve(f, random_f(4, 1)), std::invalid_argument);
}

TEST_CASE("binary serialization round-trips exactly") {
    const CubeFunction f = random_f(4, 31);
    std::stringstream buf;
    save_cubf(f, buf);
    const CubeFunction g = load_cubf(buf);
    CHECK(g.n() == 4);
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(g[x] == f[x]);

    std::stringstream bad("XXXX garbage");
    CHECK_THROWS(load_cubf(bad));
}

TEST_CASE("json serialization") {
    const CubeFunction f(2, {1.0, 2.5, -3.0, 0.0});
    nlohmann::json j = f;
    CHECK(j.at("n") == 2);
    CHECK(j.at("values").size() == 4);
    const CubeFunction g = j.get<CubeFunction>();
    for (std::uint64_t x = 0; x < 4; ++x) CHECK(g[x] == f[x]);

    nlohmann::json wrong = {{"n", 2}, {"values", {1.0, 2.0}}};
    CHECK_THROWS(wrong.get<CubeFunction>());
}
