#include "cubeharm/radial.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cubeharm {

namespace {

void require_same_dim(int a, int b, const char* who) {
    if (a != b) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

} // namespace

RadialProfile sphere_kernel(int n, int k) {
    RadialProfileExact e = sphere_kernel_exact(n, k);
    RadialProfile p;
    p.n = n;
    p.weights.resize(n + 1);
    for (int j = 0; j <= n; ++j) p.weights[j] = to_double(e.weights[j]);
    return p;
}

RadialProfileExact sphere_kernel_exact(int n, int k) {
    if (k < 0 || k > n) throw std::out_of_range("sphere_kernel: k out of range");
    RadialProfileExact p;
    p.n = n;
    p.weights.assign(n + 1, Rational(0));
    p.weights[k] = Rational(1, binomial_exact(n, k));
    return p;
}

SpectralProfile profile_to_multiplier(const RadialProfile& p, const KrawtchoukTable& table) {
    require_same_dim(p.n, table.n(), "profile_to_multiplier");
    const int n = p.n;
    SpectralProfile s;
    s.n = n;
    s.multiplier.assign(n + 1, 0.0);
    std::vector<double> sphere_size(n + 1);
    for (int j = 0; j <= n; ++j) sphere_size[j] = to_double(Rational(binomial_exact(n, j)));
    for (int r = 0; r <= n; ++r) {
        double acc = 0.0;
        for (int j = 0; j <= n; ++j)
            if (p.weights[j] != 0.0) acc += p.weights[j] * sphere_size[j] * table.float_at(j, r);
        s.multiplier[r] = acc;
    }
    return s;
}

SpectralProfileExact profile_to_multiplier_exact(const RadialProfileExact& p,
                                                 const KrawtchoukTable& table) {
    require_same_dim(p.n, table.n(), "profile_to_multiplier_exact");
    const int n = p.n;
    SpectralProfileExact s;
    s.n = n;
    s.multiplier.assign(n + 1, Rational(0));
    for (int r = 0; r <= n; ++r) {
        Rational acc = 0;
        for (int j = 0; j <= n; ++j)
            if (p.weights[j] != 0)
                acc += p.weights[j] * Rational(binomial_exact(n, j)) * table.at(j, r);
        s.multiplier[r] = std::move(acc);
    }
    return s;
}

RadialProfileExact multiplier_to_profile_exact(const SpectralProfileExact& s,
                                               const KrawtchoukTable& table) {
    require_same_dim(s.n, table.n(), "multiplier_to_profile_exact");
    const int n = s.n;
    const Rational scale(1, BigInt(1) << n);
    RadialProfileExact p;
    p.n = n;
    p.weights.assign(n + 1, Rational(0));
    for (int j = 0; j <= n; ++j) {
        Rational acc = 0;
        for (int r = 0; r <= n; ++r)
            if (s.multiplier[r] != 0)
                acc += s.multiplier[r] * Rational(binomial_exact(n, r)) * table.at(r, j);
        p.weights[j] = acc * scale;
    }
    return p;
}

CubeFunction radial_convolve(const RadialProfile& p, const CubeFunction& f) {
    require_same_dim(p.n, f.n(), "radial_convolve");
    LevelMultiplierEngine engine(f);
    const SpectralProfile s = profile_to_multiplier(p, table_cache(p.n));
    return engine.apply_levels(s.multiplier);
}

RadialProfile radial_compose(const RadialProfile& p1, const RadialProfile& p2) {
    require_same_dim(p1.n, p2.n, "radial_compose");
    RadialProfileExact e1{p1.n, {}}, e2{p2.n, {}};
    e1.weights.reserve(p1.n + 1);
    e2.weights.reserve(p2.n + 1);
    for (double w : p1.weights) e1.weights.push_back(exact_from_double(w));
    for (double w : p2.weights) e2.weights.push_back(exact_from_double(w));
    RadialProfileExact out = radial_compose_exact(e1, e2);
    RadialProfile p;
    p.n = p1.n;
    p.weights.resize(p1.n + 1);
    for (int j = 0; j <= p1.n; ++j) p.weights[j] = to_double(out.weights[j]);
    return p;
}

RadialProfileExact radial_compose_exact(const RadialProfileExact& p1,
                                        const RadialProfileExact& p2) {
    require_same_dim(p1.n, p2.n, "radial_compose_exact");
    const KrawtchoukTable& table = table_cache(p1.n);
    SpectralProfileExact s1 = profile_to_multiplier_exact(p1, table);
    const SpectralProfileExact s2 = profile_to_multiplier_exact(p2, table);
    for (int r = 0; r <= p1.n; ++r) s1.multiplier[r] *= s2.multiplier[r];
    return multiplier_to_profile_exact(s1, table);
}

CubeFunction noise_semigroup(double t, const CubeFunction& f) {
    if (!(t >= 0.0)) throw std::invalid_argument("noise_semigroup: t must be nonnegative");
    LevelMultiplierEngine engine(f);
    std::vector<double> mult(f.n() + 1);
    for (int r = 0; r <= f.n(); ++r) mult[r] = std::exp(-t * r);
    return engine.apply_levels(mult);
}

std::vector<double> semigroup_time_grid() {
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int j = -8; j <= 6; ++j) grid.push_back(std::ldexp(1.0, j));
    return grid;
}

LevelMultiplierEngine::LevelMultiplierEngine(const CubeFunction& f)
    : transform_(character_sum_transform(f)) {
    level_.resize(f.size());
    for (std::uint64_t s = 0; s < f.size(); ++s)
        level_[s] = static_cast<std::uint8_t>(std::popcount(s));
}

CubeFunction LevelMultiplierEngine::apply_levels(const std::vector<double>& mult) const {
    const int n = transform_.n();
    if (mult.size() != static_cast<std::size_t>(n + 1))
        throw std::invalid_argument("apply_levels: multiplier length must be n+1");
    CubeFunction g(n);
    for (std::uint64_t s = 0; s < transform_.size(); ++s)
        g[s] = transform_[s] * mult[level_[s]];
    g = character_sum_transform(g);
    const double scale = std::ldexp(1.0, -n);
    for (double& v : g.values()) v *= scale;
    return g;
}

nlohmann::json radial_profile_to_json(const RadialProfile& p) {
    return nlohmann::json{{"n", p.n}, {"weights", p.weights}};
}

nlohmann::json spectral_profile_to_json(const SpectralProfile& s) {
    return nlohmann::json{{"n", s.n}, {"multiplier", s.multiplier}};
}

RadialProfile radial_profile_from_json(const nlohmann::json& j) {
    RadialProfile p;
    p.n = j.at("n").get<int>();
    p.weights = j.at("weights").get<std::vector<double>>();
    if (p.weights.size() != static_cast<std::size_t>(p.n + 1))
        throw std::invalid_argument("RadialProfile: weights length must be n+1");
    return p;
}

SpectralProfile spectral_profile_from_json(const nlohmann::json& j) {
    SpectralProfile s;
    s.n = j.at("n").get<int>();
    s.multiplier = j.at("multiplier").get<std::vector<double>>();
    if (s.multiplier.size() != static_cast<std::size_t>(s.n + 1))
        throw std::invalid_argument("SpectralProfile: multiplier length must be n+1");
    return s;
}

} // namespace cubeharm
