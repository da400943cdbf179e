#include "cubeharm/cesaro.hpp"

#include <cmath>
#include <stdexcept>

#include "cubeharm/radial.hpp"

namespace cubeharm {

void axpy(ComplexCubeFunction& acc, std::complex<double> a, const ComplexCubeFunction& x) {
    for (std::uint64_t i = 0; i < x.re.size(); ++i) {
        const double xr = x.re[i];
        const double xi = x.im[i];
        acc.re[i] += a.real() * xr - a.imag() * xi;
        acc.im[i] += a.real() * xi + a.imag() * xr;
    }
}

void axpy(ComplexCubeFunction& acc, std::complex<double> a, const CubeFunction& x) {
    for (std::uint64_t i = 0; i < x.size(); ++i) {
        acc.re[i] += a.real() * x[i];
        acc.im[i] += a.imag() * x[i];
    }
}

CubeFunction modulus(const ComplexCubeFunction& x) {
    CubeFunction out(x.re.n(), 0.0);
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = std::hypot(x.re[i], x.im[i]);
    return out;
}

EvenSphereCache::EvenSphereCache(const CubeFunction& f) : n_(f.n()) {
    const KrawtchoukTable& table = table_cache(n_);
    LevelMultiplierEngine engine(f);
    std::vector<double> mult(n_ + 1);
    terms_.reserve(kmax() + 1);
    for (int k = 0; k <= kmax(); ++k) {
        for (int r = 0; r <= n_; ++r) mult[r] = table.float_at(2 * k, r);
        terms_.push_back(engine.apply_levels(mult));
    }
}

CesaroSequence cesaro_mean(const CubeFunction& f, CesaroOrder order) {
    return cesaro_mean_cached(EvenSphereCache(f), order);
}

CesaroSequence cesaro_mean_cached(const EvenSphereCache& cache, CesaroOrder order) {
    const int kmax = cache.kmax();
    const ComplexBinomialSeq coeff = complex_binomial(order, kmax);
    CesaroSequence seq;
    seq.n_cube = cache.n_cube();
    seq.order = order;
    seq.terms.reserve(kmax + 1);
    for (int nn = 0; nn <= kmax; ++nn) {
        ComplexCubeFunction term(cache.n_cube());
        for (int k = 0; k <= nn; ++k) axpy(term, coeff.values[nn - k], cache.term(k));
        seq.terms.push_back(std::move(term));
    }
    return seq;
}

CesaroSequence difference_means(const CubeFunction& f, int m) {
    if (m < 0) throw std::invalid_argument("difference_means: m must be nonnegative");
    EvenSphereCache cache(f);
    CesaroSequence seq;
    seq.n_cube = cache.n_cube();
    seq.order = CesaroOrder{-double(m) - 1.0, 0.0};
    seq.terms.reserve(cache.kmax() + 1);
    for (int nn = 0; nn <= cache.kmax(); ++nn) {
        ComplexCubeFunction term(cache.n_cube());
        for (int j = 0; j <= m && j <= nn; ++j) {
            const double c = to_double(Rational(binomial_exact(m, j))) * ((j % 2 == 0) ? 1.0 : -1.0);
            axpy(term, c, cache.term(nn - j));
        }
        seq.terms.push_back(std::move(term));
    }
    return seq;
}

CubeFunction cesaro_maximal(const CubeFunction& f, CesaroOrder order) {
    return cesaro_maximal_cached(EvenSphereCache(f), order);
}

CubeFunction cesaro_maximal_cached(const EvenSphereCache& cache, CesaroOrder order) {
    const CesaroSequence seq = cesaro_mean_cached(cache, order);
    CubeFunction out(cache.n_cube(), 0.0);
    for (int nn = 0; nn <= cache.kmax(); ++nn) {
        const double scale = std::pow(double(nn + 1), -(order.alpha + 1.0));
        const ComplexCubeFunction& term = seq.terms[nn];
        for (std::uint64_t x = 0; x < out.size(); ++x)
            out[x] = std::max(out[x], std::hypot(term.re[x], term.im[x]) * scale);
    }
    return out;
}

CubeFunction square_function(const CubeFunction& f, int m) {
    return square_function_cached(EvenSphereCache(f), m);
}

CubeFunction square_function_cached(const EvenSphereCache& cache, int m) {
    if (m < 1) throw std::invalid_argument("square_function: m must be >= 1");
    const int n = cache.n_cube();
    CubeFunction acc(n, 0.0);
    CubeFunction diff(n, 0.0);
    for (int k = 0; k <= cache.kmax(); ++k) {
        for (double& v : diff.values()) v = 0.0;
        for (int j = 0; j <= m && j <= k; ++j) {
            const double c = to_double(Rational(binomial_exact(m, j))) * ((j % 2 == 0) ? 1.0 : -1.0);
            const CubeFunction& t = cache.term(k - j);
            for (std::uint64_t x = 0; x < diff.size(); ++x) diff[x] += c * t[x];
        }
        const double weight = std::pow(double(k + 1), 2 * m - 1);
        for (std::uint64_t x = 0; x < acc.size(); ++x) acc[x] += weight * diff[x] * diff[x];
    }
    for (double& v : acc.values()) v = std::sqrt(v);
    return acc;
}

std::vector<int> choice_function(const CubeFunction& f) {
    for (double v : f.values())
        if (v < 0.0) throw std::invalid_argument("choice_function: input must be nonnegative");
    EvenSphereCache cache(f);
    std::vector<int> radius(f.size(), 0);
    CubeFunction best = cache.term(0);
    for (int k = 1; k <= cache.kmax(); ++k) {
        const CubeFunction& t = cache.term(k);
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (t[x] > best[x]) {
                best[x] = t[x];
                radius[x] = 2 * k;
            }
    }
    return radius;
}

double sbp_residual(const CubeFunction& f, int n, int t, int l, int m, double beta) {
    EvenSphereCache cache(f);
    if (!(0 <= t && t <= n && n <= cache.kmax()))
        throw std::out_of_range("sbp_residual: require 0 <= t <= n <= floor(n_cube/4)");
    if (!(0 <= l && l <= m)) throw std::out_of_range("sbp_residual: require 0 <= l <= m");

    const CesaroSequence lower = cesaro_mean_cached(cache, CesaroOrder{double(-m - 1 + l), 0.0});
    const CesaroSequence upper = cesaro_mean_cached(cache, CesaroOrder{double(-m + l), 0.0});
    const ComplexBinomialSeq a_l = complex_binomial(CesaroOrder{double(-l), beta}, n);
    const ComplexBinomialSeq a_l1 = complex_binomial(CesaroOrder{double(-l) - 1.0, beta}, n);

    ComplexCubeFunction residual(cache.n_cube());
    for (int k = 0; k <= t; ++k) axpy(residual, a_l.values[n - k], lower.terms[k]);
    axpy(residual, -a_l.values[n - t], upper.terms[t]);
    for (int k = 0; k <= t - 1; ++k) axpy(residual, -a_l1.values[n - k], upper.terms[k]);

    double worst = 0.0;
    for (std::uint64_t x = 0; x < residual.re.size(); ++x)
        worst = std::max(worst, std::hypot(residual.re[x], residual.im[x]));
    return worst;
}

} // namespace cubeharm
