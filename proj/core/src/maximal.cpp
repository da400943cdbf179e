#include "cubeharm/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubeharm/krawtchouk.hpp"
#include "cubeharm/radial.hpp"

namespace cubeharm {

const char* variant_name(MaximalVariant v) {
    switch (v) {
        case MaximalVariant::full: return "full";
        case MaximalVariant::half: return "half";
        case MaximalVariant::even: return "even";
        case MaximalVariant::smooth: return "smooth";
        case MaximalVariant::semigroup: return "semigroup";
    }
    throw std::logic_error("variant_name: bad tag");
}

MaximalVariant variant_from_name(const std::string& name) {
    if (name == "full") return MaximalVariant::full;
    if (name == "half") return MaximalVariant::half;
    if (name == "even") return MaximalVariant::even;
    if (name == "smooth") return MaximalVariant::smooth;
    if (name == "semigroup") return MaximalVariant::semigroup;
    throw std::invalid_argument("unknown maximal variant: " + name);
}

namespace {

void max_abs_into(CubeFunction& acc, const CubeFunction& g, double scale = 1.0) {
    for (std::uint64_t x = 0; x < g.size(); ++x)
        acc[x] = std::max(acc[x], std::fabs(g[x]) * scale);
}

} // namespace

CubeFunction maximal_function(const CubeFunction& f, MaximalVariant variant) {
    const int n = f.n();
    const KrawtchoukTable& table = table_cache(n);
    LevelMultiplierEngine engine(f);
    CubeFunction out(n, 0.0);
    std::vector<double> mult(n + 1);

    switch (variant) {
        case MaximalVariant::full:
        case MaximalVariant::half: {
            const int kmax = (variant == MaximalVariant::full) ? n : n / 2;
            for (int k = 0; k <= kmax; ++k) {
                for (int r = 0; r <= n; ++r) mult[r] = table.float_at(k, r);
                max_abs_into(out, engine.apply_levels(mult));
            }
            break;
        }
        case MaximalVariant::even: {
            for (int k = 0; 4 * k <= n; ++k) {
                for (int r = 0; r <= n; ++r) mult[r] = table.float_at(2 * k, r);
                max_abs_into(out, engine.apply_levels(mult));
            }
            break;
        }
        case MaximalVariant::smooth: {
            // Multiplier of Σ_{j≤K} σ_j accumulates column sums of the table.
            std::fill(mult.begin(), mult.end(), 0.0);
            for (int K = 0; K <= n / 2; ++K) {
                for (int r = 0; r <= n; ++r) mult[r] += table.float_at(K, r);
                max_abs_into(out, engine.apply_levels(mult), 1.0 / (K + 1));
            }
            break;
        }
        case MaximalVariant::semigroup: {
            for (double t : semigroup_time_grid()) {
                for (int r = 0; r <= n; ++r) mult[r] = std::exp(-t * r);
                max_abs_into(out, engine.apply_levels(mult));
            }
            break;
        }
    }
    return out;
}

WeakTypeReport weak_type_quasinorm(const CubeFunction& g, double input_l1) {
    for (double v : g.values())
        if (v < 0.0) throw std::invalid_argument("weak_type_quasinorm: input must be nonnegative");

    std::vector<double> sorted = g.values();
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());

    WeakTypeReport report;
    report.n = g.n();
    report.q = 2;
    // For λ just below a distinct value v, {g > λ} = {g ≥ v}; the sup over
    // that branch is v·#{g ≥ v}. Scanning distinct values in decreasing order
    // makes #{g ≥ v} the current index + run length.
    std::uint64_t count = 0;
    std::size_t i = 0;
    while (i < sorted.size() && sorted[i] > 0.0) {
        const double v = sorted[i];
        while (i < sorted.size() && sorted[i] == v) {
            ++i;
            ++count;
        }
        const double candidate = v * static_cast<double>(count);
        if (candidate > report.quasinorm) {
            report.quasinorm = candidate;
            report.argmax_level = v;
        }
    }
    report.input_l1 = (input_l1 < 0.0) ? lp_norm(g, LpExponent(1.0)) : input_l1;
    report.ratio_to_sqrt_n =
        (report.input_l1 > 0.0) ? report.quasinorm / (report.input_l1 * std::sqrt(double(g.n())))
                                : 0.0;
    return report;
}

nlohmann::json WeakTypeReport::to_json() const {
    return nlohmann::json{{"n", n},
                          {"q", q},
                          {"quasinorm", quasinorm},
                          {"argmax_level", argmax_level},
                          {"input_l1", input_l1},
                          {"ratio_to_sqrt_n", ratio_to_sqrt_n}};
}

Rational delta_lower_bound_exact(int n, int q) {
    if (n < 1 || q < 2) throw std::invalid_argument("delta_lower_bound: need n >= 1, q >= 2");
    // On ℤ_q^n the sphere of radius j has (q-1)^j binom(n,j) points; testing δ,
    // the maximal function exceeds the reciprocal of the largest sphere
    // everywhere, so the weak-type functional is at least q^n over that size.
    BigInt largest = 0;
    for (int j = 0; j <= n; ++j) {
        BigInt size = binomial_exact(n, j);
        BigInt pw = 1;
        for (int i = 0; i < j; ++i) pw *= (q - 1);
        size *= pw;
        largest = std::max(largest, size);
    }
    BigInt total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    return Rational(total, largest);
}

double delta_lower_bound(int n, int q) {
    return to_double(delta_lower_bound_exact(n, q));
}

CenterSearchResult find_center(const CubeFunction& L, LpExponent p) {
    bool all_ones = true;
    for (double v : L.values()) {
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("find_center: L must be 0/1-valued");
        if (v == 0.0) all_ones = false;
    }
    if (all_ones) throw std::invalid_argument("find_center: L must not be the full cube");

    const CubeFunction g = maximal_function(L, MaximalVariant::full);
    CenterSearchResult result;
    result.index = 0;
    result.value = g[0];
    for (std::uint64_t z = 1; z < g.size(); ++z)
        if (g[z] < result.value) {
            result.value = g[z];
            result.index = z;
        }
    if (p.is_infinity()) {
        result.averaging_bound = lp_norm(g, p);
    } else {
        double acc = 0.0;
        for (double v : g.values()) acc += std::pow(v, p.value());
        result.averaging_bound = std::pow(acc / static_cast<double>(g.size()), 1.0 / p.value());
    }
    return result;
}

} // namespace cubeharm
