#include "cubeharm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "cubeharm/cesaro.hpp"
#include "cubeharm/krawtchouk.hpp"
#include "cubeharm/radial.hpp"
#include "cubeharm/rng.hpp"
#include "cubeharm/version.hpp"

namespace cubeharm {

nlohmann::json Thresholds::to_json() const {
    return nlohmann::json{{"transform_roundtrip", transform_roundtrip},
                          {"conv_agreement", conv_agreement},
                          {"radial_agreement", radial_agreement},
                          {"mass_relative", mass_relative},
                          {"multiplier_float", multiplier_float},
                          {"cesaro_identity", cesaro_identity},
                          {"telescoping", telescoping},
                          {"diff_vs_cesaro", diff_vs_cesaro},
                          {"order_minus1_exact", order_minus1_exact},
                          {"coeff_float_rel", coeff_float_rel},
                          {"maximal_pointwise", maximal_pointwise},
                          {"chain_bound", chain_bound},
                          {"noise_domination", noise_domination},
                          {"prop_main_float_rel", prop_main_float_rel},
                          {"prop_main_saturation", prop_main_saturation},
                          {"prop_main_tail_growth", prop_main_tail_growth},
                          {"geometric_residual", geometric_residual},
                          {"stirling_ratio", stirling_ratio},
                          {"slope_q2", {slope_q2_lo, slope_q2_hi}},
                          {"slope_q3", {slope_q3_lo, slope_q3_hi}},
                          {"trend_growth", trend_growth},
                          {"ratio_guard", ratio_guard}};
}

const Thresholds& thresholds() {
    static const Thresholds t;
    return t;
}

TestFamily TestFamily::default_family(std::uint64_t seed) {
    return TestFamily{seed,
                      {"delta", "random_uniform", "random_uniform", "random_signed", "sphere:1",
                       "sphere:2", "halfcube"}};
}

TestFamily TestFamily::nonneg_family(std::uint64_t seed) {
    return TestFamily{
        seed, {"delta", "random_uniform", "random_uniform", "sphere:1", "sphere:2", "halfcube"}};
}

namespace {

std::pair<std::string, CubeFunction> realize_member(std::uint64_t seed, int n, std::size_t slot,
                                                    const std::string& member) {
    const std::uint64_t stream_seed =
        seed ^ (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(slot);
    if (member == "delta") return {member, delta_function(n)};
    if (member == "random_uniform") {
        SplitMix64 rng(stream_seed);
        CubeFunction f(n);
        for (double& v : f.values()) v = rng.next_double();
        return {member, f};
    }
    if (member == "random_signed") {
        SplitMix64 rng(stream_seed);
        CubeFunction f(n);
        for (double& v : f.values()) v = 2.0 * rng.next_double() - 1.0;
        return {member, f};
    }
    if (member.rfind("sphere:", 0) == 0) {
        const int k = std::stoi(member.substr(7));
        if (k < 0 || k > n) throw std::invalid_argument("TestFamily: sphere radius out of range");
        CubeFunction f(n);
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (std::popcount(x) == k) f[x] = 1.0;
        return {member, f};
    }
    if (member == "halfcube") {
        CubeFunction f(n);
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if ((x & 1u) == 0) f[x] = 1.0;
        return {member, f};
    }
    throw std::invalid_argument("TestFamily: unknown member " + member);
}

// Runs fn(0..count-1) on up to `threads` workers; each index owns its output
// slot, so scheduling order cannot change results.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        }));
    for (auto& f : futures) f.get();
}

double dbinom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
    return r;
}

// Double-precision route for ∂^m κ_r^n(2k), sharing only the rounded table.
double partial_m_float(int n, int m, int r, int l) {
    if (m > r || 2 * m > l) return 0.0;
    const double top = dbinom(n - 2 * m, r - m);
    if (top == 0.0) return 0.0;
    double coeff = top / dbinom(n, r);
    for (int i = 0; i < m; ++i) coeff *= -4.0;
    if (n - 2 * m == 0) return coeff;
    return coeff * table_cache(n - 2 * m).float_at(r - m, l - 2 * m);
}

std::string rational_str(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

SweepReport make_report(std::string campaign, std::vector<int> n_values, std::optional<int> m,
                        std::uint64_t family_seed) {
    SweepReport report;
    report.campaign = std::move(campaign);
    report.n_values = std::move(n_values);
    report.m = m;
    report.family_seed = family_seed;
    report.tool_version = kToolVersion;
    return report;
}

} // namespace

std::vector<std::pair<std::string, CubeFunction>> TestFamily::realize(int n) const {
    std::vector<std::pair<std::string, CubeFunction>> out;
    out.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        out.push_back(realize_member(seed, n, i, members[i]));
    return out;
}

nlohmann::json SweepReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& c : cells)
        cells_json.push_back(
            {{"n", c.n}, {"member", c.member}, {"statistic", c.statistic}, {"meta", c.meta}});
    nlohmann::json per_n_json = nlohmann::json::array();
    for (const auto& row : per_n)
        per_n_json.push_back({{"n", row.n}, {"statistic", row.statistic}, {"meta", row.meta}});
    nlohmann::json j{{"campaign", campaign},
                     {"n_values", n_values},
                     {"cells", cells_json},
                     {"per_n", per_n_json},
                     {"estimated_constant", estimated_constant},
                     {"family_seed", family_seed},
                     {"tolerance_profile", tolerance_profile},
                     {"tool_version", tool_version},
                     {"generator", generator},
                     {"flags", flags}};
    j["m"] = m.has_value() ? nlohmann::json(*m) : nlohmann::json(nullptr);
    return j;
}

std::string SweepReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "campaign,n,member,statistic";
    for (const auto& c : cells)
        out << '\n' << campaign << ',' << c.n << ',' << c.member << ',' << c.statistic;
    return out.str();
}

double max_consecutive_growth(const std::vector<PerNRow>& rows) {
    double worst = 1.0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i - 1].statistic > 0.0)
            worst = std::max(worst, rows[i].statistic / rows[i - 1].statistic);
    return worst;
}

PropMainRow prop_main_sum(int n, int m) {
    if (m < 1) throw std::invalid_argument("prop_main_sum: m >= 1 required");
    if (n <= 3 * m) throw std::invalid_argument("prop_main_sum: n > 3m required");
    PropMainRow row;
    row.n = n;
    row.m = m;
    row.max_exact = 0;
    const int kmax = n / 4;
    for (int r = 0; r <= n; ++r) {
        Rational acc = 0;
        for (int k = m; k <= kmax; ++k) {
            const Rational d = partial_m(n, m, r, 2 * k, PartialMethod::closed_form);
            if (d == 0) continue;
            BigInt weight = 1;
            for (int i = 0; i < 2 * m - 1; ++i) weight *= (k + 1);
            acc += Rational(weight) * d * d;
        }
        if (acc > row.max_exact) {
            row.max_exact = acc;
            row.argmax_r = r;
        }
    }
    row.max_value = to_double(row.max_exact);
    double facc = 0.0;
    for (int k = m; k <= kmax; ++k) {
        const double d = partial_m_float(n, m, row.argmax_r, 2 * k);
        facc += std::pow(double(k + 1), 2 * m - 1) * d * d;
    }
    row.max_float = facc;
    return row;
}

SweepReport prop_main_sweep(const std::vector<int>& n_values, int m) {
    const Thresholds& th = thresholds();
    SweepReport report = make_report("prop_main/m=" + std::to_string(m), n_values, m, 0);
    report.tolerance_profile = {{"prop_main_saturation", th.prop_main_saturation},
                                {"prop_main_tail_growth", th.prop_main_tail_growth},
                                {"prop_main_float_rel", th.prop_main_float_rel}};
    for (int n : n_values) {
        const PropMainRow row = prop_main_sum(n, m);
        nlohmann::json meta{{"argmax_r", row.argmax_r},
                            {"max_float", row.max_float},
                            {"exact", rational_str(row.max_exact)}};
        report.cells.push_back({n, "kappa_sum", row.max_value, meta});
        report.per_n.push_back({n, row.max_value, meta});
        report.estimated_constant = std::max(report.estimated_constant, row.max_value);
        const double rel = std::fabs(row.max_value - row.max_float) /
                           std::max(row.max_value, 1e-300);
        if (rel > th.prop_main_float_rel)
            report.flags.push_back("float path disagrees at n=" + std::to_string(n) +
                                   " (rel " + std::to_string(rel) + ")");
    }
    double lo = report.per_n.front().statistic, hi = lo;
    for (const auto& row : report.per_n) {
        lo = std::min(lo, row.statistic);
        hi = std::max(hi, row.statistic);
    }
    if (lo > 0.0 && hi / lo > th.prop_main_saturation)
        report.flags.push_back("saturation factor " + std::to_string(hi / lo) + " exceeds " +
                               std::to_string(th.prop_main_saturation));
    if (report.per_n.size() >= 2) {
        const double prev = report.per_n[report.per_n.size() - 2].statistic;
        const double last = report.per_n.back().statistic;
        if (prev > 0.0 && last / prev > 1.0 + th.prop_main_tail_growth)
            report.flags.push_back("tail growth " + std::to_string(last / prev) + " exceeds 1+" +
                                   std::to_string(th.prop_main_tail_growth));
    }
    return report;
}

double geometric_series_check(int p, double t) {
    if (p < 1 || p > 6) throw std::invalid_argument("geometric_series_check: 1 <= p <= 6");
    if (!(t > 0.0 && t <= 0.95))
        throw std::invalid_argument("geometric_series_check: 0 < t <= 0.95");

    // Numerator polynomial of Σ_k k^p t^k = q_p(t)/(1-t)^{p+1}, built by the
    // operator recurrence q_{j+1} = t(1-t)·q_j' + (j+1)·t·q_j from q_0 = 1.
    std::vector<Rational> poly{Rational(1)};
    for (int j = 0; j < p; ++j) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += Rational(static_cast<int>(i)) * poly[i];
            next[i + 1] += Rational(j + 1 - static_cast<int>(i)) * poly[i];
        }
        poly = std::move(next);
    }

    const Rational tr = exact_from_double(t);
    Rational value = 0;
    for (std::size_t i = poly.size(); i-- > 0;) value = value * tr + poly[i];
    Rational denom_power = 1;
    const Rational one_minus = Rational(1) - tr;
    for (int i = 0; i <= p; ++i) denom_power *= one_minus;
    const Rational closed = value / denom_power;

    // Truncation point: first K whose geometric-comparison tail bound
    // (K+1)^p t^{K+1} / (1 - t·((K+2)/(K+1))^p) drops below 1e-13.
    int K = 64;
    for (;; K *= 2) {
        const double rho = t * std::pow(double(K + 2) / double(K + 1), p);
        if (rho < 1.0) {
            const double log_a = p * std::log(double(K + 1)) + double(K + 1) * std::log(t);
            if (std::exp(log_a) / (1.0 - rho) < 1e-13) break;
        }
        if (K > (1 << 20)) throw std::logic_error("geometric_series_check: K search ran away");
    }

    // Horner over the common denominator pd^K in integers; building the
    // rational once at the end avoids a gcd normalization per term.
    const BigInt pn = numerator(tr);
    const BigInt pd = denominator(tr);
    const auto kth_power = [p](int k) {
        BigInt kp = 1;
        for (int i = 0; i < p; ++i) kp *= k;
        return kp;
    };
    BigInt upper = kth_power(K);
    BigInt pd_pow = 1;
    for (int j = K - 1; j >= 1; --j) {
        pd_pow *= pd;
        upper = kth_power(j) * pd_pow + pn * upper;
    }
    const Rational series(pn * upper, pd_pow * pd);

    return to_double(boost::multiprecision::abs(closed - series));
}

SweepReport ratio_sweep(MaximalVariant variant, LpExponent p, const TestFamily& family,
                        const std::vector<int>& n_values, bool weak_mode, int threads) {
    const Thresholds& th = thresholds();
    std::ostringstream id;
    id << "ratio_sweep/" << variant_name(variant) << '/';
    if (weak_mode)
        id << "weak11";
    else if (p.is_infinity())
        id << "p=inf";
    else
        id << "p=" << p.value();
    SweepReport report = make_report(id.str(), n_values, std::nullopt, family.seed);
    report.tolerance_profile = {{"trend_growth", th.trend_growth}};

    const std::size_t width = family.members.size();
    std::vector<SweepCell> cells(n_values.size() * width);
    parallel_for(cells.size(), threads, [&](std::size_t job) {
        const int n = n_values[job / width];
        const std::size_t slot = job % width;
        auto [name, f] = realize_member(family.seed, n, slot, family.members[slot]);
        const CubeFunction g = maximal_function(f, variant);
        double stat;
        if (weak_mode) {
            const double l1 = lp_norm(f, LpExponent(1.0));
            stat = weak_type_quasinorm(g, l1).quasinorm / l1;
        } else {
            stat = lp_norm(g, p) / lp_norm(f, p);
        }
        cells[job] = SweepCell{n, name, stat, {{"slot", slot}}};
    });
    report.cells = std::move(cells);

    for (std::size_t i = 0; i < n_values.size(); ++i) {
        PerNRow row;
        row.n = n_values[i];
        for (std::size_t s = 0; s < width; ++s) {
            const SweepCell& c = report.cells[i * width + s];
            if (c.statistic > row.statistic) {
                row.statistic = c.statistic;
                row.meta = {{"argmax_member", c.member}, {"argmax_slot", s}};
            }
        }
        report.per_n.push_back(std::move(row));
        report.estimated_constant = std::max(report.estimated_constant, report.per_n.back().statistic);
    }
    const double growth = max_consecutive_growth(report.per_n);
    if (growth > 1.0 + th.trend_growth)
        report.flags.push_back("per-n maxima grow by factor " + std::to_string(growth) +
                               " between consecutive dimensions");
    return report;
}

SweepReport weak_type_growth(const std::vector<int>& n_values, int q) {
    const Thresholds& th = thresholds();
    SweepReport report =
        make_report("weak_type_growth/q=" + std::to_string(q), n_values, std::nullopt, 0);
    report.tolerance_profile = {{"slope_q2", {th.slope_q2_lo, th.slope_q2_hi}},
                                {"slope_q3", {th.slope_q3_lo, th.slope_q3_hi}},
                                {"stirling_ratio", th.stirling_ratio}};

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : n_values) {
        const Rational exact = delta_lower_bound_exact(n, q);
        const double bound = to_double(exact);
        nlohmann::json meta{{"exact", rational_str(exact)},
                            {"ratio_to_sqrt_n", bound / std::sqrt(double(n))}};
        if (q == 2) {
            const double stirling = std::sqrt(std::acos(-1.0) * n / 2.0);
            meta["ratio_to_stirling"] = bound / stirling;
        }
        report.cells.push_back({n, "delta", bound, meta});
        report.per_n.push_back({n, bound, meta});
        const double x = std::log(double(n)), y = std::log(bound);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = double(n_values.size());
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    report.estimated_constant = slope;

    if (q == 2 && (slope < th.slope_q2_lo || slope > th.slope_q2_hi))
        report.flags.push_back("q=2 log-log slope " + std::to_string(slope) + " outside [" +
                               std::to_string(th.slope_q2_lo) + ", " +
                               std::to_string(th.slope_q2_hi) + "]");
    if (q == 3 && (slope < th.slope_q3_lo || slope > th.slope_q3_hi))
        report.flags.push_back("q=3 log-log slope " + std::to_string(slope) + " outside [" +
                               std::to_string(th.slope_q3_lo) + ", " +
                               std::to_string(th.slope_q3_hi) + "]");
    if (q == 2)
        for (const auto& row : report.per_n)
            if (row.n >= 16 &&
                std::fabs(row.meta.at("ratio_to_stirling").get<double>() - 1.0) > th.stirling_ratio)
                report.flags.push_back("n=" + std::to_string(row.n) +
                                       " bound deviates from sqrt(pi n/2) beyond 5%");
    return report;
}

namespace {

// max over x of num/den, skipping points where den is below a relative guard;
// see the lemma-ratio notes in the header.
double guarded_ratio(const CubeFunction& num, const CubeFunction& den) {
    double den_max = 0.0;
    for (double v : den.values()) den_max = std::max(den_max, v);
    if (den_max <= 0.0) return 0.0;
    const double cutoff = thresholds().ratio_guard * den_max;
    double worst = 0.0;
    for (std::uint64_t x = 0; x < num.size(); ++x)
        if (den[x] > cutoff) worst = std::max(worst, num[x] / den[x]);
    return worst;
}

} // namespace

SweepReport nevo_stein_ratios(const TestFamily& family, int m, double beta,
                              const std::vector<int>& n_values, int threads) {
    if (m < 1 || m > 3) throw std::invalid_argument("nevo_stein_ratios: m must be in {1,2,3}");
    if (!std::isfinite(beta)) throw std::invalid_argument("nevo_stein_ratios: beta must be finite");
    const Thresholds& th = thresholds();
    std::ostringstream id;
    id << "nevo_stein/m=" << m << "/beta=" << beta;
    SweepReport report = make_report(id.str(), n_values, m, family.seed);
    report.tolerance_profile = {{"trend_growth", th.trend_growth},
                                {"ratio_guard", th.ratio_guard}};

    const std::size_t width = family.members.size();
    std::vector<SweepCell> cells(n_values.size() * width);
    parallel_for(cells.size(), threads, [&](std::size_t job) {
        const int n = n_values[job / width];
        const std::size_t slot = job % width;
        auto [name, f] = realize_member(family.seed, n, slot, family.members[slot]);
        EvenSphereCache cache(f);

        bool nonneg = true;
        for (double v : f.values())
            if (v < 0.0) nonneg = false;
        double lemma1 = 0.0;
        {
            CubeFunction denom(n);
            if (nonneg) {
                denom = cesaro_maximal_cached(cache, CesaroOrder{0.0, 0.0});
            } else {
                CubeFunction absf = f;
                for (double& v : absf.values()) v = std::fabs(v);
                denom = cesaro_maximal(absf, CesaroOrder{0.0, 0.0});
            }
            for (double alpha : {0.5, 1.0})
                lemma1 = std::max(
                    lemma1, guarded_ratio(cesaro_maximal_cached(cache, CesaroOrder{alpha, beta}),
                                          denom));
        }
        double lemma2;
        {
            const CubeFunction num = cesaro_maximal_cached(cache, CesaroOrder{double(-m), beta});
            CubeFunction den(n, 0.0);
            for (int j = 1; j <= m + 1; ++j) {
                const CubeFunction part = cesaro_maximal_cached(cache, CesaroOrder{double(-j), 0.0});
                for (std::uint64_t x = 0; x < den.size(); ++x) den[x] += part[x];
            }
            lemma2 = guarded_ratio(num, den);
        }
        double lemma3;
        {
            const CubeFunction a = cesaro_maximal_cached(cache, CesaroOrder{double(-m), 0.0});
            const CubeFunction b =
                cesaro_maximal_cached(cache, CesaroOrder{double(-(m - 1)), 0.0});
            CubeFunction num(n, 0.0);
            for (std::uint64_t x = 0; x < num.size(); ++x)
                num[x] = std::max(0.0, a[x] - 2.0 * b[x]);
            lemma3 = guarded_ratio(num, square_function_cached(cache, m));
        }
        const double stat = std::max({lemma1, lemma2, lemma3});
        cells[job] = SweepCell{
            n, name, stat,
            {{"slot", slot}, {"lemma1", lemma1}, {"lemma2", lemma2}, {"lemma3", lemma3}}};
    });
    report.cells = std::move(cells);

    std::vector<PerNRow> by_lemma[3];
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        PerNRow row;
        row.n = n_values[i];
        double lemma_max[3] = {0.0, 0.0, 0.0};
        std::string argmax_member;
        for (std::size_t s = 0; s < width; ++s) {
            const SweepCell& c = report.cells[i * width + s];
            for (int l = 0; l < 3; ++l)
                lemma_max[l] = std::max(
                    lemma_max[l], c.meta.at("lemma" + std::to_string(l + 1)).get<double>());
            if (c.statistic >= row.statistic) {
                row.statistic = c.statistic;
                argmax_member = c.member;
            }
        }
        row.meta = {{"argmax_member", argmax_member},
                    {"lemma1", lemma_max[0]},
                    {"lemma2", lemma_max[1]},
                    {"lemma3", lemma_max[2]}};
        for (int l = 0; l < 3; ++l) by_lemma[l].push_back({row.n, lemma_max[l], {}});
        report.per_n.push_back(std::move(row));
        report.estimated_constant = std::max(report.estimated_constant, report.per_n.back().statistic);
    }
    for (int l = 0; l < 3; ++l) {
        const double growth = max_consecutive_growth(by_lemma[l]);
        if (growth > 1.0 + th.trend_growth)
            report.flags.push_back("lemma" + std::to_string(l + 1) + " ratio grows by factor " +
                                   std::to_string(growth) + " between consecutive dimensions");
    }
    return report;
}

} // namespace cubeharm
