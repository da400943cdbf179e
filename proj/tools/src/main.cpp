// cube-harmonics: harmonic analysis on the Boolean hypercube from the shell.
// Subcommands: verify, table, sweep, counterexample, center, info.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/harness.hpp"
#include "cubeharm/io.hpp"
#include "cubeharm/krawtchouk.hpp"
#include "cubeharm/maximal.hpp"
#include "cubeharm/radial.hpp"
#include "cubeharm/rng.hpp"
#include "cubeharm/verify.hpp"
#include "cubeharm/version.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Soft dimension cap: 24 by default, overridable via CUBE_HARMONICS_MAX_N,
// never above the hard library limit of 30.
int dimension_cap() {
    if (const char* env = std::getenv("CUBE_HARMONICS_MAX_N")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 30L));
    }
    return 24;
}

void require_dimension(int n) {
    if (n < 1 || n > dimension_cap())
        throw UsageError("dimension n=" + std::to_string(n) + " outside [1, " +
                         std::to_string(dimension_cap()) +
                         "] (raise with CUBE_HARMONICS_MAX_N, hard cap 30)");
}

std::vector<int> make_grid(int n_min, int n_max, int step) {
    if (step < 1) throw UsageError("grid step must be positive");
    if (n_min > n_max) throw UsageError("--n-min must not exceed --n-max");
    require_dimension(n_min);
    require_dimension(n_max);
    std::vector<int> grid;
    for (int n = n_min; n <= n_max; n += step) grid.push_back(n);
    return grid;
}

// Machine report goes to --out (atomic) when given, to stdout otherwise.
// Human-readable lines always go to stdout before it.
void emit_report(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content << '\n';
    } else {
        cubeharm::atomic_write_file(out_path, content + "\n");
        std::cout << "wrote " << out_path << '\n';
    }
}

void emit_sweep_report(const cubeharm::SweepReport& report, const std::string& format,
                       const std::string& out_path) {
    emit_report(format == "csv" ? report.to_csv() : report.to_json().dump(2), out_path);
}

int finish_sweep(const cubeharm::SweepReport& report, const std::string& format,
                 const std::string& out_path) {
    for (const auto& flag : report.flags) std::cout << "flagged: " << flag << '\n';
    emit_sweep_report(report, format, out_path);
    return report.flags.empty() ? 0 : 1;
}

int cmd_verify(int n, bool exact, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
    require_dimension(n);
    cubeharm::VerifyOptions opt;
    opt.n = n;
    opt.exact = exact;
    opt.seed = seed;
    const auto results = cubeharm::run_verify(opt);

    int fails = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-42s residual=%-11.3g %6.2fs\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.residual, r.seconds);
        if (!r.pass) {
            ++fails;
            std::printf("       %s\n", r.detail.c_str());
        }
    }
    std::printf("%zu checks, %d failed (n=%d%s)\n", results.size(), fails, n,
                exact ? ", exact" : "");

    if (!out_path.empty() || format == "csv") {
        std::string content;
        if (format == "csv") {
            std::ostringstream os;
            os << "name,pass,residual,seconds\n";
            for (const auto& r : results)
                os << r.name << ',' << (r.pass ? 1 : 0) << ',' << r.residual << ',' << r.seconds
                   << '\n';
            content = os.str();
            content.pop_back();
        } else {
            json checks = json::array();
            for (const auto& r : results)
                checks.push_back({{"name", r.name},
                                  {"pass", r.pass},
                                  {"residual", r.residual},
                                  {"seconds", r.seconds},
                                  {"detail", r.detail}});
            content = json{{"tool_version", cubeharm::kToolVersion},
                           {"n", n},
                           {"exact", exact},
                           {"seed", seed},
                           {"failures", fails},
                           {"checks", checks}}
                          .dump(2);
        }
        emit_report(content, out_path);
    }
    return fails == 0 ? 0 : 1;
}

int cmd_table(const std::string& kind, int n, int n_min, int n_max, int m,
              const std::string& format, const std::string& out_path) {
    if (kind == "krawtchouk") {
        require_dimension(n);
        const cubeharm::KrawtchoukTable& t = cubeharm::table_cache(n);
        emit_report(format == "csv" ? t.to_csv() : t.to_json().dump(2), out_path);
        return 0;
    }
    if (kind == "partial") {
        require_dimension(n);
        if (m < 0) throw UsageError("--m must be nonnegative for --kind partial");
        std::ostringstream csv;
        csv << "m,r,l,numerator,denominator,float\n";
        json rows = json::array();
        for (int r = 0; r <= n; ++r)
            for (int l = 0; l <= n; ++l) {
                const cubeharm::Rational v =
                    cubeharm::partial_m(n, m, r, l, cubeharm::PartialMethod::closed_form);
                csv << m << ',' << r << ',' << l << ',' << numerator(v).str() << ','
                    << denominator(v).str() << ',' << cubeharm::to_double(v) << '\n';
                rows.push_back({{"m", m},
                                {"r", r},
                                {"l", l},
                                {"numerator", numerator(v).str()},
                                {"denominator", denominator(v).str()},
                                {"float", cubeharm::to_double(v)}});
            }
        std::string flat = csv.str();
        flat.pop_back();
        emit_report(format == "csv" ? flat : json{{"n", n}, {"entries", rows}}.dump(2), out_path);
        return 0;
    }
    if (kind == "multiplier") {
        require_dimension(n);
        const cubeharm::KrawtchoukTable& t = cubeharm::table_cache(n);
        std::ostringstream csv;
        csv << "k,r,numerator,denominator,float\n";
        json rows = json::array();
        for (int k = 0; k <= n; ++k) {
            const auto s =
                cubeharm::profile_to_multiplier_exact(cubeharm::sphere_kernel_exact(n, k), t);
            for (int r = 0; r <= n; ++r) {
                const cubeharm::Rational& v = s.multiplier[r];
                csv << k << ',' << r << ',' << numerator(v).str() << ','
                    << denominator(v).str() << ',' << cubeharm::to_double(v) << '\n';
                rows.push_back({{"k", k},
                                {"r", r},
                                {"numerator", numerator(v).str()},
                                {"denominator", denominator(v).str()},
                                {"float", cubeharm::to_double(v)}});
            }
        }
        std::string flat = csv.str();
        flat.pop_back();
        emit_report(format == "csv" ? flat : json{{"n", n}, {"entries", rows}}.dump(2), out_path);
        return 0;
    }
    if (kind == "decay") {
        const std::vector<int> grid =
            (n_min > 0 && n_max > 0) ? make_grid(n_min, n_max, 1) : std::vector<int>{n};
        std::ostringstream csv;
        csv << "n,decay_constant\n";
        json rows = json::array();
        for (int nn : grid) {
            require_dimension(nn);
            const double c = cubeharm::decay_constant(nn);
            if (std::isinf(c)) {
                csv << nn << ",inf\n";
                rows.push_back({{"n", nn}, {"decay_constant", "inf"}});
            } else {
                csv << nn << ',' << c << '\n';
                rows.push_back({{"n", nn}, {"decay_constant", c}});
            }
        }
        std::string flat = csv.str();
        flat.pop_back();
        emit_report(format == "csv" ? flat : json{{"entries", rows}}.dump(2), out_path);
        return 0;
    }
    throw UsageError("unknown --kind '" + kind +
                     "' (expected krawtchouk, partial, multiplier, decay)");
}

cubeharm::TestFamily family_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "default") return cubeharm::TestFamily::default_family(seed);
    if (name == "nonneg") return cubeharm::TestFamily::nonneg_family(seed);
    throw UsageError("unknown --family '" + name + "' (expected default, nonneg)");
}

int cmd_sweep(const std::string& kind, int n_min, int n_max, double p, int m, double beta,
              const std::string& family_name, std::uint64_t seed, int threads,
              const std::string& format, const std::string& out_path) {
    const std::vector<int> grid = make_grid(n_min, n_max, 4);
    if (kind == "lp") {
        const auto report =
            cubeharm::ratio_sweep(cubeharm::MaximalVariant::full, cubeharm::LpExponent(p),
                                  family_by_name(family_name, seed), grid, false, threads);
        return finish_sweep(report, format, out_path);
    }
    if (kind == "weak") {
        const auto report =
            cubeharm::ratio_sweep(cubeharm::MaximalVariant::smooth, cubeharm::LpExponent(1.0),
                                  family_by_name(family_name, seed), grid, true, threads);
        return finish_sweep(report, format, out_path);
    }
    if (kind == "prop-main") {
        if (m < 1) throw UsageError("--m must be >= 1 for --kind prop-main");
        return finish_sweep(cubeharm::prop_main_sweep(grid, m), format, out_path);
    }
    if (kind == "nevo") {
        if (m < 1 || m > 3) throw UsageError("--m must be in {1, 2, 3} for --kind nevo");
        const auto report = cubeharm::nevo_stein_ratios(family_by_name(family_name, seed), m,
                                                        beta, grid, threads);
        return finish_sweep(report, format, out_path);
    }
    throw UsageError("unknown --kind '" + kind + "' (expected lp, weak, prop-main, nevo)");
}

int cmd_counterexample(int q, int n_min, int n_max, const std::string& format,
                       const std::string& out_path) {
    if (q < 2) throw UsageError("--q must be >= 2");
    std::vector<int> grid;
    for (int n = n_min; n <= n_max; ++n)
        if (n % q == 0) grid.push_back(n);
    if (grid.size() < 2)
        throw UsageError("need at least two multiples of q in [--n-min, --n-max]");
    for (int n : grid) require_dimension(n);

    const auto report = cubeharm::weak_type_growth(grid, q);
    std::printf("%-4s %-14s %-12s\n", "n", "lower_bound", "bound/sqrt(n)");
    for (const auto& row : report.per_n)
        std::printf("%-4d %-14.6g %-12.6g\n", row.n, row.statistic,
                    row.meta.at("ratio_to_sqrt_n").get<double>());
    std::printf("log-log slope %.4f\n", report.estimated_constant);
    return finish_sweep(report, format, out_path);
}

cubeharm::CubeFunction load_center_input(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open " + path);
        json j;
        in >> j;
        return j.get<cubeharm::CubeFunction>();
    }
    return cubeharm::load_cubf_file(path);
}

// Seeded random subset of density 1/8; re-drawn (deterministically) until it
// is neither empty nor the full cube, as find_center requires.
cubeharm::CubeFunction random_density_set(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        cubeharm::SplitMix64 rng(seed ^ (attempt * 0x9E3779B97F4A7C15ULL));
        cubeharm::CubeFunction L(n);
        std::uint64_t count = 0;
        for (double& v : L.values()) {
            v = rng.next_double() < 0.125 ? 1.0 : 0.0;
            count += static_cast<std::uint64_t>(v);
        }
        if (count > 0 && count < L.size()) return L;
    }
}

int cmd_center(const std::string& input, int n, double p, std::uint64_t seed,
               const std::string& format, const std::string& out_path) {
    cubeharm::CubeFunction L;
    if (!input.empty()) {
        L = load_center_input(input);
        require_dimension(L.n());
    } else {
        require_dimension(n);
        L = random_density_set(n, seed);
    }
    const auto result = cubeharm::find_center(L, cubeharm::LpExponent(p));

    std::string bits(L.n(), '0');
    for (int i = 0; i < L.n(); ++i)
        if (result.index >> i & 1) bits[i] = '1';
    double density = 0.0;
    for (double v : L.values()) density += v;
    density /= double(L.size());

    std::printf("n=%d |L|/2^n=%.4f center index=%llu bits=%s\n", L.n(), density,
                static_cast<unsigned long long>(result.index), bits.c_str());
    std::printf("maximal value at center %.6g <= averaging bound %.6g : %s\n", result.value,
                result.averaging_bound, result.value <= result.averaging_bound ? "yes" : "NO");

    if (!out_path.empty() || format == "csv") {
        std::string content;
        if (format == "csv") {
            std::ostringstream os;
            os << "n,index,value,averaging_bound\n"
               << L.n() << ',' << result.index << ',' << result.value << ','
               << result.averaging_bound;
            content = os.str();
        } else {
            content = json{{"tool_version", cubeharm::kToolVersion},
                           {"n", L.n()},
                           {"p", p},
                           {"index", result.index},
                           {"index_bits", bits},
                           {"value", result.value},
                           {"averaging_bound", result.averaging_bound},
                           {"density", density}}
                          .dump(2);
        }
        emit_report(content, out_path);
    }
    return result.value <= result.averaging_bound ? 0 : 1;
}

int cmd_info() {
    std::cout << cubeharm::kToolVersion << "\n\n"
              << "Conventions\n"
              << "  index        x in [0, 2^n); bit i of x is coordinate i+1; group op is xor\n"
              << "  measure      counting measure; ||f||_p = (sum |f|^p)^(1/p)\n"
              << "  transforms   wht_normalized: 2^(-n/2) character sums, self-inverse,\n"
              << "               Plancherel; character_sum_transform: unnormalized, turns\n"
              << "               convolution into pointwise multiplication\n"
              << "  spheres      sigma_k = L1-normalized radius-k indicator; multiplier of\n"
              << "               sigma_k at level r is the Krawtchouk value kappa_k^n(r)\n"
              << "  maximal      full: k <= n; half: k <= floor(n/2); even: 2k <= floor(n/2);\n"
              << "               smooth: window averages K <= floor(n/2); semigroup: t in\n"
              << "               {0} union {2^j : -8 <= j <= 6}\n"
              << "  cesaro       S_n^lambda over even spheres sigma_{2k}, k <= floor(n/4);\n"
              << "               maximal normalization (n+1)^(alpha+1); choice function\n"
              << "               breaks ties toward the smallest radius\n"
              << "  rng          splitmix64, constants 0x9E3779B97F4A7C15 /\n"
              << "               0xBF58476D1CE4E5B9 / 0x94D049BB133111EB; member stream for\n"
              << "               slot i at dimension n seeds with seed ^ (n << 32) ^ i;\n"
              << "               doubles are (x >> 11) * 2^-53\n"
              << "  exact mode   rational arithmetic via Boost.Multiprecision; --exact widens\n"
              << "               the exact-identity coverage in verify\n"
              << "\nLimits\n"
              << "  dimension cap " << dimension_cap()
              << " (env CUBE_HARMONICS_MAX_N, hard cap 30)\n"
              << "\nDefaults\n"
              << "  --n 12 (verify) / 8 (table) / 10 (center); --n-min 8; --n-max 20\n"
              << "  --m 1; --beta 0; --p 2; --q 2; --seed 12648430; --family default;\n"
              << "  --format json; --threads 1\n"
              << "\nExit codes: 0 success, 1 failed verification or flagged threshold, 2 usage\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis on the Boolean hypercube: exact identity checks, "
                 "Krawtchouk tables, dimension sweeps, and weak-type counterexamples"};
    app.set_version_flag("--version", std::string(cubeharm::kToolVersion));
    app.require_subcommand(1);

    int n_verify = 12, n_table = 8, n_center = 10;
    int n_min = 8, n_max = 20, cx_n_min = 8, cx_n_max = 24;
    int m = 1, q = 2, threads = 1;
    double p = 2.0, beta = 0.0;
    bool exact = false;
    std::uint64_t seed = 12648430ULL;
    std::string format = "json", out_path, kind, family_name = "default", center_input;

    auto* verify = app.add_subcommand("verify", "run the named identity and property checks");
    verify->add_option("--n", n_verify, "cube dimension for the random-function checks");
    verify->add_flag("--exact", exact, "widen the exact (rational) coverage");
    verify->add_option("--seed", seed, "family seed");
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", out_path, "write the machine report here (atomic)");

    auto* table = app.add_subcommand("table", "print exact tables");
    table->add_option("--kind", kind, "krawtchouk | partial | multiplier | decay")->required();
    table->add_option("--n", n_table, "cube dimension");
    table->add_option("--n-min", cx_n_min, "first dimension (decay ranges)")->expected(1);
    table->add_option("--n-max", cx_n_max, "last dimension (decay ranges)")->expected(1);
    table->add_option("--m", m, "difference order for --kind partial");
    table->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    table->add_option("--out", out_path, "write the table here (atomic)");

    auto* sweep = app.add_subcommand("sweep", "run a dimension-sweep campaign");
    sweep->add_option("--kind", kind, "lp | weak | prop-main | nevo")->required();
    sweep->add_option("--n-min", n_min, "first dimension of the grid (step 4)");
    sweep->add_option("--n-max", n_max, "last dimension of the grid");
    sweep->add_option("--p", p, "Lp exponent for --kind lp");
    sweep->add_option("--m", m, "difference order for prop-main / nevo");
    sweep->add_option("--beta", beta, "imaginary part of the Cesaro order (nevo)");
    sweep->add_option("--family", family_name, "default | nonneg");
    sweep->add_option("--seed", seed, "family seed");
    sweep->add_option("--threads", threads, "worker threads for the campaign");
    sweep->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--out", out_path, "write the report here (atomic)");

    auto* cx = app.add_subcommand("counterexample",
                                  "weak-type lower bounds on Z_q^n (sqrt(N) growth)");
    cx->add_option("--q", q, "alphabet size");
    cx->add_option("--n-min", cx_n_min, "first dimension (multiples of q are used)");
    cx->add_option("--n-max", cx_n_max, "last dimension");
    cx->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cx->add_option("--out", out_path, "write the report here (atomic)");

    auto* center = app.add_subcommand("center", "find the sphere-avoiding center of a set");
    center->add_option("input", center_input, "CUBF or JSON cube function (0/1-valued)");
    center->add_option("--n", n_center, "dimension for the random set when no input is given");
    center->add_option("--p", p, "exponent of the averaging bound");
    center->add_option("--seed", seed, "seed for the random set");
    center->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    center->add_option("--out", out_path, "write the report here (atomic)");

    auto* info = app.add_subcommand("info", "print conventions, defaults, and limits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(n_verify, exact, seed, format, out_path);
        if (table->parsed())
            return cmd_table(kind, n_table, table->count("--n-min") ? cx_n_min : 0,
                             table->count("--n-max") ? cx_n_max : 0, m, format, out_path);
        if (sweep->parsed())
            return cmd_sweep(kind, n_min, n_max, p, m, beta, family_name, seed, threads, format,
                             out_path);
        if (cx->parsed()) return cmd_counterexample(q, cx_n_min, cx_n_max, format, out_path);
        if (center->parsed()) return cmd_center(center_input, n_center, p, seed, format, out_path);
        if (info->parsed()) return cmd_info();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
