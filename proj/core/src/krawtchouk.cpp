#include "cubeharm/krawtchouk.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cubeharm {

namespace {

// Route one: alternating intersection-parity sum,
// κ_k^n(r) = (1/binom(n,k)) Σ_j (-1)^j binom(r,j) binom(n-r,k-j).
std::vector<std::vector<Rational>> build_by_sum(int n) {
    std::vector<std::vector<Rational>> e(n + 1, std::vector<Rational>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const BigInt denom = binomial_exact(n, k);
        for (int r = 0; r <= n; ++r) {
            BigInt num = 0;
            for (int j = 0; j <= k; ++j) {
                const BigInt term = binomial_exact(r, j) * binomial_exact(n - r, k - j);
                if (j % 2 == 0)
                    num += term;
                else
                    num -= term;
            }
            e[k][r] = Rational(num, denom);
        }
    }
    return e;
}

// Route two: the σ_1 * σ_k = (k/n)σ_{k-1} + ((n-k)/n)σ_{k+1} identity, read on
// multipliers: κ_1(r)·κ_k(r) = (k/n)κ_{k-1}(r) + ((n-k)/n)κ_{k+1}(r), giving a
// three-term recurrence in k from κ_0 ≡ 1 and κ_1(r) = (n-2r)/n.
std::vector<std::vector<Rational>> build_by_recurrence(int n) {
    std::vector<std::vector<Rational>> e(n + 1, std::vector<Rational>(n + 1));
    for (int r = 0; r <= n; ++r) {
        e[0][r] = 1;
        e[1][r] = Rational(n - 2 * r, n);
    }
    for (int k = 1; k < n; ++k) {
        for (int r = 0; r <= n; ++r) {
            // κ_{k+1}(r) = [n·κ_1(r)·κ_k(r) - k·κ_{k-1}(r)] / (n-k)
            Rational next = (Rational(n) * e[1][r] * e[k][r] - Rational(k) * e[k - 1][r]) /
                            Rational(n - k);
            e[k + 1][r] = std::move(next);
        }
    }
    return e;
}

} // namespace

KrawtchoukTable::KrawtchoukTable(int n) : n_(n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("KrawtchoukTable: n must be in [1, 64]");
    entries_ = build_by_sum(n);
    const auto check = build_by_recurrence(n);
    for (int k = 0; k <= n; ++k)
        for (int r = 0; r <= n; ++r)
            if (entries_[k][r] != check[k][r])
                throw std::logic_error("KrawtchoukTable: construction routes disagree at (" +
                                       std::to_string(k) + "," + std::to_string(r) + ")");
    float_view_.assign(n + 1, std::vector<double>(n + 1));
    for (int k = 0; k <= n; ++k)
        for (int r = 0; r <= n; ++r) float_view_[k][r] = to_double(entries_[k][r]);
}

const Rational& KrawtchoukTable::at(int k, int r) const {
    if (k < 0 || k > n_ || r < 0 || r > n_)
        throw std::out_of_range("KrawtchoukTable::at: index out of range");
    return entries_[k][r];
}

double KrawtchoukTable::float_at(int k, int r) const {
    if (k < 0 || k > n_ || r < 0 || r > n_)
        throw std::out_of_range("KrawtchoukTable::float_at: index out of range");
    return float_view_[k][r];
}

std::string KrawtchoukTable::to_csv() const {
    std::ostringstream out;
    out << "k,r,numerator,denominator,float\n";
    out.precision(17);
    for (int k = 0; k <= n_; ++k)
        for (int r = 0; r <= n_; ++r)
            out << k << ',' << r << ',' << numerator(entries_[k][r]).str() << ','
                << denominator(entries_[k][r]).str() << ',' << float_view_[k][r] << '\n';
    return out.str();
}

nlohmann::json KrawtchoukTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= n_; ++k)
        for (int r = 0; r <= n_; ++r)
            rows.push_back({{"k", k},
                            {"r", r},
                            {"numerator", numerator(entries_[k][r]).str()},
                            {"denominator", denominator(entries_[k][r]).str()},
                            {"float", float_view_[k][r]}});
    return nlohmann::json{{"n", n_}, {"entries", rows}};
}

KrawtchoukTable build_table(int n) {
    return KrawtchoukTable(n);
}

const KrawtchoukTable& table_cache(int n) {
    static std::mutex mu;
    static std::map<int, KrawtchoukTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, KrawtchoukTable(n)).first;
    return it->second;
}

std::pair<Rational, Rational> contiguous_residuals(const KrawtchoukTable& table_n,
                                                   const KrawtchoukTable& table_n_minus_1,
                                                   int r, int l) {
    const int n = table_n.n();
    if (table_n_minus_1.n() != n - 1)
        throw std::invalid_argument("contiguous_residuals: tables must have dimensions n, n-1");
    if (r < 1 || r > n || l < 1 || l > n)
        throw std::out_of_range("contiguous_residuals: require 1 <= r, l <= n");
    const Rational& a = table_n.at(r, l);
    const Rational& b = table_n.at(r, l - 1);
    // Row index r of the smaller table is valid only for r <= n-1; at r = n the
    // addition identity has coefficient (n-r)/n = 0 and the subtraction one
    // only needs row r-1.
    Rational add_rhs = 0;
    if (r <= n - 1) add_rhs = Rational(2 * (n - r), n) * table_n_minus_1.at(r, l - 1);
    Rational sub_rhs = Rational(-2 * r, n) * table_n_minus_1.at(r - 1, l - 1);
    return {a + b - add_rhs, (a - b) - sub_rhs};
}

Rational partial_m(int n, int m, int r, int l, PartialMethod method) {
    if (m < 0 || r < 0 || l < 0 || r > n || l > n)
        throw std::out_of_range("partial_m: require 0 <= m and 0 <= r, l <= n");
    if (m > r || 2 * m > l) return 0; // convention: zero beyond min{r, l/2}
    if (method == PartialMethod::iterated) {
        const KrawtchoukTable& t = table_cache(n);
        Rational acc = 0;
        for (int j = 0; j <= m; ++j) {
            const Rational term = Rational(binomial_exact(m, j)) * t.at(r, l - 2 * j);
            if (j % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        return acc;
    }
    const BigInt top = binomial_exact(n - 2 * m, r - m);
    if (top == 0) return 0; // r-m exceeds n-2m: the closed form degenerates
    Rational coeff(top, binomial_exact(n, r));
    for (int i = 0; i < m; ++i) coeff *= -4;
    if (n - 2 * m == 0) return coeff; // r=m=n/2, l=2m: κ over the empty cube is 1
    return coeff * table_cache(n - 2 * m).at(r - m, l - 2 * m);
}

double decay_constant(int n) {
    if (n < 2) throw std::invalid_argument("decay_constant: n >= 2 required");
    const KrawtchoukTable& t = table_cache(n);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; 2 * k <= n; ++k) {
        for (int r = 1; 2 * r <= n; ++r) {
            if (t.at(k, r) == 0) continue;
            const double c = -double(n) * std::log(std::fabs(t.float_at(k, r))) / (double(k) * r);
            best = std::min(best, c);
        }
    }
    return best;
}

ComplexBinomialSeq complex_binomial(CesaroOrder order, int n_max) {
    if (n_max < 0) throw std::invalid_argument("complex_binomial: n_max >= 0 required");
    ComplexBinomialSeq seq;
    seq.order = order;
    seq.values.resize(n_max + 1);
    seq.values[0] = 1.0;
    const std::complex<double> lambda = order.lambda();
    for (int j = 1; j <= n_max; ++j)
        seq.values[j] = seq.values[j - 1] * (lambda + double(j)) / double(j);
    return seq;
}

std::vector<Rational> complex_binomial_exact(const Rational& alpha, int n_max) {
    if (n_max < 0) throw std::invalid_argument("complex_binomial_exact: n_max >= 0 required");
    std::vector<Rational> v(n_max + 1);
    v[0] = 1;
    for (int j = 1; j <= n_max; ++j) v[j] = v[j - 1] * (alpha + j) / j;
    return v;
}

} // namespace cubeharm
