#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cubeharm/rational.hpp"

namespace cubeharm {

// Exact (n+1)x(n+1) matrix of normalized Krawtchouk values κ_k^n(r): the
// Fourier multiplier of the L¹-normalized k-sphere average at frequency
// level r. Entries satisfy κ_k(r) = κ_r(k), κ_k(n-r) = (-1)^k κ_k(r), and
// |κ_k(r)| ≤ 1. float_view is rounded from the exact entries, never computed
// independently (the alternating sum is ill-conditioned in doubles).
class KrawtchoukTable {
  public:
    explicit KrawtchoukTable(int n);

    int n() const { return n_; }
    const Rational& at(int k, int r) const;
    double float_at(int k, int r) const;
    const std::vector<std::vector<double>>& float_view() const { return float_view_; }

    std::string to_csv() const; // header "k,r,numerator,denominator,float"
    nlohmann::json to_json() const;

  private:
    int n_;
    std::vector<std::vector<Rational>> entries_;
    std::vector<std::vector<double>> float_view_;
};

// Builds the table two independent ways (alternating-sum formula and the
// σ_1 three-term recurrence) and cross-checks them entry by entry.
KrawtchoukTable build_table(int n);

// Process-wide cache of immutable tables, safe for concurrent readers.
const KrawtchoukTable& table_cache(int n);

// Residuals (LHS - RHS) of the two contiguous relations
//   κ_r^n(l) + κ_r^n(l-1) =  2 (n-r)/n · κ_r^{n-1}(l-1)
//   κ_r^n(l) - κ_r^n(l-1) = -2 r/n     · κ_{r-1}^{n-1}(l-1)
// both of which must be exactly zero.
std::pair<Rational, Rational> contiguous_residuals(const KrawtchoukTable& table_n,
                                                   const KrawtchoukTable& table_n_minus_1,
                                                   int r, int l);

enum class PartialMethod { iterated, closed_form };

// m-fold step-2 backward difference in the argument:
//   ∂^m κ_r^n(l) = Σ_j (-1)^j binom(m,j) κ_r^n(l-2j)      (iterated)
//                = (-4)^m binom(n-2m, r-m)/binom(n, r) κ_{r-m}^{n-2m}(l-2m)
// and 0 by convention when m > min{r, l/2}. Both methods agree exactly.
Rational partial_m(int n, int m, int r, int l, PartialMethod method);

// c_n := min over 1 ≤ k, r ≤ n/2 with κ_k^n(r) ≠ 0 of -n·ln|κ_k^n(r)| / (k·r),
// the best constant in the decay bound |κ_k^n(r)| ≤ e^{-c kr/n} at dimension n.
// Zeros impose no constraint; if every pair is a zero the result is +∞.
double decay_constant(int n);

struct CesaroOrder {
    double alpha = 0.0;
    double beta = 0.0; // λ = α + iβ

    std::complex<double> lambda() const { return {alpha, beta}; }
};

struct ComplexBinomialSeq {
    CesaroOrder order;
    std::vector<std::complex<double>> values; // A_0^λ ... A_n^λ
};

// A_n^λ = (λ+1)(λ+2)···(λ+n)/n!, computed by A_n = A_{n-1}(λ+n)/n with
// A_0 = 1. Stable for n up to 10^4 (no factorials materialized).
ComplexBinomialSeq complex_binomial(CesaroOrder order, int n_max);

// Exact-rational variant for real rational orders; same recurrence.
std::vector<Rational> complex_binomial_exact(const Rational& alpha, int n_max);

} // namespace cubeharm
