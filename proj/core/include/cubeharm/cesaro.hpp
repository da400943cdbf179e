#pragma once

#include <complex>
#include <vector>

#include "cubeharm/cube_function.hpp"
#include "cubeharm/krawtchouk.hpp"

namespace cubeharm {

// Complex-valued function on the cube as a (real, imaginary) pair. Only the
// Cesàro machinery needs complex values (through the coefficients A_n^λ);
// everything else in the library stays real.
struct ComplexCubeFunction {
    CubeFunction re;
    CubeFunction im;

    explicit ComplexCubeFunction(int n) : re(n, 0.0), im(n, 0.0) {}
    ComplexCubeFunction(CubeFunction real_part, CubeFunction imag_part)
        : re(std::move(real_part)), im(std::move(imag_part)) {}
};

// acc += a·x
void axpy(ComplexCubeFunction& acc, std::complex<double> a, const ComplexCubeFunction& x);
void axpy(ComplexCubeFunction& acc, std::complex<double> a, const CubeFunction& x);
CubeFunction modulus(const ComplexCubeFunction& x);

// σ_{2k}*f for 0 ≤ k ≤ floor(n/4), computed once (one transform of f plus one
// inverse per radius) and shared by every Cesàro order.
class EvenSphereCache {
  public:
    explicit EvenSphereCache(const CubeFunction& f);

    int n_cube() const { return n_; }
    int kmax() const { return n_ / 4; }
    const CubeFunction& term(int k) const { return terms_.at(k); }

  private:
    int n_;
    std::vector<CubeFunction> terms_;
};

// S_n^λ f = Σ_{k≤n} A_{n-k}^λ σ_{2k}*f for n = 0 … floor(n_cube/4).
struct CesaroSequence {
    int n_cube = 0;
    CesaroOrder order;
    std::vector<ComplexCubeFunction> terms;
};

CesaroSequence cesaro_mean(const CubeFunction& f, CesaroOrder order);
CesaroSequence cesaro_mean_cached(const EvenSphereCache& cache, CesaroOrder order);

// terms[n] = Δ^m σ_{2n} * f = Σ_j (-1)^j binom(m,j) σ_{2(n-j)}*f (σ_{<0} := 0).
// This is the order λ = -m-1 Cesàro mean computed by an independent route:
// the coefficients A_j^{-m-1} are exactly the alternating binomials (-1)^j
// binom(m,j), zero past j = m.
CesaroSequence difference_means(const CubeFunction& f, int m);

// S_*^λ f = max_n |S_n^λ f| / (n+1)^{α+1}  (the modulus of (n+1)^{λ+1} only
// sees the real part of the exponent).
CubeFunction cesaro_maximal(const CubeFunction& f, CesaroOrder order);
CubeFunction cesaro_maximal_cached(const EvenSphereCache& cache, CesaroOrder order);

// R_m f = sqrt( Σ_{k ≤ floor(n/4)} (k+1)^{2m-1} |S_k^{-m-1}f|² ), m ≥ 1.
CubeFunction square_function(const CubeFunction& f, int m);
CubeFunction square_function_cached(const EvenSphereCache& cache, int m);

// r(x) = smallest even radius 2k (k ≤ floor(n/4)) with σ_{2k}*f(x) equal to
// the even maximal value at x; ties broken to the smallest radius so results
// are reproducible. Defining property: σ_{r(x)}*f(x) = S_*^{-1}f(x).
std::vector<int> choice_function(const CubeFunction& f);

// Max-norm residual of the summation-by-parts identity
//   Σ_{k=0}^t A_{n-k}^{-l+iβ} S_k^{-m-1+l} f
//     = A_{n-t}^{-l+iβ} S_t^{-m+l} f + Σ_{k=0}^{t-1} A_{n-k}^{-l-1+iβ} S_k^{-m+l} f
// for 0 ≤ t ≤ n ≤ floor(n_cube/4), 0 ≤ l ≤ m. The identity is exact; the
// residual only carries rounding noise.
double sbp_residual(const CubeFunction& f, int n, int t, int l, int m, double beta);

} // namespace cubeharm
