#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cubeharm {

// Dense real-valued function on the hypercube {0,1}^n. Index x is a bitmask:
// bit i of x is coordinate x(i+1). All operators in the library act on this.
class CubeFunction {
  public:
    CubeFunction() = default;
    explicit CubeFunction(int n, double fill = 0.0);
    CubeFunction(int n, std::vector<double> values);

    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_; }

    double& operator[](std::uint64_t x) { return values_[x]; }
    double operator[](std::uint64_t x) const { return values_[x]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // Throws std::invalid_argument if any entry is NaN or infinite.
    void check_finite(const char* context) const;

  private:
    int n_ = 0;
    std::vector<double> values_;
};

// Extended exponent p ∈ [1, ∞] for the counting-measure L^p norms.
class LpExponent {
  public:
    explicit LpExponent(double p);
    static LpExponent infinity();

    bool is_infinity() const;
    double value() const { return p_; }

  private:
    double p_;
};

int hamming_weight(std::uint64_t x, int n);

// (Σ_x |f(x)|^p)^{1/p} against counting measure; max |f| for p = ∞.
double lp_norm(const CubeFunction& f, LpExponent p);

// Self-inverse Fourier transform: ℱf(S) = 2^{-n/2} Σ_x f(x) (-1)^{x·S}.
// Applying it twice is the identity; it preserves the L² norm.
CubeFunction wht_normalized(const CubeFunction& f);

// Unnormalized character sum ĝ(S) = Σ_y g(y) (-1)^{y·S} = 2^{n/2} ℱg(S).
// This is the transform under which convolution becomes pointwise product
// (multiplier calculus); the normalized one above keeps Plancherel. Both
// conventions are needed, so both are exposed.
CubeFunction character_sum_transform(const CubeFunction& g);

enum class ConvolveMethod { direct, spectral };

// Group convolution (f*g)(x) = Σ_y f(x-y) g(y), subtraction = xor.
// direct is the O(4^n) double sum; spectral runs in O(n·2^n).
CubeFunction convolve(const CubeFunction& f, const CubeFunction& g,
                      ConvolveMethod method = ConvolveMethod::spectral);

CubeFunction delta_function(int n);

// Serialization. Binary layout: magic "CUBF", u32 version, u32 n, then
// 2^n little-endian doubles. JSON: {"n": ..., "values": [...]}.
void save_cubf(const CubeFunction& f, std::ostream& out);
CubeFunction load_cubf(std::istream& in);
void save_cubf_file(const CubeFunction& f, const std::string& path);
CubeFunction load_cubf_file(const std::string& path);

void to_json(nlohmann::json& j, const CubeFunction& f);
void from_json(const nlohmann::json& j, CubeFunction& f);

} // namespace cubeharm
