#include "cubeharm/cube_function.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cubeharm {

namespace {

constexpr int kMaxDim = 30;

void require_valid_dim(int n) {
    if (n < 1 || n > kMaxDim)
        throw std::invalid_argument("CubeFunction dimension must be in [1, 30], got " +
                                    std::to_string(n));
}

// In-place unnormalized butterfly: v <- H v with H(S,x) = (-1)^{S·x}.
void butterfly(std::vector<double>& v) {
    const std::uint64_t size = v.size();
    for (std::uint64_t len = 1; len < size; len <<= 1) {
        for (std::uint64_t i = 0; i < size; i += (len << 1)) {
            for (std::uint64_t j = i; j < i + len; ++j) {
                const double a = v[j];
                const double b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

} // namespace

CubeFunction::CubeFunction(int n, double fill) : n_(n) {
    require_valid_dim(n);
    values_.assign(std::uint64_t(1) << n, fill);
}

CubeFunction::CubeFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    require_valid_dim(n);
    if (values_.size() != (std::uint64_t(1) << n))
        throw std::invalid_argument("CubeFunction: values length must be 2^n");
}

void CubeFunction::check_finite(const char* context) const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(context) + ": non-finite entry");
}

LpExponent::LpExponent(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("LpExponent requires p >= 1");
}

LpExponent LpExponent::infinity() {
    return LpExponent(std::numeric_limits<double>::infinity());
}

bool LpExponent::is_infinity() const {
    return std::isinf(p_);
}

int hamming_weight(std::uint64_t x, int n) {
    require_valid_dim(n);
    if (x >> n)
        throw std::out_of_range("hamming_weight: index out of range for dimension");
    return std::popcount(x);
}

double lp_norm(const CubeFunction& f, LpExponent p) {
    if (p.is_infinity()) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::fabs(v));
        return m;
    }
    const double pe = p.value();
    if (pe == 1.0) {
        double s = 0.0;
        for (double v : f.values()) s += std::fabs(v);
        return s;
    }
    if (pe == 2.0) {
        double s = 0.0;
        for (double v : f.values()) s += v * v;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double v : f.values()) s += std::pow(std::fabs(v), pe);
    return std::pow(s, 1.0 / pe);
}

CubeFunction wht_normalized(const CubeFunction& f) {
    CubeFunction out = f;
    butterfly(out.values());
    const double scale = std::pow(2.0, -0.5 * f.n());
    for (double& v : out.values()) v *= scale;
    return out;
}

CubeFunction character_sum_transform(const CubeFunction& g) {
    CubeFunction out = g;
    butterfly(out.values());
    return out;
}

CubeFunction convolve(const CubeFunction& f, const CubeFunction& g, ConvolveMethod method) {
    if (f.n() != g.n())
        throw std::invalid_argument("convolve: dimension mismatch");
    const int n = f.n();
    const std::uint64_t size = f.size();
    if (method == ConvolveMethod::direct) {
        CubeFunction out(n);
        for (std::uint64_t x = 0; x < size; ++x) {
            double s = 0.0;
            for (std::uint64_t y = 0; y < size; ++y) s += f[x ^ y] * g[y];
            out[x] = s;
        }
        return out;
    }
    // Tf·Tg is T(f*g) for the unnormalized transform, and T T = 2^n id.
    CubeFunction a = f;
    CubeFunction b = g;
    butterfly(a.values());
    butterfly(b.values());
    for (std::uint64_t i = 0; i < size; ++i) a[i] *= b[i];
    butterfly(a.values());
    const double scale = std::ldexp(1.0, -n);
    for (double& v : a.values()) v *= scale;
    return a;
}

CubeFunction delta_function(int n) {
    CubeFunction d(n);
    d[0] = 1.0;
    return d;
}

namespace {
constexpr char kMagic[4] = {'C', 'U', 'B', 'F'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void write_f64le(std::ostream& out, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}
} // namespace

void save_cubf(const CubeFunction& f, std::ostream& out) {
    out.write(kMagic, 4);
    write_u32(out, kFormatVersion);
    write_u32(out, static_cast<std::uint32_t>(f.n()));
    for (double v : f.values()) write_f64le(out, v);
    if (!out) throw std::runtime_error("save_cubf: write failed");
}

CubeFunction load_cubf(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_cubf: bad magic");
    const std::uint32_t version = read_u32(in);
    if (version != kFormatVersion)
        throw std::runtime_error("load_cubf: unsupported version " + std::to_string(version));
    const std::uint32_t n = read_u32(in);
    if (n < 1 || n > kMaxDim) throw std::runtime_error("load_cubf: bad dimension");
    std::vector<double> values(std::uint64_t(1) << n);
    for (double& v : values) v = read_f64le(in);
    if (!in) throw std::runtime_error("load_cubf: truncated file");
    return CubeFunction(static_cast<int>(n), std::move(values));
}

void save_cubf_file(const CubeFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_cubf_file: cannot open " + path);
    save_cubf(f, out);
}

CubeFunction load_cubf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_cubf_file: cannot open " + path);
    return load_cubf(in);
}

void to_json(nlohmann::json& j, const CubeFunction& f) {
    j = nlohmann::json{{"n", f.n()}, {"values", f.values()}};
}

void from_json(const nlohmann::json& j, CubeFunction& f) {
    int n = j.at("n").get<int>();
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    f = CubeFunction(n, std::move(values));
}

} // namespace cubeharm
