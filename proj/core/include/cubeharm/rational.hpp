#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace cubeharm {

// Arbitrary-precision exact arithmetic. All identity checks that must hold
// *exactly* (not just to rounding error) run on Rational; doubles are derived
// from the exact values at the edges only.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial_exact(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

// Exact rational value of a finite double (every finite double is a dyadic
// rational, so this conversion is lossless).
inline Rational exact_from_double(double x) {
    return Rational(x);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

} // namespace cubeharm
