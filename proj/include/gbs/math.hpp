#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "gbs/errors.hpp"

namespace gbs {

inline constexpr double pi = 3.14159265358979323846;

// Standard normal CDF via the complementary error function.
[[nodiscard]] inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

[[nodiscard]] inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
}

namespace detail {

// Acklam's rational approximation to the normal quantile, |error| < 1.2e-9.
[[nodiscard]] inline double normal_quantile_estimate(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double s = q * q;
    return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * q /
           (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

} // namespace detail

// Normal quantile: Acklam's estimate polished by one Halley step, giving
// accuracy near machine precision across (0, 1).
[[nodiscard]] inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw domain_error("normal_quantile: p must lie in (0, 1)");
    }
    double x = detail::normal_quantile_estimate(p);
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * pi) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

// P(Gamma(n, 1) > x) for integer shape n, computed as the exact Poisson sum
// P(Poisson(x) <= n-1). Stable: terms are accumulated incrementally.
[[nodiscard]] inline double erlang_tail(std::int64_t n, double x) {
    if (n < 1 || !(x >= 0.0)) {
        throw domain_error("erlang_tail: need n >= 1 and x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    double term = std::exp(-x);
    double sum = term;
    for (std::int64_t j = 1; j < n; ++j) {
        term *= x / static_cast<double>(j);
        sum += term;
    }
    return sum > 1.0 ? 1.0 : sum;
}

// 64-bit mix used to derive independent engine seeds from (seed, stream id).
[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace gbs
