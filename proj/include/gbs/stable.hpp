#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "gbs/math.hpp"
#include "gbs/quadrature.hpp"
#include "gbs/rng.hpp"

namespace gbs {

// Symmetric alpha-stable law S_alpha(sigma, 0, mu) with characteristic
// function exp(i*mu*t - sigma^alpha*|t|^alpha). The index is restricted to
// (1, 2] so the mean exists; alpha = 2 is the Gaussian member N(mu, 2 sigma^2).
struct StableParams {
    double alpha;
    double sigma;
    double mu;

    StableParams(double alpha, double sigma, double mu = 0.0)
        : alpha(alpha), sigma(sigma), mu(mu) {
        if (!(alpha > 1.0) || !(alpha <= 2.0)) {
            throw domain_error("StableParams: alpha must lie in (1, 2]");
        }
        if (!(sigma > 0.0) || !std::isfinite(sigma)) {
            throw domain_error("StableParams: sigma must be positive and finite");
        }
        if (!std::isfinite(mu)) {
            throw domain_error("StableParams: mu must be finite");
        }
    }

    [[nodiscard]] bool is_gaussian() const { return alpha == 2.0; }
};

[[nodiscard]] inline std::complex<double> stable_cf(const StableParams& p, double t) {
    const double modulus = std::exp(-std::pow(p.sigma * std::abs(t), p.alpha));
    return std::polar(modulus, p.mu * t);
}

namespace detail {

// Truncation horizon T with exp(-(sigma*T)^alpha) = exp(-tail_decay).
[[nodiscard]] inline double inversion_horizon(const StableParams& p, const QuadratureConfig& quad) {
    return std::pow(quad.tail_decay, 1.0 / p.alpha) / p.sigma;
}

// Beyond this many half-periods over the horizon, direct oscillatory
// quadrature is abandoned in favor of the power-tail asymptotic; at the
// crossover the one-term tail is already accurate to ~1e-10 absolute.
inline constexpr int max_half_periods = 12000;

// Tail constant: P(Y > w) ~ C_alpha sigma^alpha w^{-alpha} for alpha < 2.
[[nodiscard]] inline double tail_constant(double alpha) {
    return std::tgamma(alpha) * std::sin(0.5 * pi * alpha) / pi;
}

[[nodiscard]] inline bool beyond_direct_range(double freq, double horizon) {
    return freq * horizon > max_half_periods * pi;
}

// Half-period breakpoints of the oscillatory factor; the adaptive pass
// refines further where needed.
[[nodiscard]] inline std::vector<double> oscillation_breakpoints(double freq, double horizon) {
    std::vector<double> pts;
    if (freq > 0.0) {
        const double step = pi / freq;
        const int count = std::min(static_cast<int>(horizon / step), max_half_periods);
        pts.reserve(static_cast<std::size_t>(count));
        for (int j = 1; j <= count; ++j) {
            pts.push_back(j * step);
        }
    }
    return pts;
}

} // namespace detail

// Density by cosine inversion of the characteristic function:
// l(x) = (1/pi) * Int_0^inf cos((x-mu) t) exp(-(sigma t)^alpha) dt.
[[nodiscard]] inline double stable_pdf(const StableParams& p, double x,
                                       const QuadratureConfig& quad = {}) {
    const double z = x - p.mu;
    if (p.is_gaussian()) {
        return std::exp(-z * z / (4.0 * p.sigma * p.sigma)) / (2.0 * p.sigma * std::sqrt(pi));
    }
    const double horizon = detail::inversion_horizon(p, quad);
    const double w = std::abs(z);
    if (detail::beyond_direct_range(w, horizon)) {
        return p.alpha * detail::tail_constant(p.alpha) * std::pow(p.sigma, p.alpha) *
               std::pow(w, -p.alpha - 1.0);
    }
    const auto integrand = [&](double t) {
        return std::cos(w * t) * std::exp(-std::pow(p.sigma * t, p.alpha));
    };
    const auto res = integrate_adaptive(integrand, 0.0, horizon, quad,
                                        detail::oscillation_breakpoints(w, horizon));
    return std::max(res.value / pi, 0.0);
}

// CDF by sine inversion (the symmetric-case simplification of the standard
// inversion formula): F(mu + z) = 1/2 + (1/pi) Int_0^inf sin(z t)/t * e^{-(sigma t)^alpha} dt.
// Evaluated for |z| and reflected, so F(mu - z) = 1 - F(mu + z) holds exactly.
[[nodiscard]] inline double stable_cdf(const StableParams& p, double x,
                                       const QuadratureConfig& quad = {}) {
    const double z = x - p.mu;
    if (p.is_gaussian()) {
        return 0.5 * std::erfc(-z / (2.0 * p.sigma));
    }
    if (z == 0.0) {
        return 0.5;
    }
    const double w = std::abs(z);
    const double horizon = detail::inversion_horizon(p, quad);
    if (detail::beyond_direct_range(w, horizon)) {
        const double tail = detail::tail_constant(p.alpha) * std::pow(p.sigma / w, p.alpha);
        return z > 0.0 ? 1.0 - tail : tail;
    }
    const auto integrand = [&](double t) {
        if (t == 0.0) {
            return w;
        }
        return std::sin(w * t) / t * std::exp(-std::pow(p.sigma * t, p.alpha));
    };
    const auto res = integrate_adaptive(integrand, 0.0, horizon, quad,
                                        detail::oscillation_breakpoints(w, horizon));
    double upper = 0.5 + res.value / pi;
    upper = std::min(std::max(upper, 0.0), 1.0);
    return z > 0.0 ? upper : 1.0 - upper;
}

namespace detail {

// Solve F(x) = q on the centered upper half (q > 1/2, result > lo_start >= 0):
// geometric bracket expansion, then safeguarded Newton.
[[nodiscard]] inline double centered_upper_quantile(const StableParams& centered, double q,
                                                    const QuadratureConfig& quad,
                                                    double lo_start = 0.0) {
    double lo = lo_start;
    double hi = std::max(2.0 * centered.sigma, lo_start + centered.sigma);
    int expansions = 0;
    while (stable_cdf(centered, hi, quad) < q) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 200) {
            throw bracket_error("stable_quantile: bracket expansion cap exceeded");
        }
    }

    double x = 0.5 * (lo + hi);
    double f = stable_cdf(centered, x, quad) - q;
    const double f_tol = std::max(1e-10, 0.1 * quad.abs_tol);
    for (int iter = 0; iter < 200 && std::abs(f) > f_tol && hi - lo > 1e-13 * (1.0 + x); ++iter) {
        if (f > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double deriv = stable_pdf(centered, x, quad);
        double next = deriv > 0.0 ? x - f / deriv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == x) {
            break;
        }
        x = next;
        f = stable_cdf(centered, x, quad) - q;
    }
    return x;
}

} // namespace detail

// Quantile by bracketed root-finding on stable_cdf; lower-half probabilities
// solve the reflected upper-half problem, preserving quantile symmetry.
[[nodiscard]] inline double stable_quantile(const StableParams& p, double prob,
                                            const QuadratureConfig& quad = {}) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw domain_error("stable_quantile: p must lie in (0, 1)");
    }
    if (prob == 0.5) {
        return p.mu;
    }
    if (p.is_gaussian()) {
        return p.mu + p.sigma * std::sqrt(2.0) * normal_quantile(prob);
    }
    const bool upper = prob > 0.5;
    const double q = upper ? prob : 1.0 - prob;
    const StableParams centered(p.alpha, p.sigma, 0.0);
    const double x = detail::centered_upper_quantile(centered, q, quad);
    return upper ? p.mu + x : p.mu - x;
}

// Quantiles on the midpoint grid u_i = (i + 1/2)/m, i = 0..m-1. Upper-half
// solves warm-start each bracket at the previous solution; the lower half is
// the exact reflection 2 mu - q.
[[nodiscard]] inline std::vector<double> stable_quantile_grid(const StableParams& p, std::size_t m,
                                                              const QuadratureConfig& quad = {}) {
    if (m < 2) {
        throw domain_error("stable_quantile_grid: need at least 2 grid points");
    }
    std::vector<double> out(m);
    const std::size_t half = m / 2;
    if (p.is_gaussian()) {
        for (std::size_t i = half; i < m; ++i) {
            const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
            out[i] = p.mu + p.sigma * std::sqrt(2.0) * normal_quantile(u);
        }
    } else {
        const StableParams centered(p.alpha, p.sigma, 0.0);
        double lo = 0.0;
        for (std::size_t i = half; i < m; ++i) {
            const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
            if (u <= 0.5) {
                out[i] = p.mu; // odd m lands exactly on the median
                continue;
            }
            const double x = detail::centered_upper_quantile(centered, u, quad, lo);
            out[i] = p.mu + x;
            lo = x;
        }
    }
    for (std::size_t i = 0; i < half; ++i) {
        out[i] = 2.0 * p.mu - out[m - 1 - i];
    }
    return out;
}

// Exact simulation by the trigonometric transform of a uniform and an
// exponential variate (symmetric case):
//   X = sin(alpha V)/cos(V)^{1/alpha} * (cos((1-alpha)V)/W)^{(1-alpha)/alpha}.
[[nodiscard]] inline double stable_draw(const StableParams& p, rng_stream& stream) {
    const double v = pi * (stream.uniform_pos() - 0.5);
    const double w = stream.exponential();
    if (p.is_gaussian()) {
        return p.mu + p.sigma * 2.0 * std::sin(v) * std::sqrt(w);
    }
    const double a = p.alpha;
    const double s1 = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a);
    const double s2 = std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
    return p.mu + p.sigma * s1 * s2;
}

[[nodiscard]] inline std::vector<double> stable_sample(const StableParams& p, std::size_t n,
                                                       std::uint64_t seed) {
    if (n < 1) {
        throw domain_error("stable_sample: n must be at least 1");
    }
    rng_stream stream(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) {
        x = stable_draw(p, stream);
    }
    return out;
}

// Law of a*Y + b for Y ~ S_alpha(sigma, 0, mu): S_alpha(|a| sigma, 0, a mu + b).
[[nodiscard]] inline StableParams stable_scale_shift_law(const StableParams& p, double a, double b) {
    if (a == 0.0) {
        throw degenerate_law_error("stable_scale_shift_law: a = 0 collapses the law to a point");
    }
    return StableParams(p.alpha, std::abs(a) * p.sigma, a * p.mu + b);
}

} // namespace gbs
