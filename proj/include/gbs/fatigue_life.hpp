#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gbs/stable.hpp"

namespace gbs {

// xi_alpha(x) = x^{1-1/alpha} - x^{-1/alpha}, the generalized time-to-argument
// transform; strictly increasing on (0, inf) with range all of the reals.
[[nodiscard]] inline double xi_alpha(double alpha, double x) {
    if (!(alpha > 1.0) || !(alpha <= 2.0)) {
        throw domain_error("xi_alpha: alpha must lie in (1, 2]");
    }
    if (!(x > 0.0)) {
        throw domain_error("xi_alpha: x must be positive");
    }
    const double inv = 1.0 / alpha;
    return std::pow(x, 1.0 - inv) - std::pow(x, -inv);
}

// d/dx xi_alpha(x) = (1-1/alpha) x^{-1/alpha} + (1/alpha) x^{-1-1/alpha}.
[[nodiscard]] inline double xi_alpha_deriv(double alpha, double x) {
    if (!(x > 0.0)) {
        throw domain_error("xi_alpha_deriv: x must be positive");
    }
    const double inv = 1.0 / alpha;
    return (1.0 - inv) * std::pow(x, -inv) + inv * std::pow(x, -1.0 - inv);
}

// Monotone inverse of xi_alpha. Substituting u = x^{1/alpha} reduces
// xi_alpha(x) = y to u^{alpha-1} - 1/u = y, solved by safeguarded Newton;
// alpha = 2 has the closed form x = ((y + sqrt(y^2 + 4))/2)^2.
[[nodiscard]] inline double xi_alpha_inv(double alpha, double y) {
    if (!(alpha > 1.0) || !(alpha <= 2.0)) {
        throw domain_error("xi_alpha_inv: alpha must lie in (1, 2]");
    }
    const double u_quad = 0.5 * (y + std::sqrt(y * y + 4.0));
    if (alpha == 2.0) {
        return u_quad * u_quad;
    }
    const auto h = [alpha](double u) { return std::pow(u, alpha - 1.0) - 1.0 / u; };
    const auto h_deriv = [alpha](double u) {
        return (alpha - 1.0) * std::pow(u, alpha - 2.0) + 1.0 / (u * u);
    };

    double lo = u_quad;
    double hi = u_quad;
    int expansions = 0;
    while (h(lo) > y) {
        lo *= 0.5;
        if (++expansions > 2000) {
            throw bracket_error("xi_alpha_inv: lower bracket expansion cap exceeded");
        }
    }
    while (h(hi) < y) {
        hi *= 2.0;
        if (++expansions > 2000) {
            throw bracket_error("xi_alpha_inv: upper bracket expansion cap exceeded");
        }
    }

    double u = u_quad < lo || u_quad > hi ? std::sqrt(lo * hi) : u_quad;
    const double tol = 1e-13 * std::max(1.0, std::abs(y));
    for (int iter = 0; iter < 200; ++iter) {
        const double f = h(u) - y;
        if (std::abs(f) <= tol) {
            break;
        }
        if (f > 0.0) {
            hi = u;
        } else {
            lo = u;
        }
        double next = u - f / h_deriv(u);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == u) {
            break;
        }
        u = next;
    }
    return std::pow(u, alpha);
}

// Generalized fatigue-life law: P(T <= t) = Phi_alpha(xi_alpha(t/b)/a) where
// Phi_alpha is the CDF of the centered law S_alpha(sigma, 0, 0),
// a = 1/(mu_X^{1/alpha} s*^{1-1/alpha}) and b = s*/mu_X.
struct GbsParams {
    double alpha;
    double sigma;
    double mu_x;
    double s_star;

    GbsParams(double alpha, double sigma, double mu_x, double s_star)
        : alpha(alpha), sigma(sigma), mu_x(mu_x), s_star(s_star) {
        StableParams(alpha, sigma, 0.0); // validates alpha and sigma
        if (!(mu_x > 0.0) || !std::isfinite(mu_x)) {
            throw domain_error("GbsParams: mu_x must be positive and finite");
        }
        if (!(s_star > 0.0) || !std::isfinite(s_star)) {
            throw domain_error("GbsParams: s_star must be positive and finite");
        }
    }

    // Recomputed on demand so the scaling identity a * mu_x^{1/alpha} *
    // s_star^{1-1/alpha} = 1 holds to machine precision.
    [[nodiscard]] double a_alpha() const {
        return 1.0 / (std::pow(mu_x, 1.0 / alpha) * std::pow(s_star, 1.0 - 1.0 / alpha));
    }

    [[nodiscard]] double b_alpha() const { return s_star / mu_x; }

    [[nodiscard]] StableParams kernel() const { return StableParams(alpha, sigma, 0.0); }
};

[[nodiscard]] inline double gbs_cdf(const GbsParams& p, double t,
                                    const QuadratureConfig& quad = {}) {
    if (!(t > 0.0)) {
        throw domain_error("gbs_cdf: t must be positive");
    }
    const double b = p.b_alpha();
    if (t < 1e-300 * b) {
        return 0.0; // below this the power x^{-1/alpha} would overflow
    }
    const double z = xi_alpha(p.alpha, t / b) / p.a_alpha();
    return stable_cdf(p.kernel(), z, quad);
}

[[nodiscard]] inline double gbs_pdf(const GbsParams& p, double t,
                                    const QuadratureConfig& quad = {}) {
    if (!(t > 0.0)) {
        throw domain_error("gbs_pdf: t must be positive");
    }
    const double b = p.b_alpha();
    if (t < 1e-300 * b) {
        return 0.0;
    }
    const double a = p.a_alpha();
    const double z = xi_alpha(p.alpha, t / b) / a;
    return stable_pdf(p.kernel(), z, quad) * xi_alpha_deriv(p.alpha, t / b) / (a * b);
}

[[nodiscard]] inline double gbs_quantile(const GbsParams& p, double prob,
                                         const QuadratureConfig& quad = {}) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw domain_error("gbs_quantile: p must lie in (0, 1)");
    }
    const double z = stable_quantile(p.kernel(), prob, quad);
    return p.b_alpha() * xi_alpha_inv(p.alpha, p.a_alpha() * z);
}

// Quantiles on the midpoint grid u_i = (i + 1/2)/m, transforming the kernel's
// warm-started quantile sweep through the increasing map b xi^{-1}(a z).
[[nodiscard]] inline std::vector<double> gbs_quantile_grid(const GbsParams& p, std::size_t m,
                                                           const QuadratureConfig& quad = {}) {
    std::vector<double> grid = stable_quantile_grid(p.kernel(), m, quad);
    const double a = p.a_alpha();
    const double b = p.b_alpha();
    for (double& z : grid) {
        z = b * xi_alpha_inv(p.alpha, a * z);
    }
    return grid;
}

// Classical Birnbaum-Saunders law with shape a and scale b:
// P(T <= t) = Phi((1/a)(sqrt(t/b) - sqrt(b/t))).
struct ClassicalBsParams {
    double a;
    double b;

    ClassicalBsParams(double a, double b) : a(a), b(b) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw domain_error("ClassicalBsParams: a must be positive and finite");
        }
        if (!(b > 0.0) || !std::isfinite(b)) {
            throw domain_error("ClassicalBsParams: b must be positive and finite");
        }
    }
};

[[nodiscard]] inline double classical_bs_cdf(const ClassicalBsParams& p, double t) {
    if (!(t > 0.0)) {
        throw domain_error("classical_bs_cdf: t must be positive");
    }
    // sqrt(x) - sqrt(1/x) is xi_alpha at alpha = 2; sharing the helper keeps
    // this path arithmetically identical to the generalized law's reduction.
    return normal_cdf(xi_alpha(2.0, t / p.b) / p.a);
}

[[nodiscard]] inline double classical_bs_pdf(const ClassicalBsParams& p, double t) {
    if (!(t > 0.0)) {
        throw domain_error("classical_bs_pdf: t must be positive");
    }
    const double x = t / p.b;
    const double v = xi_alpha(2.0, x) / p.a;
    return normal_pdf(v) * xi_alpha_deriv(2.0, x) / (p.a * p.b);
}

// Quantile of the classical law through the closed-form normal quantile.
[[nodiscard]] inline double classical_bs_quantile(const ClassicalBsParams& p, double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw domain_error("classical_bs_quantile: p must lie in (0, 1)");
    }
    const double y = p.a * normal_quantile(prob);
    const double root = 0.5 * (y + std::sqrt(y * y + 4.0));
    return p.b * root * root;
}

} // namespace gbs
