#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "gbs/errors.hpp"

namespace gbs {

// Tolerances and budgets for the characteristic-function inversion integrals.
// tail_decay Λ sets the truncation horizon: the damped tail beyond the point
// where exp(-(σt)^α) = exp(-Λ) is dropped, so its mass is below exp(-Λ)/σ.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 5000;
    double tail_decay = 34.5;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
            throw domain_error("QuadratureConfig: tolerances must be positive");
        }
        if (!(max_subdivisions > 0)) {
            throw domain_error("QuadratureConfig: subdivision budget must be positive");
        }
        if (!(tail_decay > 0.0) || !std::isfinite(tail_decay)) {
            throw domain_error("QuadratureConfig: truncation horizon must be finite and positive");
        }
    }
};

struct quad_result {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights.
inline constexpr double gk_nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double gk_weights[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552591,
    0.16900472663926790, 0.19035057806478540, 0.20443294007529889, 0.20948214108472782};
inline constexpr double gauss_weights[4] = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894, 0.41795918367346938};

struct segment {
    double err;
    double value;
    double a;
    double b;
    bool operator<(const segment& o) const { return err < o.err; }
};

// One Gauss-Kronrod 15(7) panel with a QUADPACK-style error estimate.
template <typename F>
[[nodiscard]] segment gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(center);
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * gk_nodes[i]);
        fv[14 - i] = f(center + half * gk_nodes[i]);
    }
    double resk = gk_weights[7] * fv[7];
    double resg = gauss_weights[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += gk_weights[i] * (fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 3; ++i) {
        resg += gauss_weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    }
    const double reskh = 0.5 * resk;
    double resasc = gk_weights[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i) {
        resasc += gk_weights[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    }
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return {err, resk * half, a, b};
}

} // namespace detail

// Adaptive integration over [a, b], optionally pre-split at the given interior
// breakpoints (used to isolate half-periods of oscillatory integrands).
// Worst-error segments are bisected until the global estimate meets tolerance.
template <typename F>
[[nodiscard]] quad_result integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg,
                                             const std::vector<double>& breakpoints = {}) {
    cfg.validate();
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints) {
        if (x > a && x < b) {
            edges.push_back(x);
        }
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::segment> queue;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto seg = detail::gk15(f, edges[i], edges[i + 1]);
        total += seg.value;
        total_err += seg.err;
        queue.push(seg);
    }

    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (splits >= cfg.max_subdivisions || queue.empty()) {
            throw quadrature_error("integrate_adaptive: tolerance not reached within subdivision budget",
                                   total, total_err);
        }
        const auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw quadrature_error("integrate_adaptive: interval too small to split further",
                                   total, total_err);
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    return {total, total_err, splits};
}

} // namespace gbs
