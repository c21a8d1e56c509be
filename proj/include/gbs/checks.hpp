#pragma once

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gbs/estimation.hpp"
#include "gbs/fatigue_life.hpp"
#include "gbs/first_passage.hpp"
#include "gbs/mallows.hpp"
#include "gbs/stable.hpp"

namespace gbs {

// One acceptance property. The detail string is canonical: fixed format,
// fixed ordering, no timing or environment data, so byte-comparing two
// details from identical configurations is the determinism contract.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    bool quick = false;        // reduced sample sizes for the verify subcommand
    std::size_t workers = 4;   // worker count used by the determinism re-run
};

namespace detail {

[[nodiscard]] inline std::string fmt(const char* f, ...) {
    char buf[768];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

[[nodiscard]] inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

[[nodiscard]] inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::vector<double> out(points);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    }
    return out;
}

} // namespace detail

// 1. The alpha = 2 instance must coincide with the classical two-parameter
// fatigue-life law: shape sqrt(2) sigma / sqrt(mu_x s_star), scale s_star/mu_x.
[[nodiscard]] inline CheckResult check_alpha2_reduction(const CheckOptions&) {
    rng_stream stream(9101, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const double sigma = 0.3 + 2.7 * stream.uniform();
        const double mu_x = 0.5 + 4.5 * stream.uniform();
        const double s_star = (20.0 + 480.0 * stream.uniform()) * mu_x;
        const GbsParams gbs(2.0, sigma, mu_x, s_star);
        const ClassicalBsParams classical(std::sqrt(2.0) * sigma / std::sqrt(mu_x * s_star),
                                          s_star / mu_x);
        const double b = gbs.b_alpha();
        for (double t : detail::log_grid(b / 100.0, 100.0 * b, 50)) {
            worst = std::max(worst, std::abs(gbs_cdf(gbs, t) - classical_bs_cdf(classical, t)));
        }
    }
    const bool pass = worst <= 1e-9;
    return {1, "alpha2-reduction",
            pass, detail::fmt("max_abs_cdf_diff=%.6e (bound 1e-09) triples=5 grid=50", worst)};
}

// 2. Kernel density at the center must equal Gamma(1/alpha)/(pi alpha sigma).
[[nodiscard]] inline CheckResult check_mode_density(const CheckOptions&) {
    const double mu = 0.7;
    double worst = 0.0;
    for (double alpha : {1.2, 1.5, 1.8, 2.0}) {
        for (double sigma : {0.5, 1.0, 3.0}) {
            const StableParams p(alpha, sigma, mu);
            const double want = std::tgamma(1.0 / alpha) / (pi * alpha * sigma);
            worst = std::max(worst, std::abs(stable_pdf(p, mu) - want));
        }
    }
    const bool pass = worst <= 1e-8;
    return {2, "mode-density",
            pass, detail::fmt("max_abs_pdf_err=%.6e (bound 1e-08) combos=12", worst)};
}

// 3. Large-sample ECDF of the simulator must track the quadrature CDF.
[[nodiscard]] inline CheckResult check_sampler_cdf(const CheckOptions& options) {
    const std::size_t n = options.quick ? 200'000 : 1'000'000;
    const struct {
        double alpha;
        double sigma;
        std::uint64_t seed;
    } cases[] = {{1.5, 1.0, 9301}, {1.8, 2.0, 9302}};
    double sup[2] = {0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
        const StableParams p(cases[c].alpha, cases[c].sigma, 0.0);
        std::vector<double> draws = stable_sample(p, n, cases[c].seed);
        std::sort(draws.begin(), draws.end());
        const double lo = stable_quantile(p, 0.001);
        const double hi = stable_quantile(p, 0.999);
        for (int i = 0; i < 201; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / 200.0;
            const auto count = std::upper_bound(draws.begin(), draws.end(), x) - draws.begin();
            const double ecdf = static_cast<double>(count) / static_cast<double>(n);
            sup[c] = std::max(sup[c], std::abs(ecdf - stable_cdf(p, x)));
        }
    }
    const bool pass = sup[0] <= 0.005 && sup[1] <= 0.005;
    return {3, "sampler-cdf-agreement",
            pass,
            detail::fmt("sup[a=1.5,s=1]=%.6f sup[a=1.8,s=2]=%.6f (bound 0.005) n=%zu", sup[0],
                        sup[1], n)};
}

// 4. cdf(quantile(p)) must return p well inside the root-finder tolerance.
[[nodiscard]] inline CheckResult check_quantile_roundtrip(const CheckOptions&) {
    const StableParams sets[] = {{1.2, 0.5, 0.0}, {1.5, 1.0, 0.0}, {1.5, 2.0, 5.0},
                                 {1.8, 2.0, -3.0}, {1.9, 0.7, 2.0}, {2.0, 1.0, 1.0}};
    double worst = 0.0;
    for (const auto& p : sets) {
        for (double prob : {0.01, 0.1, 0.5, 0.9, 0.99}) {
            worst = std::max(worst, std::abs(stable_cdf(p, stable_quantile(p, prob)) - prob));
        }
    }
    const bool pass = worst <= 1e-7;
    return {4, "quantile-roundtrip",
            pass, detail::fmt("max_abs_roundtrip_err=%.6e (bound 1e-07) sets=6", worst)};
}

// 5. Hill estimate on data whose centered values are exact Pareto(1.5):
// 1/alpha_hat within 0.05 of 2/3 for nearly all seeds at the default k rule.
[[nodiscard]] inline CheckResult check_hill_consistency(const CheckOptions& options) {
    const std::size_t n = options.quick ? 50'000 : 100'000;
    const int seeds = options.quick ? 6 : 20;
    const int need = options.quick ? 5 : 18;
    const auto model = DamageModel::shifted_pareto(1.5, 1.0, 5.0);
    int passed = 0;
    double worst = 0.0;
    for (int s = 0; s < seeds; ++s) {
        DamageSeries data(damage_sample(model, n, 9500 + static_cast<std::uint64_t>(s)), 5.0);
        const auto report = hill_alpha(data);
        const double err = std::abs(1.0 / *report.alpha_hat - 2.0 / 3.0);
        worst = std::max(worst, err);
        if (err <= 0.05) {
            ++passed;
        }
    }
    const bool pass = passed >= need;
    return {5, "hill-consistency",
            pass,
            detail::fmt("pass_seeds=%d/%d (need %d) worst_abs_err=%.6f (tol 0.05) n=%zu", passed,
                        seeds, need, worst, n)};
}

// 6. Scale estimate on exact stable data S_1.5(2,0,5). The cube-root block
// rule keeps the indicator occupancy growing fast enough for the 15% band;
// the default k rule is exercised in the unit suite at a fixed seed.
[[nodiscard]] inline CheckResult check_sigma_consistency(const CheckOptions& options) {
    const std::size_t n = options.quick ? 200'000 : 1'000'000;
    const int seeds = options.quick ? 6 : 20;
    const int need = options.quick ? 5 : 18;
    EstimationConfig cfg;
    cfg.k_rule = [](std::size_t len) {
        return static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(len))));
    };
    const StableParams law(1.5, 2.0, 5.0);
    int passed = 0;
    double worst = 0.0;
    for (int s = 0; s < seeds; ++s) {
        DamageSeries data(stable_sample(law, n, 9600 + static_cast<std::uint64_t>(s)), 5.0);
        const auto report = estimate_sigma(data, cfg, 1.5);
        const double err = std::abs(*report.sigma_hat / 2.0 - 1.0);
        worst = std::max(worst, err);
        if (err <= 0.15) {
            ++passed;
        }
    }
    const bool pass = passed >= need;
    return {6, "sigma-consistency",
            pass,
            detail::fmt("pass_seeds=%d/%d (need %d) worst_rel_err=%.6f (tol 0.15) n=%zu k=cbrt",
                        passed, seeds, need, worst, n)};
}

// 7. Metric axioms over random triples plus the exact pure-shift case.
[[nodiscard]] inline CheckResult check_mallows_axioms(const CheckOptions&) {
    rng_stream stream(9700, 0);
    const double orders[] = {1.0, 1.5, 2.0};
    double worst_triangle = 0.0;
    double worst_axiom = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t size = 3 + static_cast<std::size_t>(stream.uniform() * 38.0);
        auto draw_sample = [&] {
            std::vector<double> v(size);
            for (auto& x : v) {
                x = 10.0 * stream.uniform() - 5.0;
            }
            return EmpiricalSample(std::move(v));
        };
        const EmpiricalSample f = draw_sample();
        const EmpiricalSample g = draw_sample();
        const EmpiricalSample h = draw_sample();
        for (double r : orders) {
            const double d_fg = mallows_empirical(f, g, r);
            const double d_gf = mallows_empirical(g, f, r);
            const double d_gh = mallows_empirical(g, h, r);
            const double d_fh = mallows_empirical(f, h, r);
            worst_axiom = std::max({worst_axiom, std::abs(d_fg - d_gf),
                                    mallows_empirical(f, f, r), d_fg < 0.0 ? 1.0 : 0.0});
            worst_triangle = std::max(worst_triangle, d_fh - (d_fg + d_gh));
        }
    }
    // Pure shift: dyadic values and dyadic shifts keep every pairwise
    // difference exactly c, so d_1 must equal |c| bit-for-bit and the other
    // orders must agree to a few ulps of the final pow round-trip.
    rng_stream shift_stream(9701, 0);
    std::vector<double> base(64);
    for (auto& x : base) {
        x = std::floor(shift_stream.uniform() * 64.0) / 4.0;
    }
    double worst_shift_rel = 0.0;
    bool shift_exact_d1 = true;
    for (double c : {0.25, -4.0}) {
        std::vector<double> shifted(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            shifted[i] = base[i] + c;
        }
        const EmpiricalSample f{std::vector<double>(base)};
        const EmpiricalSample fc(std::move(shifted));
        for (double r : orders) {
            const double d = mallows_empirical(f, fc, r);
            if (r == 1.0 && d != std::abs(c)) {
                shift_exact_d1 = false;
            }
            worst_shift_rel = std::max(worst_shift_rel, std::abs(d - std::abs(c)) / std::abs(c));
        }
    }
    const bool pass = worst_axiom <= 1e-12 && worst_triangle <= 1e-10 && shift_exact_d1 &&
                      worst_shift_rel <= 1e-14;
    return {7, "mallows-axioms",
            pass,
            detail::fmt("worst_axiom_dev=%.3e worst_triangle_excess=%.3e shift_d1_exact=%s "
                        "worst_shift_rel=%.3e triples=100",
                        worst_axiom, worst_triangle, shift_exact_d1 ? "yes" : "no",
                        worst_shift_rel)};
}

// 8. Normalized partial sums of heavy-tailed damages drift toward the stable
// law as the block length grows: the KS medians must strictly decrease.
[[nodiscard]] inline CheckResult check_sum_convergence(const CheckOptions& options) {
    const int seeds = options.quick ? 6 : 10;
    const std::size_t reps = options.quick ? 3000 : 10'000;
    const std::size_t fit_n = options.quick ? 200'000 : 1'000'000;
    const auto model = DamageModel::shifted_pareto(1.5, 1.0, 0.0);
    EstimationConfig cfg;
    cfg.k_rule = [](std::size_t len) {
        return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(len), 0.45)));
    };
    const std::size_t lengths[] = {100, 1000, 10'000};
    std::vector<double> ks[3];
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = 9800 + static_cast<std::uint64_t>(s);
        DamageSeries data(damage_sample(model, fit_n, seed), model.mean());
        const auto fit = estimate_sigma(data, cfg, 1.5);
        const StableParams target(1.5, *fit.sigma_hat, 0.0);
        for (int i = 0; i < 3; ++i) {
            const auto rep =
                sum_law_check(model, lengths[i], reps, target, seed, MallowsConfig{0});
            ks[i].push_back(rep.ks);
        }
    }
    const double med0 = detail::median_of(ks[0]);
    const double med1 = detail::median_of(ks[1]);
    const double med2 = detail::median_of(ks[2]);
    const bool pass = med0 > med1 && med1 > med2;
    return {8, "stable-limit-convergence",
            pass,
            detail::fmt("ks_median[n=1e2]=%.6f ks_median[n=1e3]=%.6f ks_median[n=1e4]=%.6f "
                        "strictly_decreasing=%s seeds=%d reps=%zu",
                        med0, med1, med2, pass ? "yes" : "no", seeds, reps)};
}

// 9. First-passage law against the fitted generalized fatigue-life CDF, with
// the exponential-damage Erlang identity as the control arm. The KS clause
// asks a symmetric-kernel family to match a one-sided damage process; the
// control passes while the KS clause fails for a structural reason recorded
// in README.md (Known limitations).
[[nodiscard]] inline CheckResult check_first_passage(const CheckOptions& options,
                                                     std::size_t workers = 1) {
    const std::size_t reps = options.quick ? 10'000 : 100'000;
    const std::size_t fit_n = options.quick ? 200'000 : 1'000'000;
    const auto model = DamageModel::shifted_pareto(1.5, 1.0, 0.0);
    const double mu_x = model.mean();
    const double s_star = 500.0 * mu_x;

    EstimationConfig cfg;
    cfg.k_rule = [](std::size_t len) {
        return static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(len))));
    };
    DamageSeries data(damage_sample(model, fit_n, 9901), mu_x);
    const auto fit = estimate_sigma(data, cfg, 1.5);
    const GbsParams gbs(1.5, *fit.sigma_hat, mu_x, s_star);

    auto report = simulate_first_passage(model, s_star, reps, 9902, workers);
    const double ks = ks_distance(report.n_star_samples, gbs);

    const std::size_t erlang_reps = options.quick ? 20'000 : 100'000;
    const auto exp_model = DamageModel::exponential(1.0);
    const auto erlang_run = simulate_first_passage(exp_model, 50.0, erlang_reps, 9903, workers);
    double erlang_gap = 0.0;
    for (std::int64_t n : {std::int64_t{40}, std::int64_t{50}, std::int64_t{60}}) {
        double attained = 0.0;
        for (std::int64_t v : erlang_run.n_star_samples) {
            if (v <= n) {
                attained += 1.0;
            }
        }
        attained /= static_cast<double>(erlang_reps);
        erlang_gap = std::max(erlang_gap, std::abs(attained - erlang_tail(n, 50.0)));
    }

    const bool ks_ok = ks <= 0.05;
    const bool erlang_ok = erlang_gap <= 0.01;
    return {9, "first-passage-vs-gbs",
            ks_ok && erlang_ok,
            detail::fmt("ks=%.6f (bound 0.05) erlang_gap=%.6f (bound 0.01) sigma_hat=%.6f "
                        "reps=%zu",
                        ks, erlang_gap, *fit.sigma_hat, reps)};
}

// 10. Byte-identical detail strings for the stochastic checks across two
// identical runs and across a single-worker vs many-worker run.
[[nodiscard]] inline CheckResult check_determinism(const CheckOptions& options) {
    const std::size_t many = std::max<std::size_t>(options.workers, 2);
    auto run_once = [&](std::size_t workers) {
        std::vector<std::string> details;
        details.push_back(check_sampler_cdf(options).detail);
        details.push_back(check_hill_consistency(options).detail);
        details.push_back(check_sigma_consistency(options).detail);
        details.push_back(check_sum_convergence(options).detail);
        details.push_back(check_first_passage(options, workers).detail);
        return details;
    };
    const auto first = run_once(1);
    const auto second = run_once(1);
    const auto threaded = run_once(many);
    int mismatches = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i] != second[i] || first[i] != threaded[i]) {
            ++mismatches;
        }
    }
    const bool pass = mismatches == 0;
    return {10, "determinism",
            pass,
            detail::fmt("mismatched_reports=%d/5 (criteria 3,5,6,8,9; reruns=2 workers=%zu)",
                        mismatches, many)};
}

// Full suite in criterion order. The determinism check re-runs the stochastic
// criteria internally, so the whole suite costs roughly three times the
// one-shot run.
[[nodiscard]] inline std::vector<CheckResult> run_all_checks(const CheckOptions& options) {
    std::vector<CheckResult> results;
    results.push_back(check_alpha2_reduction(options));
    results.push_back(check_mode_density(options));
    results.push_back(check_sampler_cdf(options));
    results.push_back(check_quantile_roundtrip(options));
    results.push_back(check_hill_consistency(options));
    results.push_back(check_sigma_consistency(options));
    results.push_back(check_mallows_axioms(options));
    results.push_back(check_sum_convergence(options));
    results.push_back(check_first_passage(options));
    results.push_back(check_determinism(options));
    return results;
}

} // namespace gbs
