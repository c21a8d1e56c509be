#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gbs/fatigue_life.hpp"
#include "gbs/mallows.hpp"
#include "gbs/rng.hpp"

namespace gbs {

// Per-cycle damage law. All families produce non-negative damages with a
// finite positive mean; the heavy-tail families have infinite variance when
// their index is below 2.
class DamageModel {
public:
    enum class Family { deterministic, exponential, lognormal, shifted_pareto, folded_stable };

    [[nodiscard]] static DamageModel deterministic(double c) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw domain_error("DamageModel: deterministic damage must be positive and finite");
        }
        DamageModel m(Family::deterministic);
        m.p1_ = c;
        return m;
    }

    [[nodiscard]] static DamageModel exponential(double rate) {
        if (!(rate > 0.0) || !std::isfinite(rate)) {
            throw domain_error("DamageModel: exponential rate must be positive and finite");
        }
        DamageModel m(Family::exponential);
        m.p1_ = rate;
        return m;
    }

    [[nodiscard]] static DamageModel lognormal(double logmean, double logsd) {
        if (!std::isfinite(logmean) || !(logsd >= 0.0) || !std::isfinite(logsd)) {
            throw domain_error("DamageModel: lognormal needs finite logmean and logsd >= 0");
        }
        DamageModel m(Family::lognormal);
        m.p1_ = logmean;
        m.p2_ = logsd;
        return m;
    }

    // Pareto(index, x_m = scale) translated by shift; support [shift + scale, inf).
    [[nodiscard]] static DamageModel shifted_pareto(double index, double scale, double shift) {
        if (!(index > 1.0) || !std::isfinite(index)) {
            throw domain_error("DamageModel: pareto index must exceed 1 for a finite mean");
        }
        if (!(scale > 0.0) || !std::isfinite(scale) || !(shift >= 0.0) || !std::isfinite(shift)) {
            throw domain_error("DamageModel: pareto needs scale > 0 and shift >= 0");
        }
        DamageModel m(Family::shifted_pareto);
        m.p1_ = index;
        m.p2_ = scale;
        m.p3_ = shift;
        return m;
    }

    // |Y| + shift for Y symmetric stable; finite mean needs alpha > 1.
    [[nodiscard]] static DamageModel folded_stable(double alpha, double sigma, double shift) {
        if (!(alpha > 1.0)) {
            throw domain_error("DamageModel: folded stable needs alpha > 1 for a finite mean");
        }
        StableParams check(alpha, sigma, 0.0);
        (void)check;
        if (!(shift >= 0.0) || !std::isfinite(shift)) {
            throw domain_error("DamageModel: folded stable needs shift >= 0");
        }
        DamageModel m(Family::folded_stable);
        m.p1_ = alpha;
        m.p2_ = sigma;
        m.p3_ = shift;
        return m;
    }

    [[nodiscard]] Family family() const { return family_; }

    [[nodiscard]] double mean() const {
        switch (family_) {
        case Family::deterministic:
            return p1_;
        case Family::exponential:
            return 1.0 / p1_;
        case Family::lognormal:
            return std::exp(p1_ + 0.5 * p2_ * p2_);
        case Family::shifted_pareto:
            return p3_ + p1_ * p2_ / (p1_ - 1.0);
        case Family::folded_stable:
            // E|Y| = (2/pi) Gamma(1 - 1/alpha) sigma for symmetric stable Y.
            return p3_ + 2.0 / pi * std::tgamma(1.0 - 1.0 / p1_) * p2_;
        }
        throw domain_error("DamageModel: unknown family");
    }

    [[nodiscard]] double draw(rng_stream& stream) const {
        switch (family_) {
        case Family::deterministic:
            return p1_;
        case Family::exponential:
            return stream.exponential() / p1_;
        case Family::lognormal:
            return std::exp(p1_ + p2_ * stream.normal());
        case Family::shifted_pareto:
            return p3_ + p2_ * std::pow(stream.uniform_pos(), -1.0 / p1_);
        case Family::folded_stable:
            return p3_ + std::abs(stable_draw(StableParams(p1_, p2_, 0.0), stream));
        }
        throw domain_error("DamageModel: unknown family");
    }

    [[nodiscard]] double param1() const { return p1_; }
    [[nodiscard]] double param2() const { return p2_; }
    [[nodiscard]] double param3() const { return p3_; }

private:
    explicit DamageModel(Family family) : family_(family) {}

    Family family_;
    double p1_ = 0.0;
    double p2_ = 0.0;
    double p3_ = 0.0;
};

[[nodiscard]] inline std::string family_name(DamageModel::Family f) {
    switch (f) {
    case DamageModel::Family::deterministic:
        return "deterministic";
    case DamageModel::Family::exponential:
        return "exponential";
    case DamageModel::Family::lognormal:
        return "lognormal";
    case DamageModel::Family::shifted_pareto:
        return "shifted-pareto";
    case DamageModel::Family::folded_stable:
        return "folded-stable";
    }
    return "unknown";
}

// Factory from (family name, positional parameter list), the form the CLI
// and the fixture generator receive. Parameter order matches the factories.
[[nodiscard]] inline DamageModel make_damage_model(const std::string& family,
                                                   const std::vector<double>& params) {
    auto expect = [&](std::size_t n, const char* names) {
        if (params.size() != n) {
            throw domain_error("damage model '" + family + "' needs " + std::to_string(n) +
                               " parameters (" + names + "), got " +
                               std::to_string(params.size()));
        }
    };
    if (family == "deterministic") {
        expect(1, "c");
        return DamageModel::deterministic(params[0]);
    }
    if (family == "exponential") {
        expect(1, "rate");
        return DamageModel::exponential(params[0]);
    }
    if (family == "lognormal") {
        expect(2, "logmean, logsd");
        return DamageModel::lognormal(params[0], params[1]);
    }
    if (family == "shifted-pareto") {
        expect(3, "index, scale, shift");
        return DamageModel::shifted_pareto(params[0], params[1], params[2]);
    }
    if (family == "folded-stable") {
        expect(3, "alpha, sigma, shift");
        return DamageModel::folded_stable(params[0], params[1], params[2]);
    }
    throw domain_error("unknown damage model family '" + family +
                       "' (deterministic, exponential, lognormal, shifted-pareto, folded-stable)");
}

// Deterministic per seed: draws come from the dedicated stream (seed, 0).
[[nodiscard]] inline std::vector<double> damage_sample(const DamageModel& model, std::size_t n,
                                                       std::uint64_t seed) {
    if (n < 1) {
        throw domain_error("damage_sample: n must be at least 1");
    }
    rng_stream stream(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) {
        x = model.draw(stream);
    }
    return out;
}

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double q10 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q90 = 0.0;
};

namespace detail {

// Left-continuous empirical quantile X_(ceil(p n)) of a sorted sample.
[[nodiscard]] inline double sorted_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::min(std::max<std::size_t>(rank, 1), n);
    return sorted[rank - 1];
}

[[nodiscard]] inline SummaryStats summarize(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    SummaryStats s;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    s.q10 = sorted_quantile(values, 0.10);
    s.q25 = sorted_quantile(values, 0.25);
    s.q75 = sorted_quantile(values, 0.75);
    s.q90 = sorted_quantile(values, 0.90);
    return s;
}

} // namespace detail

struct FirstPassageReport {
    std::vector<std::int64_t> n_star_samples;
    double s_star = 0.0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    SummaryStats summary;
    std::optional<double> ks_vs_gbs;
    std::optional<double> mallows_vs_gbs;
};

inline constexpr std::int64_t runaway_cycle_limit = 1'000'000'000;

namespace detail {

// One replication: accumulate damages until the running sum strictly exceeds
// the threshold. Stream index rep + 1 keeps index 0 free for damage_sample.
[[nodiscard]] inline std::int64_t first_passage_once(const DamageModel& model, double s_star,
                                                     std::uint64_t seed, std::size_t rep) {
    rng_stream stream(seed, static_cast<std::uint64_t>(rep) + 1);
    double sum = 0.0;
    std::int64_t n = 0;
    while (sum <= s_star) {
        sum += model.draw(stream);
        if (++n > runaway_cycle_limit) {
            throw runaway_error("simulate_first_passage: replication " + std::to_string(rep) +
                                " exceeded " + std::to_string(runaway_cycle_limit) +
                                " cycles; is the damage mean effectively zero?");
        }
    }
    return n;
}

} // namespace detail

// Monte Carlo law of N_* = inf{n : S_n > s_star}. Replications use private
// streams keyed by index and write into place, so the report is bit-identical
// for any worker count.
[[nodiscard]] inline FirstPassageReport simulate_first_passage(const DamageModel& model,
                                                               double s_star, std::size_t reps,
                                                               std::uint64_t seed,
                                                               std::size_t workers = 1) {
    if (!(s_star > 0.0) || !std::isfinite(s_star)) {
        throw domain_error("simulate_first_passage: s_star must be positive and finite");
    }
    if (reps < 1) {
        throw domain_error("simulate_first_passage: reps must be at least 1");
    }
    workers = std::max<std::size_t>(workers, 1);
    workers = std::min(workers, reps);

    FirstPassageReport report;
    report.s_star = s_star;
    report.replications = reps;
    report.seed = seed;
    report.n_star_samples.resize(reps);

    if (workers == 1) {
        for (std::size_t rep = 0; rep < reps; ++rep) {
            report.n_star_samples[rep] = detail::first_passage_once(model, s_star, seed, rep);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::vector<std::exception_ptr> failures(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t rep = w; rep < reps; rep += workers) {
                        report.n_star_samples[rep] =
                            detail::first_passage_once(model, s_star, seed, rep);
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& failure : failures) {
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
    }

    std::vector<double> as_double(report.n_star_samples.begin(), report.n_star_samples.end());
    report.summary = detail::summarize(std::move(as_double));
    return report;
}

// Kolmogorov-Smirnov sup-discrepancy between a sample and a CDF. At each
// distinct jump point both sides are compared one-sided, with the target's
// left limit taken just below the jump so step-function targets (another
// ECDF) are handled exactly: max(|F_n(x) - F(x)|, |F_n(x-) - F(x-)|).
template <typename Cdf>
[[nodiscard]] inline double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    if (sample.empty()) {
        throw domain_error("ks_distance: sample must be non-empty");
    }
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double sup = 0.0;
    std::size_t i = 0;
    while (i < sample.size()) {
        std::size_t j = i;
        while (j < sample.size() && sample[j] == sample[i]) {
            ++j;
        }
        const double f_right = cdf(sample[i]);
        const double f_left =
            cdf(std::nextafter(sample[i], -std::numeric_limits<double>::infinity()));
        const double below = static_cast<double>(i) / n;
        const double above = static_cast<double>(j) / n;
        sup = std::max({sup, std::abs(above - f_right), std::abs(below - f_left)});
        i = j;
    }
    return sup;
}

[[nodiscard]] inline double ks_distance(const std::vector<std::int64_t>& sample,
                                        const GbsParams& gbs, const QuadratureConfig& quad = {}) {
    std::vector<double> as_double(sample.begin(), sample.end());
    return ks_distance(std::move(as_double),
                       [&](double t) { return gbs_cdf(gbs, t, quad); });
}

// Attach the GBS discrepancy diagnostics to a finished report. The Mallows
// d_1 uses the truncated midpoint quantile grid; for indices below 2 the GBS
// law has infinite mean, so the reported d_1 is the truncated-grid estimate.
inline void attach_gbs_diagnostics(FirstPassageReport& report, const GbsParams& gbs,
                                   const MallowsConfig& config = {},
                                   const QuadratureConfig& quad = {}) {
    report.ks_vs_gbs = ks_distance(report.n_star_samples, gbs, quad);
    if (config.grid_points == 0) return;
    std::vector<double> as_double(report.n_star_samples.begin(), report.n_star_samples.end());
    const EmpiricalSample sample(std::move(as_double));
    const std::vector<double> grid = gbs_quantile_grid(gbs, config.grid_points, quad);
    report.mallows_vs_gbs = mallows_to_quantiles(sample, grid, 1.0, false).distance;
}

struct SumLawReport {
    std::size_t block_length = 0;
    std::size_t replications = 0;
    double ks = 0.0;
    std::optional<double> mallows_d1;
};

// Distributional check of the normalized-sum law: draws reps independent
// blocks of length n, forms Z = (S_n - n * summand_mean)/n^{1/alpha} with the
// target's index, and reports KS and d_1 discrepancies against the target.
// Replication streams are keyed by index as in simulate_first_passage.
// Setting config.grid_points to 0 skips the d_1 grid sweep.
template <typename DrawFn>
[[nodiscard]] inline SumLawReport sum_law_check(DrawFn&& draw_one, double summand_mean,
                                                std::size_t n, std::size_t reps,
                                                const StableParams& target, std::uint64_t seed,
                                                const MallowsConfig& config = {},
                                                const QuadratureConfig& quad = {}) {
    if (n < 1 || reps < 1) {
        throw domain_error("sum_law_check: n and reps must be at least 1");
    }
    const double norm = std::pow(static_cast<double>(n), 1.0 / target.alpha);
    std::vector<double> z(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        rng_stream stream(seed, static_cast<std::uint64_t>(rep) + 1);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += draw_one(stream);
        }
        z[rep] = (sum - static_cast<double>(n) * summand_mean) / norm;
    }

    SumLawReport report;
    report.block_length = n;
    report.replications = reps;
    report.ks = ks_distance(z, [&](double x) { return stable_cdf(target, x, quad); });
    if (config.grid_points > 0) {
        report.mallows_d1 =
            mallows_to_stable(EmpiricalSample(std::move(z)), target, 1.0, config, quad).distance;
    }
    return report;
}

[[nodiscard]] inline SumLawReport sum_law_check(const DamageModel& model, std::size_t n,
                                                std::size_t reps, const StableParams& target,
                                                std::uint64_t seed,
                                                const MallowsConfig& config = {},
                                                const QuadratureConfig& quad = {}) {
    return sum_law_check([&](rng_stream& stream) { return model.draw(stream); }, model.mean(), n,
                         reps, target, seed, config, quad);
}

} // namespace gbs
