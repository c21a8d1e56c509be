#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gbs/checks.hpp"
#include "gbs/errors.hpp"
#include "gbs/estimation.hpp"
#include "gbs/fatigue_life.hpp"
#include "gbs/first_passage.hpp"
#include "gbs/io.hpp"
#include "gbs/mallows.hpp"
#include "gbs/rng.hpp"
#include "gbs/stable.hpp"

namespace gbs::cli {

inline constexpr std::uint64_t default_seed = 1729;

namespace detail {

// Reports go through nlohmann's default (std::map-backed) json so keys are
// emitted sorted; combined with dump(2) this makes output byte-reproducible
// across runs, which the test suite relies on. Non-finite doubles serialize
// as null per the library's contract; a flagged index estimate is the one
// place that can happen and the flag itself still carries the information.
using json = nlohmann::json;

inline void emit(const json& j, const std::string& output_path) {
    const std::string text = j.dump(2) + "\n";
    if (output_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + output_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw io_error("write failed: " + output_path);
}

[[nodiscard]] inline json to_json(const EstimationReport& r) {
    json j;
    if (r.alpha_hat) j["alpha_hat"] = *r.alpha_hat; else j["alpha_hat"] = nullptr;
    j["alpha_flagged"] = r.alpha_flagged;
    if (r.sigma_hat) j["sigma_hat"] = *r.sigma_hat; else j["sigma_hat"] = nullptr;
    j["k_used"] = r.k_used;
    j["block_count"] = r.r_used;
    j["eps_used"] = r.eps_used;
    j["density_at_zero"] = r.l_hat_zero;
    j["discarded_tail_points"] = r.discarded;
    j["used_sample_mean"] = r.used_sample_mean;
    return j;
}

[[nodiscard]] inline json to_json(const SummaryStats& s) {
    json j;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["q10"] = s.q10;
    j["q25"] = s.q25;
    j["q75"] = s.q75;
    j["q90"] = s.q90;
    return j;
}

[[nodiscard]] inline json to_json(const FirstPassageReport& r) {
    json j;
    j["s_star"] = r.s_star;
    j["replications"] = r.replications;
    j["seed"] = r.seed;
    j["cycles_to_failure"] = to_json(r.summary);
    if (r.ks_vs_gbs) j["ks_vs_fitted_life_law"] = *r.ks_vs_gbs;
    if (r.mallows_vs_gbs) j["mallows_d1_vs_fitted_life_law"] = *r.mallows_vs_gbs;
    return j;
}

struct DistOptions {
    std::string family = "stable";
    std::string op = "cdf";
    double alpha = 1.5;
    double sigma = 1.0;
    double mu = 0.0;
    double mu_x = 1.0;
    double s_star = 100.0;
    double a = 1.0;
    double b = 1.0;
    std::optional<double> t;
    std::optional<double> p;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::size_t grid_points = 200;
    bool grid_log = false;
    std::size_t reps = 10;
    std::uint64_t seed = default_seed;
    std::string output;
};

struct FitOptions {
    std::string input;
    std::optional<double> mu_x;
    std::optional<double> alpha;
    std::optional<std::size_t> k;
    std::string output;
};

struct SimulateOptions {
    std::string model = "shifted-pareto";
    std::vector<double> model_params{1.5, 1.0, 0.0};
    double s_star = 1000.0;
    std::size_t reps = 10'000;
    std::uint64_t seed = default_seed;
    std::size_t workers = 1;
    std::size_t fit_n = 100'000;
    std::optional<double> alpha;
    std::size_t grid_points = 0;
    std::string output;
};

struct DistanceOptions {
    std::string input;
    std::string input2;
    double r = 1.0;
    double alpha = 1.5;
    double sigma = 1.0;
    double mu = 0.0;
    bool have_target = false;
    std::size_t grid_points = 10'000;
    std::string output;
};

struct VerifyOptions {
    bool quick = false;
    std::size_t workers = 4;
};

// dist: evaluate one law pointwise, tabulate it over a grid, or sample it.
inline void run_dist(const DistOptions& opt) {
    const bool grid_mode = opt.grid_min.has_value() || opt.grid_max.has_value();
    if (grid_mode && (!opt.grid_min || !opt.grid_max)) {
        throw domain_error("dist: --grid-min and --grid-max must be given together");
    }
    if (grid_mode && opt.output.empty()) {
        throw domain_error("dist: grid evaluation writes CSV and requires --output");
    }

    enum class Family { stable, gbs, classical };
    Family family;
    if (opt.family == "stable") family = Family::stable;
    else if (opt.family == "gbs") family = Family::gbs;
    else if (opt.family == "classical-bs") family = Family::classical;
    else throw domain_error("dist: unknown family '" + opt.family +
                            "' (expected stable, gbs, or classical-bs)");

    // Constructing the parameter packs validates them up front.
    std::optional<StableParams> sp;
    std::optional<GbsParams> gp;
    std::optional<ClassicalBsParams> cp;
    switch (family) {
        case Family::stable: sp.emplace(opt.alpha, opt.sigma, opt.mu); break;
        case Family::gbs: gp.emplace(opt.alpha, opt.sigma, opt.mu_x, opt.s_star); break;
        case Family::classical: cp.emplace(opt.a, opt.b); break;
    }

    auto eval_cdf = [&](double x) {
        switch (family) {
            case Family::stable: return stable_cdf(*sp, x);
            case Family::gbs: return gbs_cdf(*gp, x);
            default: return classical_bs_cdf(*cp, x);
        }
    };
    auto eval_pdf = [&](double x) {
        switch (family) {
            case Family::stable: return stable_pdf(*sp, x);
            case Family::gbs: return gbs_pdf(*gp, x);
            default: return classical_bs_pdf(*cp, x);
        }
    };
    auto eval_quantile = [&](double q) {
        switch (family) {
            case Family::stable: return stable_quantile(*sp, q);
            case Family::gbs: return gbs_quantile(*gp, q);
            default: return classical_bs_quantile(*cp, q);
        }
    };

    if (opt.op == "sample") {
        if (opt.reps == 0) throw domain_error("dist: --reps must be positive");
        std::vector<double> draws;
        draws.reserve(opt.reps);
        rng_stream rng(opt.seed, 0);
        for (std::size_t i = 0; i < opt.reps; ++i) {
            // Draw stable laws directly; the life laws sample by inversion so
            // that every family shares one uniform stream discipline.
            if (family == Family::stable) draws.push_back(stable_draw(*sp, rng));
            else draws.push_back(eval_quantile(rng.uniform_pos()));
        }
        json j;
        j["family"] = opt.family;
        j["seed"] = opt.seed;
        j["values"] = draws;
        emit(j, opt.output);
        return;
    }

    if (opt.op != "cdf" && opt.op != "pdf" && opt.op != "quantile") {
        throw domain_error("dist: unknown op '" + opt.op +
                           "' (expected cdf, pdf, quantile, or sample)");
    }

    if (grid_mode) {
        if (opt.op == "quantile" &&
            !(*opt.grid_min > 0.0 && *opt.grid_max < 1.0)) {
            throw domain_error("dist: quantile grid must lie inside (0, 1)");
        }
        const GridSpec grid{*opt.grid_min, *opt.grid_max, opt.grid_points, opt.grid_log};
        auto fn = [&](double x) {
            if (opt.op == "cdf") return eval_cdf(x);
            if (opt.op == "pdf") return eval_pdf(x);
            return eval_quantile(x);
        };
        emit_curve_csv(fn, grid, opt.output);
        return;
    }

    double x = 0.0;
    double value = 0.0;
    if (opt.op == "quantile") {
        if (!opt.p) throw domain_error("dist: op quantile needs --p");
        x = *opt.p;
        value = eval_quantile(x);
    } else {
        if (!opt.t) throw domain_error("dist: op " + opt.op + " needs --t");
        x = *opt.t;
        value = (opt.op == "cdf") ? eval_cdf(x) : eval_pdf(x);
    }
    json j;
    j["family"] = opt.family;
    j["op"] = opt.op;
    j["at"] = x;
    j["value"] = value;
    emit(j, opt.output);
}

// fit: damage CSV in, index/scale estimates out.
inline void run_fit(const FitOptions& opt) {
    const DamageSeries data = parse_damage_csv(opt.input, opt.mu_x);
    EstimationConfig config;
    if (opt.alpha) config.alpha_override = *opt.alpha;
    if (opt.k) {
        const std::size_t k = *opt.k;
        config.k_rule = [k](std::size_t) { return k; };
    }
    const EstimationReport report = fit_damage_series(data, config);
    json j = to_json(report);
    j["input"] = opt.input;
    j["n"] = data.values.size();
    if (opt.alpha) j["alpha_override"] = *opt.alpha;
    emit(j, opt.output);
}

// simulate: synthetic damage model -> first-passage replications -> summary,
// with goodness-of-fit against the life law fitted from the same model.
inline void run_simulate(const SimulateOptions& opt) {
    const DamageModel model = make_damage_model(opt.model, opt.model_params);
    if (opt.fit_n < 16) throw domain_error("simulate: --fit-n must be at least 16");

    // Calibrate the life law from a fresh synthetic damage sample. The known
    // increment mean goes in directly; only index and scale are estimated.
    const DamageSeries calib(damage_sample(model, opt.fit_n, opt.seed), model.mean());
    EstimationConfig config;
    if (opt.alpha) config.alpha_override = *opt.alpha;
    const EstimationReport fit = fit_damage_series(calib, config);
    const double alpha = opt.alpha ? *opt.alpha : *fit.alpha_hat;
    if (!(alpha > 1.0) || !(alpha <= 2.0)) {
        throw domain_error("simulate: calibrated alpha is outside (1, 2]; pass --alpha");
    }
    const GbsParams gbs(alpha, *fit.sigma_hat, model.mean(), opt.s_star);

    FirstPassageReport report =
        simulate_first_passage(model, opt.s_star, opt.reps, opt.seed, opt.workers);
    MallowsConfig mallows;
    mallows.grid_points = opt.grid_points;
    attach_gbs_diagnostics(report, gbs, mallows);

    json j = to_json(report);
    j["model"] = family_name(model.family());
    j["model_params"] = opt.model_params;
    j["fitted"] = {{"alpha", alpha}, {"sigma", *fit.sigma_hat},
                   {"mu_x", model.mean()}, {"s_star", opt.s_star}};
    // Worker count is load-balancing, not model input; results are identical
    // for any value, so it stays out of the report.
    emit(j, opt.output);
}

// distance: Mallows distance sample-to-sample or sample-to-stable-law.
inline void run_distance(const DistanceOptions& opt) {
    const bool two_sample = !opt.input2.empty();
    if (two_sample == opt.have_target) {
        throw domain_error(
            "distance: give either --input2 or a stable target (--alpha/--sigma/--mu), not both");
    }
    const EmpiricalSample sample(parse_sample_csv(opt.input));
    json j;
    j["input"] = opt.input;
    j["r"] = opt.r;
    if (two_sample) {
        const EmpiricalSample other(parse_sample_csv(opt.input2));
        j["input2"] = opt.input2;
        j["distance"] = mallows_empirical(sample, other, opt.r);
    } else {
        const StableParams target(opt.alpha, opt.sigma, opt.mu);
        MallowsConfig config;
        config.grid_points = opt.grid_points;
        const MallowsResult result = mallows_to_stable(sample, target, opt.r, config);
        j["target"] = {{"alpha", opt.alpha}, {"sigma", opt.sigma}, {"mu", opt.mu}};
        j["grid_points"] = opt.grid_points;
        j["distance"] = result.distance;
        j["tail_divergence_suspected"] = result.tail_divergence_suspected;
    }
    emit(j, opt.output);
}

// verify: run the acceptance property suite, one line per property. Exit
// status reports whether the suite ran to completion; individual pass/fail
// results are the payload, on stdout, machine-checkable per line.
inline int run_verify(const VerifyOptions& opt) {
    CheckOptions options;
    options.quick = opt.quick;
    options.workers = opt.workers;
    const std::vector<CheckResult> results = run_all_checks(options);
    int failed = 0;
    for (const CheckResult& r : results) {
        if (!r.pass) ++failed;
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
    }
    std::printf("%zu properties, %d failed\n", results.size(), failed);
    std::fflush(stdout);
    return 0;
}

}  // namespace detail

// Entry point shared by the installed binary and the test harness.
inline int run(int argc, char** argv) {
    CLI::App app{"fatigue-life modelling with heavy-tailed damage increments"};
    app.require_subcommand(1);

    detail::DistOptions dist;
    detail::FitOptions fit;
    detail::SimulateOptions sim;
    detail::DistanceOptions dist_opt;
    detail::VerifyOptions verify;

    CLI::App* c_dist = app.add_subcommand("dist", "evaluate or sample a distribution");
    c_dist->add_option("--family", dist.family, "stable, gbs, or classical-bs")
        ->capture_default_str();
    c_dist->add_option("--op", dist.op, "cdf, pdf, quantile, or sample")->capture_default_str();
    c_dist->add_option("--alpha", dist.alpha, "stability index in (1, 2]")->capture_default_str();
    c_dist->add_option("--sigma", dist.sigma, "scale parameter")->capture_default_str();
    c_dist->add_option("--mu", dist.mu, "location parameter (stable)")->capture_default_str();
    c_dist->add_option("--mu-x", dist.mu_x, "mean damage increment (gbs)")->capture_default_str();
    c_dist->add_option("--s-star", dist.s_star, "critical damage threshold (gbs)")
        ->capture_default_str();
    c_dist->add_option("--a", dist.a, "shape parameter (classical-bs)")->capture_default_str();
    c_dist->add_option("--b", dist.b, "scale parameter (classical-bs)")->capture_default_str();
    c_dist->add_option("--t", [&dist](const std::vector<std::string>& v) {
        dist.t = std::stod(v.front());
        return true;
    }, "evaluation point for cdf/pdf");
    c_dist->add_option("--p", [&dist](const std::vector<std::string>& v) {
        dist.p = std::stod(v.front());
        return true;
    }, "probability level for quantile");
    c_dist->add_option("--grid-min", [&dist](const std::vector<std::string>& v) {
        dist.grid_min = std::stod(v.front());
        return true;
    }, "grid start (CSV curve output)");
    c_dist->add_option("--grid-max", [&dist](const std::vector<std::string>& v) {
        dist.grid_max = std::stod(v.front());
        return true;
    }, "grid end (CSV curve output)");
    c_dist->add_option("--grid-points", dist.grid_points, "grid size")->capture_default_str();
    c_dist->add_flag("--grid-log", dist.grid_log, "space the grid geometrically");
    c_dist->add_option("--reps", dist.reps, "sample size for op sample")->capture_default_str();
    c_dist->add_option("--seed", dist.seed, "RNG seed")->capture_default_str();
    c_dist->add_option("--output", dist.output, "output path (default stdout; CSV for grids)");

    CLI::App* c_fit = app.add_subcommand("fit", "estimate index and scale from a damage CSV");
    c_fit->add_option("--input", fit.input, "damage CSV (one value per row)")->required();
    c_fit->add_option("--mu-x", [&fit](const std::vector<std::string>& v) {
        fit.mu_x = std::stod(v.front());
        return true;
    }, "known mean damage increment (default: sample mean)");
    c_fit->add_option("--alpha", [&fit](const std::vector<std::string>& v) {
        fit.alpha = std::stod(v.front());
        return true;
    }, "skip index estimation and use this alpha");
    c_fit->add_option("--k", [&fit](const std::vector<std::string>& v) {
        fit.k = static_cast<std::size_t>(std::stoull(v.front()));
        return true;
    }, "tail size / block count override");
    c_fit->add_option("--output", fit.output, "output path (default stdout)");

    CLI::App* c_sim = app.add_subcommand("simulate", "first-passage Monte Carlo for a damage model");
    c_sim->add_option("--model", sim.model,
                      "deterministic, exponential, lognormal, shifted-pareto, or folded-stable")
        ->capture_default_str();
    c_sim->add_option("--model-params", sim.model_params, "model parameters, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    c_sim->add_option("--s-star", sim.s_star, "critical damage threshold")->capture_default_str();
    c_sim->add_option("--reps", sim.reps, "replications")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    c_sim->add_option("--workers", sim.workers, "worker threads (result-invariant)")
        ->capture_default_str();
    c_sim->add_option("--fit-n", sim.fit_n, "calibration sample size")->capture_default_str();
    c_sim->add_option("--alpha", [&sim](const std::vector<std::string>& v) {
        sim.alpha = std::stod(v.front());
        return true;
    }, "skip index estimation and use this alpha");
    c_sim->add_option("--grid-points", sim.grid_points,
                      "quantile grid for the Mallows diagnostic (0 = skip)")
        ->capture_default_str();
    c_sim->add_option("--output", sim.output, "output path (default stdout)");

    CLI::App* c_distance = app.add_subcommand("distance", "Mallows distance diagnostics");
    c_distance->add_option("--input", dist_opt.input, "sample CSV")->required();
    c_distance->add_option("--input2", dist_opt.input2, "second sample CSV (two-sample mode)");
    c_distance->add_option("--r", dist_opt.r, "distance order in [1, 2]")->capture_default_str();
    CLI::Option* o_alpha =
        c_distance->add_option("--alpha", dist_opt.alpha, "target stable index");
    CLI::Option* o_sigma =
        c_distance->add_option("--sigma", dist_opt.sigma, "target stable scale");
    CLI::Option* o_mu = c_distance->add_option("--mu", dist_opt.mu, "target stable location");
    c_distance->add_option("--grid-points", dist_opt.grid_points, "quantile grid size")
        ->capture_default_str();
    c_distance->add_option("--output", dist_opt.output, "output path (default stdout)");

    CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance property suite");
    c_verify->add_flag("--quick", verify.quick, "smaller replication counts");
    c_verify->add_option("--workers", verify.workers, "threads for the determinism cross-check")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_dist->parsed()) detail::run_dist(dist);
        else if (c_fit->parsed()) detail::run_fit(fit);
        else if (c_sim->parsed()) detail::run_simulate(sim);
        else if (c_distance->parsed()) {
            dist_opt.have_target =
                o_alpha->count() > 0 || o_sigma->count() > 0 || o_mu->count() > 0;
            detail::run_distance(dist_opt);
        } else if (c_verify->parsed()) {
            return detail::run_verify(verify);
        }
    } catch (const std::exception& e) {
        detail::json j;
        j["error"] = e.what();
        std::fprintf(stderr, "%s\n", j.dump(2).c_str());
        return 1;
    }
    return 0;
}

}  // namespace gbs::cli
