#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "gbs/estimation.hpp"
#include "gbs/first_passage.hpp"
#include "gbs/math.hpp"
#include "gbs/rng.hpp"
#include "gbs/stable.hpp"

using namespace gbs;

namespace {

EstimationConfig fixed_k(std::size_t k) {
    EstimationConfig config;
    config.k_rule = [k](std::size_t) { return k; };
    return config;
}

}  // namespace

TEST_CASE("hill hand instance") {
    // Centered values (-1, 2, 4, 8); with k = 2 the pivot is 2 and the top
    // log-ratios are log 2 and log 4, so 1/alpha_hat = (3/2) log 2.
    const DamageSeries data({9.0, 12.0, 14.0, 18.0}, 10.0);
    const EstimationReport rep = hill_alpha(data, fixed_k(2));
    REQUIRE(rep.alpha_hat.has_value());
    CHECK(*rep.alpha_hat == Catch::Approx(1.0 / (1.5 * std::log(2.0))).epsilon(1e-14));
    CHECK(*rep.alpha_hat == Catch::Approx(0.9618).margin(5e-5));
    CHECK(rep.alpha_flagged);
    CHECK(rep.k_used == 2);
    CHECK_FALSE(rep.used_sample_mean);
}

TEST_CASE("hill reports an infinite estimate when the top ratios are all one") {
    const DamageSeries data({1.0, 1.0, 1.0, 1.0, 5.0, 5.0, 5.0, 5.0}, 0.5);
    const EstimationReport rep = hill_alpha(data, fixed_k(3));
    REQUIRE(rep.alpha_hat.has_value());
    CHECK(std::isinf(*rep.alpha_hat));
    CHECK(rep.alpha_flagged);
}

TEST_CASE("hill recovers the index of an exact pareto tail") {
    // Raw values are Pareto(1.5) plus a known shift, so centering by the
    // shift leaves exact Pareto data, for which the Hill statistic is a mean
    // of i.i.d. Exponential(alpha) variates with expectation exactly 1/alpha.
    const DamageModel model = DamageModel::shifted_pareto(1.5, 1.0, 5.0);
    const DamageSeries data(damage_sample(model, 100'000, 4242), 5.0);
    const EstimationReport rep = hill_alpha(data);
    REQUIRE(rep.alpha_hat.has_value());
    CHECK(std::abs(1.0 / *rep.alpha_hat - 2.0 / 3.0) <= 0.05);
    CHECK_FALSE(rep.alpha_flagged);
}

TEST_CASE("hill is exactly invariant under a common location shift") {
    // Integer-valued data keep the centering arithmetic exact, so the two
    // reports must agree bit for bit.
    const std::vector<double> base = {2.0, 7.0, 9.0, 1.0, 31.0, 14.0, 6.0, 90.0, 3.0, 11.0};
    std::vector<double> shifted = base;
    for (double& v : shifted) v += 1000.0;
    const EstimationReport a = hill_alpha(DamageSeries(base, 4.0), fixed_k(3));
    const EstimationReport b = hill_alpha(DamageSeries(shifted, 1004.0), fixed_k(3));
    REQUIRE(a.alpha_hat.has_value());
    REQUIRE(b.alpha_hat.has_value());
    CHECK(*a.alpha_hat == *b.alpha_hat);
}

TEST_CASE("block sums hand instance") {
    const DamageSeries data({3.0, 1.0, 4.0, 2.0, 7.0}, 2.0);
    std::size_t discarded = 0;
    const std::vector<double> blocks = block_sums(data, 2.0, 2, &discarded);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == 0.0);
    CHECK(blocks[1] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(discarded == 1);
}

TEST_CASE("block size one returns the centered series unchanged") {
    const DamageSeries data({3.0, 1.0, 4.0, 2.0, 7.0}, 2.0);
    const std::vector<double> blocks = block_sums(data, 1.7, 1);
    CHECK(blocks == data.centered());
}

TEST_CASE("block sums of exact stable draws keep the law") {
    // Stability under convolution: blocks of k centered draws scaled by
    // k^{1/alpha} follow the original law exactly, so the r = 1000 block
    // values must pass a KS test against it at the 1 percent level.
    const StableParams law(1.5, 1.0, 0.0);
    std::vector<double> values = stable_sample(law, 1'000'000, 606);
    for (double& v : values) v += 5.0;
    const DamageSeries data(std::move(values), 5.0);
    std::vector<double> blocks = block_sums(data, 1.5, 1000);
    REQUIRE(blocks.size() == 1000);
    const double ks =
        ks_distance(std::move(blocks), [&](double x) { return stable_cdf(law, x); });
    CHECK(ks <= 1.6276 / std::sqrt(1000.0));
}

TEST_CASE("density-at-zero hand values") {
    CHECK(l_hat_zero({-0.5, 0.2, 1.3}, 0.6) == Catch::Approx(2.0 / (2.0 * 0.6 * 3.0)).epsilon(1e-15));
    CHECK(l_hat_zero({-0.5, 0.2, 1.3}, 0.6) == Catch::Approx(0.55556).margin(5e-6));
    CHECK(l_hat_zero({3.0, -4.0, 2.2}, 1.0) == 0.0);
    CHECK_THROWS_AS(l_hat_zero({}, 0.5), sample_size_error);
    CHECK_THROWS_AS(l_hat_zero({1.0}, 0.0), domain_error);
}

TEST_CASE("density-at-zero matches the gaussian density") {
    rng_stream rng(777, 0);
    std::vector<double> draws(1'000'000);
    for (double& v : draws) v = rng.normal();
    const double l = l_hat_zero(draws, 0.05);
    const double target = 1.0 / std::sqrt(2.0 * pi);
    CHECK(std::abs(l / target - 1.0) <= 0.05);
}

TEST_CASE("density estimate respects its hard bounds") {
    rng_stream rng(31, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> blocks(1 + static_cast<std::size_t>(rng.uniform() * 20.0));
        for (double& v : blocks) v = 4.0 * (rng.uniform() - 0.5);
        const double eps = 0.05 + rng.uniform();
        const double l = l_hat_zero(blocks, eps);
        CHECK(l >= 0.0);
        CHECK(l <= 1.0 / (2.0 * eps));
    }
}

TEST_CASE("sigma estimate on exact stable damage draws") {
    // Draws of S_1.5(2, 0, 5): known mean 5, true scale 2, default rules.
    const StableParams law(1.5, 2.0, 5.0);
    const DamageSeries data(stable_sample(law, 1'000'000, 3), 5.0);
    const EstimationReport rep = estimate_sigma(data, EstimationConfig{}, 1.5);
    REQUIRE(rep.sigma_hat.has_value());
    CHECK(std::abs(*rep.sigma_hat / 2.0 - 1.0) <= 0.15);
    CHECK(rep.k_used == 3981);
    CHECK(rep.r_used == 251);
    CHECK(rep.eps_used == Catch::Approx(std::pow(251.0, -0.2)).epsilon(1e-12));
}

TEST_CASE("sigma estimate in the gaussian case") {
    // N(0,1) equals S_2(1/sqrt(2), 0, 0), so that is the target scale.
    rng_stream rng(12, 0);
    std::vector<double> values(1'000'000);
    for (double& v : values) v = 3.0 + rng.normal();
    const DamageSeries data(std::move(values), 3.0);
    const EstimationReport rep = estimate_sigma(data, EstimationConfig{}, 2.0);
    REQUIRE(rep.sigma_hat.has_value());
    CHECK(std::abs(*rep.sigma_hat * std::sqrt(2.0) - 1.0) <= 0.15);
}

TEST_CASE("sigma inverts the density estimate exactly") {
    const StableParams law(1.5, 2.0, 5.0);
    const DamageSeries data(stable_sample(law, 100'000, 9), 5.0);
    const EstimationReport rep = estimate_sigma(data, EstimationConfig{}, 1.5);
    REQUIRE(rep.sigma_hat.has_value());
    // sigma_hat is defined as Gamma(1/alpha)/(pi alpha) divided by the
    // density estimate; multiplying back must reproduce the constant.
    CHECK(*rep.sigma_hat * rep.l_hat_zero ==
          Catch::Approx(std::tgamma(1.0 / 1.5) / (pi * 1.5)).epsilon(1e-15));
}

TEST_CASE("sigma pipeline is exactly scale equivariant") {
    // Scaling data and bandwidth by 4 (a power of two) scales every block
    // sum, the bandwidth comparison, and the final estimate exactly.
    const StableParams law(1.5, 1.0, 0.0);
    std::vector<double> values = stable_sample(law, 20'000, 88);
    for (double& v : values) v += 2.0;
    std::vector<double> scaled = values;
    for (double& v : scaled) v *= 4.0;

    EstimationConfig base_config = fixed_k(100);
    EstimationConfig scaled_config = fixed_k(100);
    scaled_config.eps_rule = [](std::size_t r) { return 4.0 * std::pow(static_cast<double>(r), -0.2); };

    const EstimationReport a = estimate_sigma(DamageSeries(values, 2.0), base_config, 1.5);
    const EstimationReport b = estimate_sigma(DamageSeries(scaled, 8.0), scaled_config, 1.5);
    REQUIRE(a.sigma_hat.has_value());
    REQUIRE(b.sigma_hat.has_value());
    CHECK(*b.sigma_hat == 4.0 * *a.sigma_hat);
    CHECK(b.l_hat_zero == a.l_hat_zero / 4.0);
}

TEST_CASE("bandwidth too small is an error") {
    const StableParams law(1.5, 1.0, 0.0);
    const DamageSeries data(stable_sample(law, 10'000, 5));
    EstimationConfig config = fixed_k(100);
    config.eps_rule = [](std::size_t) { return 1e-9; };
    CHECK_THROWS_AS(estimate_sigma(data, config, 1.5), bandwidth_error);
}

TEST_CASE("full fit runs hill then sigma") {
    const DamageModel model = DamageModel::shifted_pareto(1.5, 1.0, 0.0);
    std::vector<double> values = damage_sample(model, 100'000, 1001);
    const double mean = model.mean();
    const DamageSeries data(std::move(values), mean);
    const EstimationReport rep = fit_damage_series(data);
    REQUIRE(rep.alpha_hat.has_value());
    REQUIRE(rep.sigma_hat.has_value());
    CHECK(*rep.alpha_hat > 1.0);
    CHECK(*rep.alpha_hat <= 2.0);
    CHECK(*rep.sigma_hat > 0.0);
}

TEST_CASE("fit with an index override skips hill") {
    const StableParams law(1.5, 2.0, 5.0);
    const DamageSeries data(stable_sample(law, 100'000, 21), 5.0);
    EstimationConfig config;
    config.alpha_override = 1.5;
    const EstimationReport rep = fit_damage_series(data, config);
    CHECK_FALSE(rep.alpha_hat.has_value());
    REQUIRE(rep.sigma_hat.has_value());
    CHECK(*rep.sigma_hat > 0.0);
}

TEST_CASE("fit rejects a light-tailed index estimate") {
    // Exponential damages put the Hill estimate far above 2; the pipeline
    // must refuse to feed that into the scale step.
    const DamageModel model = DamageModel::exponential(1.0);
    const DamageSeries data(damage_sample(model, 50'000, 77), 1.0);
    CHECK_THROWS_AS(fit_damage_series(data), domain_error);
}

TEST_CASE("sample mean fallback is flagged") {
    const DamageSeries data({1.0, 2.0, 3.0, 10.0, 30.0, 4.0, 2.0, 9.0});
    const EstimationReport rep = hill_alpha(data, fixed_k(2));
    CHECK(rep.used_sample_mean);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(DamageSeries({}, 1.0), domain_error);
    CHECK_THROWS_AS(DamageSeries({1.0, 2.0}, 0.0), domain_error);
    CHECK_THROWS_AS(DamageSeries({1.0, 2.0}, -3.0), domain_error);
    CHECK_THROWS_AS(DamageSeries({1.0, std::nan("")}, 1.0), domain_error);

    const DamageSeries small({5.0, 6.0, 7.0}, 1.0);
    CHECK_THROWS_AS(hill_alpha(small, fixed_k(1)), sample_size_error);

    const DamageSeries data({5.0, 6.0, 7.0, 8.0, 9.0}, 1.0);
    CHECK_THROWS_AS(hill_alpha(data, fixed_k(5)), sample_size_error);
    CHECK_THROWS_AS(block_sums(data, 1.5, 6), sample_size_error);

    // All values below the centering mean: the Hill pivot is negative.
    const DamageSeries negative_tail({1.0, 2.0, 3.0, 4.0}, 100.0);
    CHECK_THROWS_AS(hill_alpha(negative_tail, fixed_k(2)), tail_positivity_error);

    CHECK_THROWS_AS(estimate_sigma(data, EstimationConfig{}, 1.0), domain_error);
    CHECK_THROWS_AS(estimate_sigma(data, EstimationConfig{}, 2.3), domain_error);
}
