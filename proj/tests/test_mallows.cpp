#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "gbs/mallows.hpp"
#include "gbs/math.hpp"
#include "gbs/rng.hpp"
#include "gbs/stable.hpp"

using namespace gbs;

TEST_CASE("two-sample hand values") {
    const EmpiricalSample a({0.0, 1.0});
    const EmpiricalSample b({0.0, 3.0});
    CHECK(mallows_empirical(a, a, 1.0) == 0.0);
    CHECK(mallows_empirical(a, b, 1.0) == Catch::Approx(1.0).epsilon(1e-15));
    // Equal sizes pair order statistics: d_2^2 = (9 + 16)/2.
    const EmpiricalSample c({0.0, 0.0});
    const EmpiricalSample d({3.0, 4.0});
    CHECK(mallows_empirical(c, d, 2.0) == Catch::Approx(std::sqrt(12.5)).epsilon(1e-15));
    // Unequal sizes integrate the stepwise quantile gap exactly.
    const EmpiricalSample e({1.0, 2.0, 3.5});
    const EmpiricalSample f({0.5, 2.5, 3.0, 4.0});
    CHECK(mallows_empirical(e, f, 1.0) == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("distance vanishes exactly when the empirical cdfs coincide") {
    const EmpiricalSample a({1.0, 2.0, 1.0});
    const EmpiricalSample b({1.0, 1.0, 2.0});
    const EmpiricalSample doubled({1.0, 1.0, 2.0, 2.0, 1.0, 1.0});
    for (double r : {1.0, 1.5, 2.0}) {
        CHECK(mallows_empirical(a, b, r) == 0.0);
        CHECK(mallows_empirical(a, doubled, r) == 0.0);
    }
}

TEST_CASE("pure shifts come out exactly") {
    // Dyadic values and shifts keep every |difference|^r and its r-th root
    // exact in floating point, so the distance equals |c| bit for bit.
    const std::vector<double> base = {0.25, 1.5, -2.0, 8.0, 0.75};
    for (double c : {0.5, -4.0, 2.25}) {
        std::vector<double> original = base;
        std::vector<double> shifted = base;
        for (double& v : shifted) v += c;
        const EmpiricalSample f(std::move(original));
        const EmpiricalSample g(std::move(shifted));
        CHECK(mallows_empirical(f, g, 1.0) == std::abs(c));
        for (double r : {1.5, 2.0}) {
            CHECK(mallows_empirical(f, g, r) == Catch::Approx(std::abs(c)).epsilon(1e-14));
        }
    }
}

TEST_CASE("metric axioms hold on random triples") {
    rng_stream rng(2024, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto draw_sample = [&rng]() {
            std::vector<double> v(2 + static_cast<std::size_t>(rng.uniform() * 30.0));
            for (double& x : v) x = 10.0 * (rng.uniform() - 0.5);
            return EmpiricalSample(std::move(v));
        };
        const EmpiricalSample f = draw_sample();
        const EmpiricalSample g = draw_sample();
        const EmpiricalSample h = draw_sample();
        for (double r : {1.0, 1.5, 2.0}) {
            const double fg = mallows_empirical(f, g, r);
            const double gf = mallows_empirical(g, f, r);
            const double fh = mallows_empirical(f, h, r);
            const double gh = mallows_empirical(g, h, r);
            CHECK(fg >= 0.0);
            CHECK(fg == Catch::Approx(gf).margin(1e-13));
            CHECK(mallows_empirical(f, f, r) == 0.0);
            CHECK(fh <= fg + gh + 1e-10);
        }
    }
}

TEST_CASE("distance is non-decreasing in the order") {
    // The coupling integrand lives on a probability space, so its L^r norm
    // grows with r (power-mean inequality), for equal and unequal sizes.
    rng_stream rng(515, 0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a(3 + static_cast<std::size_t>(rng.uniform() * 20.0));
        std::vector<double> b(3 + static_cast<std::size_t>(rng.uniform() * 25.0));
        for (double& x : a) x = 4.0 * (rng.uniform() - 0.5);
        for (double& x : b) x = 4.0 * (rng.uniform() - 0.5);
        const EmpiricalSample f(std::move(a));
        const EmpiricalSample g(std::move(b));
        const double d1 = mallows_empirical(f, g, 1.0);
        const double d15 = mallows_empirical(f, g, 1.5);
        const double d2 = mallows_empirical(f, g, 2.0);
        CHECK(d1 <= d15 + 1e-12);
        CHECK(d15 <= d2 + 1e-12);
    }
}

TEST_CASE("self-distance of a large target sample is small") {
    const StableParams law(1.5, 1.0, 0.0);
    const EmpiricalSample sample(stable_sample(law, 1'000'000, 2));
    MallowsConfig config;
    config.grid_points = 10'000;
    const MallowsResult r = mallows_to_stable(sample, law, 1.0, config);
    CHECK(r.distance <= 0.01);
    CHECK_FALSE(r.tail_divergence_suspected);
}

TEST_CASE("gaussian fast path matches a normal sample") {
    const StableParams law(2.0, 0.8, 1.0);
    rng_stream rng(14, 0);
    std::vector<double> v(1'000'000);
    // S_2(0.8, 0, 1) is N(1, 2 * 0.64).
    for (double& x : v) x = 1.0 + 0.8 * std::sqrt(2.0) * rng.normal();
    MallowsConfig config;
    config.grid_points = 10'000;
    const MallowsResult r = mallows_to_stable(EmpiricalSample(std::move(v)), law, 1.0, config);
    CHECK(r.distance <= 0.01);
}

TEST_CASE("point mass reduces to the mean absolute deviation of the target") {
    // Coupling a point mass at the median with the target turns d_1 into
    // E|Y - mu|, which for this family is (2/pi) Gamma(1 - 1/alpha) sigma.
    const StableParams law(1.5, 1.0, 0.0);
    const EmpiricalSample degenerate({0.0, 0.0, 0.0});
    MallowsConfig config;
    config.grid_points = 100'000;
    const MallowsResult r = mallows_to_stable(degenerate, law, 1.0, config);

    const std::vector<double> draws = stable_sample(law, 4'000'000, 4);
    double sum = 0.0;
    for (double d : draws) sum += std::abs(d);
    const double mc = sum / static_cast<double>(draws.size());

    const double closed = (2.0 / pi) * std::tgamma(1.0 - 1.0 / 1.5);
    CHECK(mc == Catch::Approx(closed).epsilon(0.02));
    CHECK(r.distance == Catch::Approx(mc).epsilon(0.02));
    CHECK(r.distance == Catch::Approx(closed).epsilon(0.02));
}

TEST_CASE("grid truncation only ever underestimates heavy tails") {
    const StableParams law(1.5, 1.0, 0.0);
    const EmpiricalSample degenerate({0.0});
    double prev = 0.0;
    for (std::size_t m : {100u, 1'000u, 10'000u}) {
        MallowsConfig config;
        config.grid_points = m;
        const double d = mallows_to_stable(degenerate, law, 1.0, config).distance;
        CHECK(d >= prev - 1e-12);
        prev = d;
    }
}

TEST_CASE("tail divergence detector arms only when the order hits the index") {
    const StableParams law(1.5, 1.0, 0.0);
    const EmpiricalSample degenerate({0.0});
    MallowsConfig config;
    config.grid_points = 10'000;
    // At r = alpha the target's own r-th absolute moment is infinite, so the
    // outermost grid cells dominate and the flag must trip.
    CHECK(mallows_to_stable(degenerate, law, 1.5, config).tail_divergence_suspected);
    CHECK_FALSE(mallows_to_stable(degenerate, law, 1.0, config).tail_divergence_suspected);
    CHECK_FALSE(mallows_to_stable(degenerate, law, 2.0, config).tail_divergence_suspected);
}

TEST_CASE("input validation") {
    const EmpiricalSample a({1.0, 2.0});
    CHECK_THROWS_AS(mallows_empirical(a, a, 0.5), domain_error);
    CHECK_THROWS_AS(mallows_empirical(a, a, 0.0), domain_error);
    CHECK_THROWS_AS(EmpiricalSample(std::vector<double>{}), domain_error);
    CHECK_THROWS_AS(EmpiricalSample({1.0, std::nan("")}), domain_error);

    const StableParams law(1.5, 1.0, 0.0);
    MallowsConfig config;
    config.grid_points = 1;
    CHECK_THROWS_AS(mallows_to_stable(a, law, 1.0, config), domain_error);
    CHECK_THROWS_AS(mallows_to_stable(a, law, 0.9, MallowsConfig{}), domain_error);
}
