#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "semibound/moments.hpp"

using namespace semibound;

TEST_CASE("moment spec rejects degenerate inputs") {
    CHECK_THROWS_AS(MomentSpec(0.0, 0.0), NonPositiveVariance);
    CHECK_THROWS_AS(MomentSpec(0.0, -1.0), NonPositiveVariance);
    CHECK_THROWS_AS(MomentSpec(std::nan(""), 1.0), Error);
    CHECK_THROWS_AS(MomentSpec(1.0, std::numeric_limits<double>::infinity()), Error);
    const MomentSpec spec(2.5, 1.0);
    CHECK(spec.variance() == doctest::Approx(1.0));
}

TEST_CASE("two-point construction at pinned betas") {
    SUBCASE("symmetric") {
        const auto d = make_two_point(MomentSpec(0.0, 1.0), 0.5);
        CHECK(d.low() == doctest::Approx(-1.0));
        CHECK(d.high() == doctest::Approx(1.0));
    }
    SUBCASE("beta three quarters") {
        const auto d = make_two_point(MomentSpec(0.0, 1.0), 0.75);
        CHECK(d.low() == doctest::Approx(-std::sqrt(1.0 / 3.0)).epsilon(1e-12));
        CHECK(d.high() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }
    SUBCASE("moments recomputed") {
        const auto d = make_two_point(MomentSpec(2.5, 1.0), 0.8);
        CHECK(d.low() == doctest::Approx(2.0));
        CHECK(d.high() == doctest::Approx(4.5));
        CHECK(d.mean() == doctest::Approx(2.5).epsilon(1e-13));
        CHECK(d.variance() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("beta clamp enforced") {
    const MomentSpec spec(0.0, 1.0);
    CHECK_THROWS_AS(make_two_point(spec, 0.0), BetaOutOfRange);
    CHECK_THROWS_AS(make_two_point(spec, 1.0), BetaOutOfRange);
    CHECK_THROWS_AS(make_two_point(spec, 1e-13), BetaOutOfRange);
    NumericConfig loose;
    loose.probability_clamp = 1e-6;
    CHECK_THROWS_AS(make_two_point(spec, 1e-7, loose), BetaOutOfRange);
    CHECK_NOTHROW(make_two_point(spec, 1e-5, loose));
}

TEST_CASE("range closed forms") {
    CHECK(range_of(make_two_point(MomentSpec(0.0, 1.0), 0.5)) == doctest::Approx(2.0));
    CHECK(range_of(make_two_point(MomentSpec(0.0, 1.0), 0.75)) ==
          doctest::Approx(std::sqrt(3.0) + std::sqrt(1.0 / 3.0)).epsilon(1e-12));

    // extreme law for mean 1, sigma 1 at per-variable threshold 0.9 has
    // range (d^2 + sigma^2)/d = 10.1 with d = 0.1
    const double d = 0.1;
    const double beta = 1.0 / (d * d + 1.0);
    CHECK(range_of(make_two_point(MomentSpec(1.0, 1.0), beta)) ==
          doctest::Approx(10.1).epsilon(1e-12));
}

TEST_CASE("moment round-trip and monotonicity across a grid") {
    std::mt19937 rng(20240511);
    std::uniform_real_distribution<double> mean_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> sd_dist(0.05, 4.0);
    const NumericConfig cfg;

    for (int trial = 0; trial < 200; ++trial) {
        const MomentSpec spec(mean_dist(rng), sd_dist(rng));
        double prev_low = -std::numeric_limits<double>::infinity();
        double prev_high = -std::numeric_limits<double>::infinity();
        for (double beta = 0.001; beta < 0.9995; beta += 0.02) {
            const auto d = make_two_point(spec, beta);
            CHECK(std::abs(d.mean() - spec.mean()) <= cfg.abs_tol * (1.0 + std::abs(spec.mean())));
            CHECK(std::abs(d.variance() - spec.variance()) <= cfg.rel_tol * spec.variance());
            // algebraic identity for the support width
            CHECK(range_of(d) ==
                  doctest::Approx(spec.std_dev() / std::sqrt(beta * (1.0 - beta))).epsilon(1e-12));
            CHECK(d.low() > prev_low);
            CHECK(d.high() > prev_high);
            prev_low = d.low();
            prev_high = d.high();
        }
    }
}

TEST_CASE("shifted spec recentres the mean") {
    const ShiftedSpec shifted(MomentSpec(2.5, 1.0), 5.0, 4);
    CHECK(shifted.shifted_mean() == doctest::Approx(2.5 - 1.25));
    CHECK_THROWS_AS(ShiftedSpec(MomentSpec(1.0, 1.0), 1.0, 0), Error);
}

TEST_CASE("numeric config validation") {
    NumericConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.probability_clamp = 1e-2;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = NumericConfig{};
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}
