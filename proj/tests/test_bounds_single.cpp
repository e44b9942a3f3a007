#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "semibound/bounds_single.hpp"
#include "semibound/oracle.hpp"

using namespace semibound;
using oracle::exact_expected_loss;
using oracle::exact_tail;
using oracle::law_from;

TEST_CASE("one-sided tail bound values") {
    SUBCASE("pinned points") {
        CHECK(cantelli_tail_lower({MomentSpec(1.0, 1.0), 0.9}).value ==
              doctest::Approx(1.0 - 1.0 / 1.01).epsilon(1e-12));
        CHECK(cantelli_tail_lower({MomentSpec(1.0, 1.0), 0.0}).value == doctest::Approx(0.5));

        const BoundReport r = cantelli_tail_lower({MomentSpec(2.5, 1.0), 1.346});
        CHECK(r.value == doctest::Approx(0.5711315).epsilon(1e-6));
        CHECK(1.346 * r.value == doctest::Approx(0.769).epsilon(1e-3));
    }
    SUBCASE("direction errors") {
        CHECK_THROWS_AS(cantelli_tail_lower({MomentSpec(1.0, 1.0), 1.0}), WrongTailDirection);
        CHECK_THROWS_AS(cantelli_tail_lower({MomentSpec(1.0, 1.0), 2.0}), WrongTailDirection);
        CHECK_THROWS_AS(cantelli_left_tail_lower({MomentSpec(1.0, 1.0), 0.5}),
                        WrongTailDirection);
    }
    SUBCASE("left tail mirrors right tail") {
        const double right = cantelli_tail_lower({MomentSpec(1.0, 1.0), 0.4}).value;
        const double left = cantelli_left_tail_lower({MomentSpec(-1.0, 1.0), -0.4}).value;
        CHECK(left == doctest::Approx(right).epsilon(1e-13));
    }
}

TEST_CASE("tail bound attained by its two-point law") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const MomentSpec spec(1.0 + u(rng), u(rng));
        const double q = spec.mean() - u(rng);
        const BoundReport r = cantelli_tail_lower({spec, q});
        REQUIRE(r.attaining.has_value());
        CHECK(r.attaining->mean() == doctest::Approx(spec.mean()).epsilon(1e-11));
        CHECK(r.attaining->variance() == doctest::Approx(spec.variance()).epsilon(1e-10));
        CHECK(exact_tail(law_from(*r.attaining), q, true) ==
              doctest::Approx(r.value).epsilon(1e-12));
    }
}

TEST_CASE("absolute-deviation bound") {
    SUBCASE("pinned points") {
        const BoundReport symmetric = scarf_abs_upper({MomentSpec(1.0, 1.0), 1.0});
        CHECK(symmetric.value == doctest::Approx(1.0));
        REQUIRE(symmetric.attaining.has_value());
        CHECK(symmetric.attaining->beta() == doctest::Approx(0.5));

        CHECK(scarf_abs_upper({MomentSpec(0.0, 1.0), -0.1}).value ==
              doctest::Approx(std::sqrt(1.01)).epsilon(1e-12));
        CHECK(scarf_abs_upper({MomentSpec(2.5, 1.0), 1.346}).value ==
              doctest::Approx(std::sqrt(1.154 * 1.154 + 1.0)).epsilon(1e-12));
    }
    SUBCASE("symmetry in the signed distance") {
        for (double d : {0.1, 0.7, 2.3}) {
            const double plus = scarf_abs_upper({MomentSpec(d, 1.3), 0.0}).value;
            const double minus = scarf_abs_upper({MomentSpec(-d, 1.3), 0.0}).value;
            CHECK(plus == doctest::Approx(minus).epsilon(1e-13));
        }
    }
    SUBCASE("attained exactly by the returned law") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            const MomentSpec spec(u(rng), 0.2 + std::abs(u(rng)));
            const double q = u(rng);
            const BoundReport r = scarf_abs_upper({spec, q});
            REQUIRE(r.attaining.has_value());
            CHECK(r.attaining->mean() == doctest::Approx(spec.mean()).epsilon(1e-10));
            CHECK(r.attaining->variance() == doctest::Approx(spec.variance()).epsilon(1e-10));
            const auto law = law_from(*r.attaining);
            double abs_dev = 0.0;
            for (const auto& a : law.atoms) abs_dev += std::abs(a.value - q) * a.prob;
            CHECK(abs_dev == doctest::Approx(r.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("probability-constrained loss bound") {
    SUBCASE("pinned points") {
        CHECK(tighter_scarf_loss_upper({MomentSpec(0.0, 1.0), 0.0}, 0.5).value ==
              doctest::Approx(0.5));
        CHECK(tighter_scarf_loss_upper({MomentSpec(-0.1, 1.0), 0.0}, 0.6).value ==
              doctest::Approx(-0.04 + std::sqrt(0.24)).epsilon(1e-12));
    }
    SUBCASE("infeasible beta rejected rather than clamped") {
        // mean well below the threshold: high beta forces both atoms negative
        CHECK_THROWS_AS(tighter_scarf_loss_upper({MomentSpec(-3.0, 0.5), 0.0}, 0.001),
                        InfeasibleBeta);
        // mean well above: low beta forces both atoms positive
        CHECK_THROWS_AS(tighter_scarf_loss_upper({MomentSpec(3.0, 0.5), 0.0}, 0.999),
                        InfeasibleBeta);
    }
    SUBCASE("attainment by two-atom enumeration") {
        const SingleBoundInput input{MomentSpec(0.4, 1.2), 0.9};
        for (double beta : {0.2, 0.5, 0.8}) {
            const BoundReport r = tighter_scarf_loss_upper(input, beta);
            REQUIRE(r.attaining.has_value());
            CHECK(exact_expected_loss(law_from(*r.attaining), 0.0) ==
                  doctest::Approx(r.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("classical loss bound and its recovery by optimizing beta") {
    CHECK(scarf_expected_loss_upper({MomentSpec(1.0, 1.0), 1.0}).value == doctest::Approx(0.5));
    CHECK(scarf_expected_loss_upper({MomentSpec(2.5, 1.0), 3.25}).value ==
          doctest::Approx(0.25).epsilon(1e-13));

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 60; ++trial) {
        const MomentSpec spec(u(rng), 0.3 + std::abs(u(rng)));
        const double q = u(rng);
        const SingleBoundInput input{spec, q};
        const double classical = scarf_expected_loss_upper(input).value;
        const double beta_star = scarf_optimal_beta(input);
        CHECK(beta_star > 0.0);
        CHECK(beta_star < 1.0);
        CHECK(tighter_scarf_loss_upper(input, beta_star).value ==
              doctest::Approx(classical).epsilon(1e-12));

        // dominance at every feasible beta
        for (double beta = 0.02; beta < 1.0; beta += 0.02) {
            try {
                const double constrained = tighter_scarf_loss_upper(input, beta).value;
                CHECK(constrained <= classical + 1e-12);
            } catch (const InfeasibleBeta&) {
            }
        }
    }
}
