#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "semibound/bounds_iid.hpp"
#include "semibound/bounds_single.hpp"
#include "semibound/oracle.hpp"

using namespace semibound;
using oracle::convolve_iid;
using oracle::exact_tail;
using oracle::law_from;

TEST_CASE("aggregate tail benchmark") {
    CHECK(aggregate_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 1, 0.9)).value ==
          doctest::Approx(1.0 - 1.0 / 1.01).epsilon(1e-12));
    CHECK(aggregate_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 10, 1.0)).value ==
          doctest::Approx(0.8901098901098902).epsilon(1e-12));
    // one standard deviation of the sum below its mean
    for (int n : {1, 4, 9, 25}) {
        const double q = n * 1.0 - std::sqrt(static_cast<double>(n));
        CHECK(aggregate_tail_lower(SumSpec(MomentSpec(1.0, 1.0), n, q)).value ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK_THROWS_AS(aggregate_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 3, 3.0)),
                    WrongTailDirection);
}

TEST_CASE("aggregate absolute-deviation benchmark") {
    CHECK(aggregate_abs_upper(SumSpec(MomentSpec(0.5, 1.0), 4, 2.0)).value == doctest::Approx(2.0));
    CHECK(aggregate_abs_upper(SumSpec(MomentSpec(-0.1, 1.0), 5, 0.0)).value ==
          doctest::Approx(2.29128784747792).epsilon(1e-12));
    // sixty-day option quote decomposes through this bound
    const double value = aggregate_abs_upper(SumSpec(MomentSpec(0.0194, 0.2752), 10, 2.54)).value;
    CHECK(0.5 * value + 0.5 * (10 * 0.0194 - 2.54) ==
          doctest::Approx(0.07810615057236436).epsilon(1e-12));
}

TEST_CASE("improved tail bound") {
    SUBCASE("reduces to the single-variable bound at N = 1") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(0.05, 2.0);
        for (int trial = 0; trial < 40; ++trial) {
            const MomentSpec spec(u(rng) + 1.0, u(rng));
            const double q = spec.mean() - u(rng);
            CHECK(improved_tail_lower(SumSpec(spec, 1, q)).value ==
                  doctest::Approx(cantelli_tail_lower({spec, q}).value).epsilon(1e-13));
        }
    }
    SUBCASE("pinned value and dominance pair") {
        CHECK(improved_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 10, 1.0)).value ==
              doctest::Approx(0.9973501929495275).epsilon(1e-12));
        const double improved = improved_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 2, 0.9)).value;
        const double aggregate = aggregate_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 2, 0.9)).value;
        CHECK(improved == doctest::Approx(0.41055330624334574).epsilon(1e-12));
        CHECK(aggregate == doctest::Approx(0.3769470404984424).epsilon(1e-12));
        CHECK(improved >= aggregate);
    }
    SUBCASE("exponential decay in N") {
        const MomentSpec spec(1.0, 1.0);
        const double log_factor = std::log(1.0 / 1.81);
        // recovering 1 - bound from the reported value loses precision once
        // the bound sits within an ulp of 1, so stop while it is representable
        for (int n : {1, 3, 7, 14, 20}) {
            const double q = 0.1 * n; // per-variable threshold held at 0.1
            const double bound = improved_tail_lower(SumSpec(spec, n, q)).value;
            CHECK(std::log1p(-bound) == doctest::Approx(n * log_factor).epsilon(2e-11));
        }
        // far beyond that point the bound stays finite and inside [0, 1]
        const double far = improved_tail_lower(SumSpec(spec, 2000, 0.1 * 2000)).value;
        CHECK(far <= 1.0);
        CHECK(far > 1.0 - 1e-12);
    }
}

TEST_CASE("improved tail dominance across a grid") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.05, 1.5);
    std::uniform_int_distribution<int> count(1, 50);
    for (int trial = 0; trial < 400; ++trial) {
        const MomentSpec spec(u(rng) + 0.5, u(rng));
        const int n = count(rng);
        const double q = n * (spec.mean() - u(rng) * 0.4);
        const SumSpec s(spec, n, q);
        CHECK(improved_tail_lower(s).value >= aggregate_tail_lower(s).value - 1e-12);
    }
}

TEST_CASE("improved tail attained: full pattern enumeration up to N = 12") {
    const MomentSpec spec(1.0, 0.8);
    for (int n : {2, 5, 12}) {
        const double q = 0.55 * n;
        const BoundReport r = improved_tail_lower(SumSpec(spec, n, q));
        REQUIRE(r.attaining.has_value());
        const double low = r.attaining->low();
        const double high = r.attaining->high();
        const double beta = r.attaining->beta();

        double below = 0.0; // probability of patterns with sum <= q
        for (int mask = 0; mask < (1 << n); ++mask) {
            double sum = 0.0;
            double prob = 1.0;
            for (int i = 0; i < n; ++i) {
                const bool hi_draw = (mask >> i) & 1;
                sum += hi_draw ? high : low;
                prob *= hi_draw ? (1.0 - beta) : beta;
            }
            if (sum <= q) below += prob;
        }
        // only the all-low pattern stays at the threshold
        CHECK(below == doctest::Approx(std::pow(beta, n)).epsilon(1e-12));
        CHECK(1.0 - below == doctest::Approx(r.value).epsilon(1e-11));

        const auto conv = convolve_iid(law_from(*r.attaining), n);
        CHECK(exact_tail(conv, q, true) == doctest::Approx(r.value).epsilon(1e-11));
    }
}

TEST_CASE("left-tail bound") {
    CHECK_THROWS_AS(improved_left_tail_lower(SumSpec(MomentSpec(1.0, 1.0), 2, 1.0)),
                    WrongTailDirection);
    SUBCASE("mirror symmetry") {
        const double left = improved_left_tail_lower(SumSpec(MomentSpec(-0.3, 0.9), 4, 0.8)).value;
        const double right = improved_tail_lower(SumSpec(MomentSpec(0.3, 0.9), 4, -0.8)).value;
        CHECK(left == doctest::Approx(right).epsilon(1e-13));
    }
    SUBCASE("pinned value at the bundle vignette parameters") {
        const double value =
            improved_left_tail_lower(SumSpec(MomentSpec(0.5, std::sqrt(1.0 / 12.0)), 2, 1.054))
                .value;
        CHECK(value == doctest::Approx(0.017269066360413032).epsilon(1e-12));
    }
    SUBCASE("one-sigma-below case") {
        CHECK(improved_left_tail_lower(SumSpec(MomentSpec(-1.0, 1.0), 3, 0.0)).value ==
              doctest::Approx(0.875).epsilon(1e-13));
    }
    SUBCASE("attained by its law") {
        const SumSpec s(MomentSpec(-0.2, 1.1), 6, 1.5);
        const BoundReport r = improved_left_tail_lower(s);
        REQUIRE(r.attaining.has_value());
        const auto conv = convolve_iid(law_from(*r.attaining), 6);
        CHECK(1.0 - exact_tail(conv, s.threshold_q, false) ==
              doctest::Approx(r.value).epsilon(1e-11));
    }
}

TEST_CASE("percentile envelope") {
    SUBCASE("median of one variable") {
        const auto env = percentile_envelope(MomentSpec(2.0, 0.5), 1, 0.5);
        CHECK(env.lower == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(env.upper == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("pinned four-variable median") {
        const auto env = percentile_envelope(MomentSpec(0.0, 1.0), 4, 0.5);
        CHECK(env.lower == doctest::Approx(-1.7399177681843294).epsilon(1e-12));
        CHECK(env.upper == doctest::Approx(1.7399177681843294).epsilon(1e-12));
    }
    SUBCASE("per-variable width shrinks toward the mean") {
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {1, 10, 100, 1000, 100000}) {
            const auto env = percentile_envelope(MomentSpec(0.0, 1.0), n, 0.5);
            const double width_per_variable = (env.upper - env.lower) / n;
            CHECK(width_per_variable < prev);
            prev = width_per_variable;
        }
        CHECK(prev < 1e-2);
    }
    SUBCASE("extreme levels stay finite") {
        const auto env = percentile_envelope(MomentSpec(0.0, 1.0), 1000000, 1e-12);
        CHECK(std::isfinite(env.lower));
        CHECK(std::isfinite(env.upper));
        CHECK(env.lower <= env.upper);
    }
    SUBCASE("level validation") {
        CHECK_THROWS_AS(percentile_envelope(MomentSpec(0.0, 1.0), 2, 0.0), GammaOutOfRange);
        CHECK_THROWS_AS(percentile_envelope(MomentSpec(0.0, 1.0), 2, 1.0), GammaOutOfRange);
    }
    SUBCASE("consistency with the tail bound at the lower endpoint") {
        for (double gamma : {0.1, 0.5, 0.9}) {
            for (int n : {1, 3, 8, 30}) {
                const auto env = percentile_envelope(MomentSpec(1.0, 0.7), n, gamma);
                // at q just below the lower endpoint the tail bound enforces
                // Pr(sum > q) >= 1 - gamma
                const double q = env.lower - 1e-9 * (1.0 + std::abs(env.lower));
                const double bound = improved_tail_lower(SumSpec(MomentSpec(1.0, 0.7), n, q)).value;
                CHECK(bound >= 1.0 - gamma - 1e-7);
            }
        }
    }
}
