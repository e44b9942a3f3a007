#pragma once

#include <array>
#include <vector>

#include "semibound/bounds_hetero.hpp"
#include "semibound/moments.hpp"

namespace semibound {

enum class BundleMethod { Improved, Aggregate, UnequalMoments };

struct BundleSolution {
    double price_q = 0.0;
    double worst_case_profit = 0.0;
    double safety_factor_t = 0.0; // price = N (mean - t sigma) for the identical methods
    double common_range = 0.0;    // set by the unequal-moments solver
    BundleMethod method = BundleMethod::Improved;
};

// Posted price maximizing q * (worst-case Pr(sum of valuations > q)) under
// independence. The safety factor solves
//   1 - 2Nt^2 - (t^2+1)^N + t^2 + 2Nt mu/sigma - t^2 (t^2+1)^N = 0
// on (0, mu/sigma); price = N(mean - t sigma),
// profit = price (1 - (t^2+1)^-N).
BundleSolution bundle_price_improved(const MomentSpec& spec, int count_n,
                                     const NumericConfig& cfg = {});

// Independence-blind counterpart: t^3 + 3t = 2 sqrt(N) mu / sigma,
// price = N mean - t sqrt(N) sigma, profit evaluated under the aggregate
// tail bound.
BundleSolution bundle_price_aggregate(const MomentSpec& spec, int count_n,
                                      const NumericConfig& cfg = {});

// Non-identical moments: maximize over the common range R
//   (sum_n q_n(R)) * (1 - prod_n sigma_n^2 / ((mean_n - q_n)^2 + sigma_n^2)),
// with q_n = mean_n - x_n and x_n a root of x^2 - R x + sigma_n^2 = 0. Both
// uniform root branches are swept; the better maximum is returned.
BundleSolution bundle_price_unequal(const std::vector<MomentSpec>& specs,
                                    const NumericConfig& cfg = {});

struct MixedBundleOutcome {
    double mixed_profit = 0.0;
    double pure_profit = 0.0;
    // probability that some item clears its posted price while the bundle
    // does not; zero under the equal-range law whenever component prices sit
    // above the per-item allocation
    double item_only_probability = 0.0;
};

// Exact enumeration of customer choice (bundle at bundle_price, single item n
// at component_prices[n], or walk away) under the equal-range extreme joint
// law built at the bundle price. Purchases require strictly positive surplus.
MixedBundleOutcome mixed_bundle_check(const std::vector<MomentSpec>& specs,
                                      const std::vector<double>& component_prices,
                                      double bundle_price, const NumericConfig& cfg = {});

struct InventorySolution {
    double order_q = 0.0;
    double worst_case_cost = 0.0;
    double adverse_beta = 0.0;
    double underage_b = 0.0;
    double overage_h = 0.0;
};

// Central stock for N iid retailer demands with underage cost b and overage
// cost h, b/(b+h) >= 1/2. The adverse distribution has
// beta* = (b/(b+h))^(1/N); order and cost follow in closed form.
InventorySolution inventory_solve(const MomentSpec& spec, int count_n, double b, double h);

// Independence-blind counterpart: q = N mean + (sqrt(N) sigma / 2)
// (sqrt(b/h) - sqrt(h/b)), cost sigma sqrt(N b h).
InventorySolution inventory_solve_aggregate(const MomentSpec& spec, int count_n, double b,
                                            double h);

struct OptionQuote {
    double strike = 0.0;
    int days_n = 0;
    double start_price = 0.0;
    MomentSpec daily_spec;
    double aggregation = 0.0;
    double improved = 0.0;
    double normal_prior = 0.0;
    double discount_rate = 0.0;
};

// European call quote from daily price-change moments. The effective
// threshold is strike - start_price; all three prices are discounted by
// exp(-rate * days).
OptionQuote option_quote(const MomentSpec& daily, int days_n, double start_price, double strike,
                         double discount_rate);

// Upper bound on E(X - q)^+ for X with the given moments: the in-the-money
// branch mean - q mean^2/(mean^2 + sigma^2) applies when
// q <= (mean^2 + sigma^2)/(2 mean) and mean > 0, otherwise
// (mean - q + sqrt((q-mean)^2 + sigma^2))/2.
double call_upper_bound_branches(double mean, double std_dev, double q);

// Worst-case joint law of (spot price, demand) for E[P (D-q)^+]: three
// points with |demand - q| = k_ratio * price at every point.
struct ThreePointJoint {
    struct Point {
        double spot_price;
        double demand;
        double prob;
    };
    std::array<Point, 3> points;
    double k_ratio = 0.0;
};

// Upper bound on E[P (D - q)^+] for correlated price and demand:
//   ((mu_s mu_d + rho s_s s_d - q mu_s) + sqrt(mu_s^2+s_s^2) sqrt((mu_d-q)^2+s_d^2)) / 2.
BoundReport random_price_loss_upper(const MomentSpec& price_spec, const MomentSpec& demand_spec,
                                    double rho, double q);

// The attaining three-point joint law for the bound above.
ThreePointJoint random_price_worst_case(const MomentSpec& price_spec,
                                        const MomentSpec& demand_spec, double rho, double q);

const char* to_string(BundleMethod method);

} // namespace semibound
