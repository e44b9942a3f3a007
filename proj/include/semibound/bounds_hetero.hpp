#pragma once

#include <utility>
#include <vector>

#include "semibound/moments.hpp"

namespace semibound {

// Independent, non-identical variables against one total threshold.
struct HeteroSumSpec {
    std::vector<MomentSpec> specs;
    double threshold_q;
};

// Budget split with the equal-range certificate: every per-variable range
// ((mean_n - q_n)^2 + sigma_n^2) / (mean_n - q_n) equals common_range.
struct AllocationResult {
    std::vector<double> q_split;
    double common_range;
    double bound_value;
};

// Lower bound on Pr(sum > q) for sum of means > q. Solves a one-dimensional
// root find on the common range R so that the induced per-variable splits
// exhaust the budget, then evaluates 1 - prod sigma_n^2/((mean_n-q_n)^2+sigma_n^2).
std::pair<AllocationResult, BoundReport> equal_range_tail_lower(const HeteroSumSpec& h,
                                                                const NumericConfig& cfg = {});

struct HeteroLossResult {
    BoundReport report;
    double common_range;
    std::vector<double> betas;
    // attaining marginals stated on the raw (unshifted) moments
    std::vector<TwoPointDistribution> marginals;
};

// Upper bound on E(sum - q)^+ for sum of means < q: maximizes
//   S + (prod beta_n) * (-S + sum sigma_n sqrt((1-beta_n)/beta_n)),
// S = sum of means - q, over the common-range family
// sigma_n / sqrt(beta_n (1-beta_n)) = R.
HeteroLossResult hetero_loss_upper(const HeteroSumSpec& h, const NumericConfig& cfg = {});

// The objective above at an arbitrary beta tuple; exposed so searches can
// certify the solved optimum against random feasible tuples.
double hetero_loss_objective(const HeteroSumSpec& h, const std::vector<double>& betas);

} // namespace semibound
