#pragma once

#include "semibound/moments.hpp"

namespace semibound {

// One random variable against one threshold.
struct SingleBoundInput {
    MomentSpec spec;
    double threshold_q;
};

// One-sided Chebyshev lower bound on Pr(X > q) for mean > q:
//   1 - sigma^2 / ((mean-q)^2 + sigma^2),
// attained by the two-point law with an atom exactly at q.
BoundReport cantelli_tail_lower(const SingleBoundInput& input);

// Mirror direction: lower bound on Pr(X < q) for mean < q.
BoundReport cantelli_left_tail_lower(const SingleBoundInput& input);

// Upper bound on E|X - q|: sqrt((mean-q)^2 + sigma^2), attained by a
// symmetric-support two-point law centred on q.
BoundReport scarf_abs_upper(const SingleBoundInput& input);

// Upper bound on E(X - q)^+ with the extra constraint Pr(X - q <= 0) = beta:
//   (mean-q)(1-beta) + sigma sqrt(beta - beta^2).
// Requires the induced two-point law to straddle the threshold.
BoundReport tighter_scarf_loss_upper(const SingleBoundInput& input, double beta,
                                     const NumericConfig& cfg = {});

// Classical upper bound on E(X - q)^+: (mean-q + sqrt((mean-q)^2 + sigma^2)) / 2.
BoundReport scarf_expected_loss_upper(const SingleBoundInput& input);

// The beta at which the constrained bound recovers the classical one.
double scarf_optimal_beta(const SingleBoundInput& input);

} // namespace semibound
