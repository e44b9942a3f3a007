#pragma once

#include "semibound/moments.hpp"

namespace semibound {

// Sum of count_n iid variables against a total threshold.
struct SumSpec {
    SumSpec(MomentSpec spec_, int count_n_, double threshold_q_);

    MomentSpec spec;
    int count_n;
    double threshold_q;
};

struct PercentileEnvelope {
    double gamma;
    double lower;
    double upper;
};

// Independence-blind benchmark: treat the sum as one variable with moments
// (N mu, N sigma^2). Lower bound on Pr(sum > q); no iid law attains it.
BoundReport aggregate_tail_lower(const SumSpec& s);

// Independence-blind upper bound on E|sum - q|.
BoundReport aggregate_abs_upper(const SumSpec& s);

// Independence-aware lower bound on Pr(sum > q) for mean > q/N:
//   1 - (sigma^2 / ((mean - q/N)^2 + sigma^2))^N,
// attained by the iid two-point law with an atom at q/N.
BoundReport improved_tail_lower(const SumSpec& s);

// Mirror for mean < q/N: lower bound on Pr(sum < q) of the same form.
BoundReport improved_left_tail_lower(const SumSpec& s);

// Envelope for the gamma-percentile of the N-fold convolution:
//   N mu - N sigma sqrt((1-g)/g) <= q_N(gamma) <= N mu + N sigma sqrt((1-h)/h)
// with g = gamma^(1/N) and h = (1-gamma)^(1/N).
PercentileEnvelope percentile_envelope(const MomentSpec& spec, int count_n, double gamma);

} // namespace semibound
