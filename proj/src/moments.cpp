#include "semibound/moments.hpp"

#include <cmath>

namespace semibound {

MomentSpec::MomentSpec(double mean, double std_dev) : mean_(mean), std_dev_(std_dev) {
    if (!std::isfinite(mean) || !std::isfinite(std_dev))
        throw Error("MomentSpec: mean and std_dev must be finite");
    if (!(std_dev > 0.0))
        throw NonPositiveVariance("MomentSpec: std_dev must be strictly positive");
}

ShiftedSpec::ShiftedSpec(MomentSpec spec_, double threshold_q_, int count_n_)
    : spec(spec_), threshold_q(threshold_q_), count_n(count_n_) {
    if (count_n < 1) throw Error("ShiftedSpec: count_n must be at least 1");
    if (!std::isfinite(threshold_q)) throw Error("ShiftedSpec: threshold_q must be finite");
}

TwoPointDistribution::TwoPointDistribution(double low, double high, double beta)
    : low_(low), high_(high), beta_(beta) {
    if (!std::isfinite(low) || !std::isfinite(high))
        throw Error("TwoPointDistribution: support must be finite");
    if (!(low < high))
        throw Error("TwoPointDistribution: low must be below high");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw BetaOutOfRange("TwoPointDistribution: beta must lie in (0,1)");
}

TwoPointDistribution make_two_point(const MomentSpec& spec, double beta,
                                    const NumericConfig& cfg) {
    cfg.validate();
    if (!(beta > cfg.probability_clamp) || !(beta < 1.0 - cfg.probability_clamp))
        throw BetaOutOfRange("make_two_point: beta too close to {0,1}");
    const double mu = spec.mean();
    const double sigma = spec.std_dev();
    const double low = mu - sigma * std::sqrt((1.0 - beta) / beta);
    const double high = mu + sigma * std::sqrt(beta / (1.0 - beta));
    return TwoPointDistribution(low, high, beta);
}

double range_of(const TwoPointDistribution& dist) { return dist.range(); }

const char* to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::TailLower: return "TailLower";
    case BoundKind::LossUpper: return "LossUpper";
    case BoundKind::AbsUpper: return "AbsUpper";
    case BoundKind::PercentileEnvelope: return "PercentileEnvelope";
    }
    return "Unknown";
}

} // namespace semibound
