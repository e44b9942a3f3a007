#pragma once

#include <optional>

#include "semibound/errors.hpp"
#include "semibound/numeric.hpp"

namespace semibound {

// Mean/standard-deviation description of one random variable; the only
// distributional knowledge the library ever assumes.
class MomentSpec {
public:
    MomentSpec(double mean, double std_dev);

    double mean() const noexcept { return mean_; }
    double std_dev() const noexcept { return std_dev_; }
    double variance() const noexcept { return std_dev_ * std_dev_; }

private:
    double mean_;
    double std_dev_;
};

// A variable recentred by its share of the threshold budget: the working
// mean for every expected-loss computation is mean - threshold_q / count_n.
struct ShiftedSpec {
    ShiftedSpec(MomentSpec spec, double threshold_q, int count_n);

    MomentSpec spec;
    double threshold_q;
    int count_n;

    double shifted_mean() const noexcept { return spec.mean() - threshold_q / count_n; }
};

// Extreme marginal law {low w.p. beta, high w.p. 1-beta}.
class TwoPointDistribution {
public:
    TwoPointDistribution(double low, double high, double beta);

    double low() const noexcept { return low_; }
    double high() const noexcept { return high_; }
    double beta() const noexcept { return beta_; }

    double mean() const noexcept { return beta_ * low_ + (1.0 - beta_) * high_; }
    double variance() const noexcept {
        const double d = high_ - low_;
        return beta_ * (1.0 - beta_) * d * d;
    }
    double range() const noexcept { return high_ - low_; }

private:
    double low_;
    double high_;
    double beta_;
};

enum class BoundKind { TailLower, LossUpper, AbsUpper, PercentileEnvelope };

struct BoundReport {
    double value = 0.0;
    BoundKind kind = BoundKind::TailLower;
    std::optional<TwoPointDistribution> attaining;
};

// Unique two-point law with the spec's mean and variance and Pr(low) = beta:
//   low  = mean - std_dev * sqrt((1-beta)/beta)
//   high = mean + std_dev * sqrt(beta/(1-beta))
TwoPointDistribution make_two_point(const MomentSpec& spec, double beta,
                                    const NumericConfig& cfg = {});

// Support width high - low = std_dev / sqrt(beta (1-beta)).
double range_of(const TwoPointDistribution& dist);

const char* to_string(BoundKind kind);

} // namespace semibound
