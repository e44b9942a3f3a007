#include "semibound/bounds_single.hpp"

#include <cmath>

namespace semibound {

BoundReport cantelli_tail_lower(const SingleBoundInput& input) {
    const double mu = input.spec.mean();
    const double sigma2 = input.spec.variance();
    const double d = mu - input.threshold_q;
    if (!(d > 0.0))
        throw WrongTailDirection("cantelli_tail_lower: requires mean above threshold");
    const double beta = sigma2 / (d * d + sigma2);
    BoundReport report;
    report.value = 1.0 - beta;
    report.kind = BoundKind::TailLower;
    report.attaining = TwoPointDistribution(input.threshold_q, mu + sigma2 / d, beta);
    return report;
}

BoundReport cantelli_left_tail_lower(const SingleBoundInput& input) {
    const double mu = input.spec.mean();
    const double sigma2 = input.spec.variance();
    const double d = mu - input.threshold_q;
    if (!(d < 0.0))
        throw WrongTailDirection("cantelli_left_tail_lower: requires mean below threshold");
    const double mass_at_q = sigma2 / (d * d + sigma2);
    BoundReport report;
    report.value = 1.0 - mass_at_q;
    report.kind = BoundKind::TailLower;
    // atom at q carries the complement mass; the other atom sits below the mean
    report.attaining = TwoPointDistribution(mu + sigma2 / d, input.threshold_q, 1.0 - mass_at_q);
    return report;
}

BoundReport scarf_abs_upper(const SingleBoundInput& input) {
    const double m = input.spec.mean() - input.threshold_q;
    const double lambda = std::sqrt(m * m + input.spec.variance());
    BoundReport report;
    report.value = lambda;
    report.kind = BoundKind::AbsUpper;
    report.attaining = TwoPointDistribution(input.threshold_q - lambda,
                                            input.threshold_q + lambda,
                                            0.5 - m / (2.0 * lambda));
    return report;
}

BoundReport tighter_scarf_loss_upper(const SingleBoundInput& input, double beta,
                                     const NumericConfig& cfg) {
    const double m = input.spec.mean() - input.threshold_q;
    const MomentSpec shifted(m, input.spec.std_dev());
    const TwoPointDistribution law = make_two_point(shifted, beta, cfg);
    if (!(law.low() <= 0.0 && 0.0 <= law.high()))
        throw InfeasibleBeta("tighter_scarf_loss_upper: two-point law does not straddle zero");
    BoundReport report;
    report.value = m * (1.0 - beta) + input.spec.std_dev() * std::sqrt(beta - beta * beta);
    report.kind = BoundKind::LossUpper;
    report.attaining = law;
    return report;
}

BoundReport scarf_expected_loss_upper(const SingleBoundInput& input) {
    const double m = input.spec.mean() - input.threshold_q;
    BoundReport report;
    report.value = 0.5 * (m + std::sqrt(m * m + input.spec.variance()));
    report.kind = BoundKind::LossUpper;
    return report;
}

double scarf_optimal_beta(const SingleBoundInput& input) {
    const double m = input.spec.mean() - input.threshold_q;
    return 0.5 - m / (2.0 * std::sqrt(m * m + input.spec.variance()));
}

} // namespace semibound
