#include "semibound/bounds_iid.hpp"

#include <cmath>

namespace semibound {

SumSpec::SumSpec(MomentSpec spec_, int count_n_, double threshold_q_)
    : spec(spec_), count_n(count_n_), threshold_q(threshold_q_) {
    if (count_n < 1) throw Error("SumSpec: count_n must be at least 1");
    if (!std::isfinite(threshold_q)) throw Error("SumSpec: threshold_q must be finite");
}

BoundReport aggregate_tail_lower(const SumSpec& s) {
    const double n = s.count_n;
    const double d = s.spec.mean() - s.threshold_q / n;
    const double sigma2 = s.spec.variance();
    if (!(n * s.spec.mean() > s.threshold_q))
        throw WrongTailDirection("aggregate_tail_lower: requires N*mean above threshold");
    BoundReport report;
    report.value = 1.0 - sigma2 / (n * d * d + sigma2);
    report.kind = BoundKind::TailLower;
    return report;
}

BoundReport aggregate_abs_upper(const SumSpec& s) {
    const double n = s.count_n;
    const double d = s.spec.mean() - s.threshold_q / n;
    BoundReport report;
    report.value = std::sqrt(n * n * d * d + n * s.spec.variance());
    report.kind = BoundKind::AbsUpper;
    return report;
}

BoundReport improved_tail_lower(const SumSpec& s) {
    const double mu = s.spec.mean();
    const double sigma2 = s.spec.variance();
    const double d = mu - s.threshold_q / s.count_n;
    if (!(d > 0.0))
        throw WrongTailDirection("improved_tail_lower: requires mean above threshold/N");
    const double beta = sigma2 / (d * d + sigma2);
    BoundReport report;
    report.value = -std::expm1(s.count_n * std::log(beta));
    report.kind = BoundKind::TailLower;
    report.attaining = TwoPointDistribution(s.threshold_q / s.count_n, mu + sigma2 / d, beta);
    return report;
}

BoundReport improved_left_tail_lower(const SumSpec& s) {
    const double mu = s.spec.mean();
    const double sigma2 = s.spec.variance();
    const double d = mu - s.threshold_q / s.count_n;
    if (!(d < 0.0))
        throw WrongTailDirection("improved_left_tail_lower: requires mean below threshold/N");
    const double mass_at_q = sigma2 / (d * d + sigma2);
    BoundReport report;
    report.value = -std::expm1(s.count_n * std::log(mass_at_q));
    report.kind = BoundKind::TailLower;
    report.attaining = TwoPointDistribution(mu + sigma2 / d, s.threshold_q / s.count_n,
                                            1.0 - mass_at_q);
    return report;
}

PercentileEnvelope percentile_envelope(const MomentSpec& spec, int count_n, double gamma) {
    if (count_n < 1) throw Error("percentile_envelope: count_n must be at least 1");
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw GammaOutOfRange("percentile_envelope: gamma must lie in (0,1)");
    const double n = count_n;
    const double mu = spec.mean();
    const double sigma = spec.std_dev();

    // gamma^(1/N) drifts toward 1 for large N; expm1/log keep 1 - gamma^(1/N) accurate
    const double g = std::exp(std::log(gamma) / n);
    const double one_minus_g = -std::expm1(std::log(gamma) / n);
    const double h = std::exp(std::log1p(-gamma) / n);
    const double one_minus_h = -std::expm1(std::log1p(-gamma) / n);

    PercentileEnvelope env;
    env.gamma = gamma;
    env.lower = n * mu - n * sigma * std::sqrt(one_minus_g / g);
    env.upper = n * mu + n * sigma * std::sqrt(one_minus_h / h);
    return env;
}

} // namespace semibound
