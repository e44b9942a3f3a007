#include "semibound/expected_loss.hpp"

#include <algorithm>
#include <cmath>

namespace semibound {

BinomialConvolution binomial_convolution(const TwoPointDistribution& marginal, int count_n) {
    if (count_n < 1) throw Error("binomial_convolution: count_n must be at least 1");
    BinomialConvolution conv{marginal, count_n, {}};
    conv.atoms.reserve(count_n + 1);
    const double beta = marginal.beta();
    for (int t = 0; t <= count_n; ++t) {
        const double value = (count_n - t) * marginal.low() + t * marginal.high();
        conv.atoms.push_back({value, binomial_pmf(count_n, t, beta)});
    }
    return conv;
}

ThresholdSequence thresholds(const ShiftedSpec& shifted) {
    const int n = shifted.count_n;
    const double m = shifted.shifted_mean();
    const double sigma = shifted.spec.std_dev();

    ThresholdSequence seq;
    seq.deltas.assign(n + 1, 0.0);
    seq.deltas[0] = 1.0;
    seq.deltas[n] = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        // atom k of the convolution is zero when sqrt((1-d)/d) solves
        // (N-k) sigma u^2 - N m u - k sigma = 0; the positive root applies
        const double a = (n - k) * sigma;
        const double b = n * m;
        const double disc = b * b + 4.0 * a * (k * sigma);
        const double u = (b + std::sqrt(disc)) / (2.0 * a);
        seq.deltas[k] = 1.0 / (1.0 + u * u);
    }
    return seq;
}

namespace {

// index k such that beta lies in [deltas[k], deltas[k-1]]
int piece_index(const ThresholdSequence& seq, double beta) {
    const int n = static_cast<int>(seq.deltas.size()) - 1;
    for (int k = 1; k <= n; ++k) {
        if (beta >= seq.deltas[k]) return k;
    }
    return n;
}

double binomial_upper_tail(int n, int k_from, double beta) {
    CompensatedSum acc;
    for (int t = k_from; t <= n; ++t) acc.add(binomial_pmf(n, t, beta));
    return acc.value();
}

double spike_term(int n, int k, double beta, double sigma) {
    // N sigma sqrt(beta(1-beta)) C(N-1,k-1) (1-beta)^(k-1) beta^(N-k)
    if (n <= 50) {
        return n * sigma * std::sqrt(beta * (1.0 - beta)) * choose(n - 1, k - 1) *
               std::pow(1.0 - beta, k - 1) * std::pow(beta, n - k);
    }
    const double lg = std::log(n * sigma) + 0.5 * (std::log(beta) + std::log1p(-beta)) +
                      log_choose(n - 1, k - 1) + (k - 1) * std::log1p(-beta) +
                      (n - k) * std::log(beta);
    return std::exp(lg);
}

} // namespace

double loss_objective(const ShiftedSpec& shifted, double beta, const NumericConfig& cfg) {
    cfg.validate();
    if (!(beta > cfg.probability_clamp) || !(beta < 1.0 - cfg.probability_clamp))
        throw BetaOutOfRange("loss_objective: beta too close to {0,1}");

    const int n = shifted.count_n;
    const double m = shifted.shifted_mean();
    const double sigma = shifted.spec.std_dev();
    const ThresholdSequence seq = thresholds(shifted);
    const int k = piece_index(seq, beta);

    return n * m * binomial_upper_tail(n, k, beta) + spike_term(n, k, beta, sigma);
}

std::pair<double, double> loss_bound_pieces(const ShiftedSpec& shifted, double beta) {
    const int n = shifted.count_n;
    const double m = shifted.shifted_mean();
    const double sigma = shifted.spec.std_dev();
    const double root = std::sqrt(beta * (1.0 - beta));
    const double z1 = n * m * -std::expm1(n * std::log(beta)) +
                      n * sigma * root * std::pow(beta, n - 1);
    const double zn = n * m * std::exp(n * std::log1p(-beta)) +
                      n * sigma * root * std::pow(1.0 - beta, n - 1);
    return {z1, zn};
}

double beta_hat_one(double shifted_mean, double sigma, int count_n) {
    const double n = count_n;
    const double s2 = sigma * sigma;
    const double m = shifted_mean;
    const double root = std::sqrt((2.0 * n - 1.0) * s2 + n * n * m * m);
    return ((2.0 * n - 1.0) * s2 + n * m * m - m * root) / (2.0 * n * (s2 + m * m));
}

double beta_hat_two(double shifted_mean, double sigma, int count_n) {
    const double n = count_n;
    const double s2 = sigma * sigma;
    const double m = shifted_mean;
    const double root = std::sqrt((2.0 * n - 1.0) * s2 + n * n * m * m);
    return (s2 + n * m * m - m * root) / (2.0 * n * (s2 + m * m));
}

BoundReport optimal_loss_bound(const ShiftedSpec& shifted) {
    const int n = shifted.count_n;
    const double m = shifted.shifted_mean();
    const double sigma = shifted.spec.std_dev();
    const MomentSpec shifted_moments(m, sigma);

    BoundReport report;
    report.kind = BoundKind::LossUpper;
    if (m <= 0.0) {
        // non-unique at m = 0; the high-beta optimizer is returned there
        const double b1 = beta_hat_one(m, sigma, n);
        const double bn = std::exp(n * std::log(b1));
        report.value = n * m + n * bn * (-m + sigma * std::sqrt((1.0 - b1) / b1));
        report.attaining = make_two_point(shifted_moments, b1);
    } else {
        const double b2 = beta_hat_two(m, sigma, n);
        const double cn = std::exp(n * std::log1p(-b2));
        report.value = n * cn * (m + sigma * std::sqrt(b2 / (1.0 - b2)));
        report.attaining = make_two_point(shifted_moments, b2);
    }
    return report;
}

BoundReport abs_sum_upper(const SumSpec& s) {
    const ShiftedSpec shifted(s.spec, s.threshold_q, s.count_n);
    const BoundReport loss = optimal_loss_bound(shifted);
    BoundReport report;
    report.value = 2.0 * loss.value - s.count_n * shifted.shifted_mean();
    report.kind = BoundKind::AbsUpper;
    report.attaining = loss.attaining;
    return report;
}

} // namespace semibound
