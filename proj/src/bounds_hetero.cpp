#include "semibound/bounds_hetero.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semibound {

namespace {

double max_sigma(const std::vector<MomentSpec>& specs) {
    double s = 0.0;
    for (const auto& spec : specs) s = std::max(s, spec.std_dev());
    return s;
}

// smaller root of x^2 - R x + sigma^2 = 0, written to avoid cancellation
double slack_low(double range, double sigma) {
    const double disc = std::max(0.0, range * range - 4.0 * sigma * sigma);
    return 2.0 * sigma * sigma / (range + std::sqrt(disc));
}

double slack_high(double range, double sigma) {
    const double disc = std::max(0.0, range * range - 4.0 * sigma * sigma);
    return 0.5 * (range + std::sqrt(disc));
}

} // namespace

std::pair<AllocationResult, BoundReport> equal_range_tail_lower(const HeteroSumSpec& h,
                                                                const NumericConfig& cfg) {
    cfg.validate();
    const std::size_t n = h.specs.size();
    if (n == 0) throw Error("equal_range_tail_lower: needs at least one variable");

    double mean_total = 0.0;
    for (const auto& spec : h.specs) mean_total += spec.mean();
    const double slack_total = mean_total - h.threshold_q;
    if (!(slack_total > 0.0))
        throw WrongTailDirection("equal_range_tail_lower: requires sum of means above threshold");

    const double sig_max = max_sigma(h.specs);
    const double range_lo = 2.0 * sig_max;
    const double range_cap = 1e6 * sig_max;
    std::size_t widest = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (h.specs[i].std_dev() == sig_max) {
            widest = i;
            break;
        }

    // Every variable keeps mean_n - q_n > 0; each sits on one root branch of
    // x^2 - R x + sigma_n^2 = 0. Budgets below the all-small-root capacity use
    // that branch; budgets above the all-large-root floor use the other; in
    // between the widest variable switches branch, which is continuous at
    // R = 2 max sigma.
    std::vector<bool> on_high(n, false);
    auto budget = [&](double range) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sigma = h.specs[i].std_dev();
            total += on_high[i] ? slack_high(range, sigma) : slack_low(range, sigma);
        }
        return total;
    };

    const double cap_all_low = budget(range_lo);
    bool budget_grows; // direction of budget(range) on the chosen branch set
    if (slack_total <= cap_all_low) {
        budget_grows = false;
    } else {
        std::fill(on_high.begin(), on_high.end(), true);
        if (slack_total >= budget(range_lo)) {
            budget_grows = true;
        } else {
            std::fill(on_high.begin(), on_high.end(), false);
            on_high[widest] = true;
            budget_grows = true;
        }
    }

    auto residual = [&](double range) { return budget(range) - slack_total; };
    double lo = range_lo;
    double hi = range_lo;
    const double r0 = residual(range_lo);
    double solved_range;
    if (r0 == 0.0) {
        solved_range = range_lo;
    } else {
        const bool want_positive_at_hi = budget_grows;
        bool bracketed = false;
        double step = std::max(sig_max, 1e-3);
        while (hi < range_cap) {
            hi = std::min(range_cap, hi + step);
            step *= 2.0;
            const double r = residual(hi);
            if ((r > 0.0) == want_positive_at_hi || r == 0.0) {
                bracketed = true;
                break;
            }
            lo = hi;
        }
        if (!bracketed)
            throw Infeasible("equal_range_tail_lower: budget not matched by any range in bracket");
        solved_range = find_root(residual, lo, hi, cfg);
    }

    AllocationResult alloc;
    alloc.common_range = solved_range;
    alloc.q_split.resize(n);
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma = h.specs[i].std_dev();
        const double x = on_high[i] ? slack_high(solved_range, sigma) : slack_low(solved_range, sigma);
        alloc.q_split[i] = h.specs[i].mean() - x;
        product *= sigma * sigma / (x * x + sigma * sigma);
    }
    // pin the split to the exact budget; the correction is at rounding level
    const double drift = std::accumulate(alloc.q_split.begin(), alloc.q_split.end(), 0.0) -
                         h.threshold_q;
    alloc.q_split[widest] -= drift;
    alloc.bound_value = 1.0 - product;

    BoundReport report;
    report.value = alloc.bound_value;
    report.kind = BoundKind::TailLower;
    return {alloc, report};
}

double hetero_loss_objective(const HeteroSumSpec& h, const std::vector<double>& betas) {
    if (betas.size() != h.specs.size())
        throw Error("hetero_loss_objective: one beta per variable required");
    double mean_total = 0.0;
    for (const auto& spec : h.specs) mean_total += spec.mean();
    const double shifted_total = mean_total - h.threshold_q;

    double log_product = 0.0;
    double spread = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double b = betas[i];
        if (!(b > 0.0) || !(b < 1.0))
            throw BetaOutOfRange("hetero_loss_objective: beta must lie in (0,1)");
        log_product += std::log(b);
        spread += h.specs[i].std_dev() * std::sqrt((1.0 - b) / b);
    }
    return shifted_total + std::exp(log_product) * (-shifted_total + spread);
}

HeteroLossResult hetero_loss_upper(const HeteroSumSpec& h, const NumericConfig& cfg) {
    cfg.validate();
    const std::size_t n = h.specs.size();
    if (n == 0) throw Error("hetero_loss_upper: needs at least one variable");

    double mean_total = 0.0;
    for (const auto& spec : h.specs) mean_total += spec.mean();
    const double shifted_total = mean_total - h.threshold_q;
    if (!(shifted_total < 0.0))
        throw WrongTailDirection("hetero_loss_upper: requires threshold above sum of means");

    const double sig_max = max_sigma(h.specs);
    auto betas_at = [&](double range) {
        std::vector<double> betas(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = 2.0 * h.specs[i].std_dev() / range;
            betas[i] = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
        }
        return betas;
    };
    auto objective_at_log = [&](double y) {
        return hetero_loss_objective(h, betas_at(2.0 * sig_max * std::exp(y)));
    };

    const double y_star =
        grid_then_golden_maximize(objective_at_log, 0.0, std::log(1e8), 800, cfg);
    const double range_star = 2.0 * sig_max * std::exp(y_star);
    std::vector<double> betas = betas_at(range_star);

    HeteroLossResult result;
    result.common_range = range_star;
    result.betas = betas;
    result.marginals.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        result.marginals.push_back(make_two_point(h.specs[i], betas[i], cfg));
    result.report.value = hetero_loss_objective(h, betas);
    result.report.kind = BoundKind::LossUpper;
    return result;
}

} // namespace semibound
