#include "semibound/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semibound/bounds_iid.hpp"
#include "semibound/expected_loss.hpp"

namespace semibound {

namespace {

// profit of a bundle priced at N(mean - t sigma) under the independence-aware
// worst case
double bundle_profit_improved(const MomentSpec& spec, int count_n, double t) {
    const double price = count_n * (spec.mean() - t * spec.std_dev());
    const double keep = -std::expm1(-count_n * std::log1p(t * t));
    return price * keep;
}

} // namespace

BundleSolution bundle_price_improved(const MomentSpec& spec, int count_n,
                                     const NumericConfig& cfg) {
    cfg.validate();
    if (count_n < 1) throw Error("bundle_price_improved: count_n must be at least 1");
    if (!(spec.mean() > 0.0)) throw Error("bundle_price_improved: requires positive mean");

    const double ratio = spec.mean() / spec.std_dev();
    auto stationarity = [&](double t) {
        // 1 + (1-2N) t^2 + 2N t mu/sigma - (1+t^2)^(N+1)
        return 1.0 + (1.0 - 2.0 * count_n) * t * t + 2.0 * count_n * t * ratio -
               std::exp((count_n + 1.0) * std::log1p(t * t));
    };

    const double lo = cfg.probability_clamp;
    const double hi = ratio - cfg.probability_clamp;
    if (!(hi > lo)) throw NoRootInBracket("bundle_price_improved: empty safety-factor bracket");

    // the stationarity polynomial is not proven single-rooted; scan, refine
    // every sign change, keep the most profitable root
    const int cells = 1000;
    double best_t = std::numeric_limits<double>::quiet_NaN();
    double best_profit = -std::numeric_limits<double>::infinity();
    double prev_t = lo;
    double prev_f = stationarity(lo);
    for (int i = 1; i <= cells; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / cells;
        const double f = stationarity(t);
        if ((prev_f <= 0.0) != (f <= 0.0)) {
            const double root = find_root(stationarity, prev_t, t, cfg);
            const double profit = bundle_profit_improved(spec, count_n, root);
            if (profit > best_profit) {
                best_profit = profit;
                best_t = root;
            }
        }
        prev_t = t;
        prev_f = f;
    }
    if (!std::isfinite(best_t))
        throw NoRootInBracket("bundle_price_improved: no stationary safety factor found");

    BundleSolution sol;
    sol.method = BundleMethod::Improved;
    sol.safety_factor_t = best_t;
    sol.price_q = count_n * (spec.mean() - best_t * spec.std_dev());
    sol.worst_case_profit = best_profit;
    return sol;
}

BundleSolution bundle_price_aggregate(const MomentSpec& spec, int count_n,
                                      const NumericConfig& cfg) {
    cfg.validate();
    if (count_n < 1) throw Error("bundle_price_aggregate: count_n must be at least 1");
    if (!(spec.mean() > 0.0)) throw Error("bundle_price_aggregate: requires positive mean");

    // t^3 + 3t = c has a single real root (Cardano)
    const double c = 2.0 * std::sqrt(static_cast<double>(count_n)) * spec.mean() / spec.std_dev();
    const double disc = std::sqrt(c * c / 4.0 + 1.0);
    const double t = std::cbrt(c / 2.0 + disc) + std::cbrt(c / 2.0 - disc);

    const double n = count_n;
    const double price = n * spec.mean() - t * std::sqrt(n) * spec.std_dev();
    const double d = spec.mean() - price / n;
    const double sigma2 = spec.variance();

    BundleSolution sol;
    sol.method = BundleMethod::Aggregate;
    sol.safety_factor_t = t;
    sol.price_q = price;
    sol.worst_case_profit = price * (1.0 - sigma2 / (n * d * d + sigma2));
    return sol;
}

namespace {

double branch_slack(double range, double sigma, bool high) {
    const double disc = std::sqrt(std::max(0.0, range * range - 4.0 * sigma * sigma));
    return high ? 0.5 * (range + disc) : 2.0 * sigma * sigma / (range + disc);
}

} // namespace

BundleSolution bundle_price_unequal(const std::vector<MomentSpec>& specs,
                                    const NumericConfig& cfg) {
    cfg.validate();
    if (specs.empty()) throw Error("bundle_price_unequal: needs at least one product");
    for (const auto& spec : specs)
        if (!(spec.mean() > 0.0)) throw Error("bundle_price_unequal: requires positive means");

    double sig_max = 0.0;
    for (const auto& spec : specs) sig_max = std::max(sig_max, spec.std_dev());

    auto objective = [&](double range, bool high) {
        double price = 0.0;
        double log_product = 0.0;
        for (const auto& spec : specs) {
            const double sigma = spec.std_dev();
            const double x = branch_slack(range, sigma, high);
            price += spec.mean() - x;
            log_product += std::log(sigma * sigma / (x * x + sigma * sigma));
        }
        if (!(price > 0.0)) return -std::numeric_limits<double>::infinity();
        return price * -std::expm1(log_product);
    };

    BundleSolution sol;
    sol.method = BundleMethod::UnequalMoments;
    double best = -std::numeric_limits<double>::infinity();
    for (const bool high : {false, true}) {
        auto in_log = [&](double y) { return objective(2.0 * sig_max * std::exp(y), high); };
        const double y_star = grid_then_golden_maximize(in_log, 0.0, std::log(1e6), 2000, cfg);
        const double range = 2.0 * sig_max * std::exp(y_star);
        const double value = objective(range, high);
        if (value > best) {
            best = value;
            sol.common_range = range;
            sol.worst_case_profit = value;
            double price = 0.0;
            for (const auto& spec : specs)
                price += spec.mean() - branch_slack(range, spec.std_dev(), high);
            sol.price_q = price;
        }
    }
    if (!std::isfinite(best)) throw Infeasible("bundle_price_unequal: no profitable price found");
    return sol;
}

MixedBundleOutcome mixed_bundle_check(const std::vector<MomentSpec>& specs,
                                      const std::vector<double>& component_prices,
                                      double bundle_price, const NumericConfig& cfg) {
    const std::size_t n = specs.size();
    if (n == 0) throw Error("mixed_bundle_check: needs at least one product");
    if (component_prices.size() != n)
        throw Error("mixed_bundle_check: one component price per product required");
    if (n > 20) throw EnumerationTooLarge("mixed_bundle_check: enumeration capped at 20 products");

    const auto [alloc, report] = equal_range_tail_lower({specs, bundle_price}, cfg);
    (void)report;
    std::vector<double> low(n), high(n), beta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = specs[i].mean() - alloc.q_split[i];
        const double sigma2 = specs[i].variance();
        low[i] = alloc.q_split[i];
        high[i] = specs[i].mean() + sigma2 / x;
        beta[i] = sigma2 / (x * x + sigma2);
    }

    MixedBundleOutcome outcome;
    const std::size_t states = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < states; ++mask) {
        double prob = 1.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool is_high = (mask >> i) & 1;
            prob *= is_high ? (1.0 - beta[i]) : beta[i];
            total += is_high ? high[i] : low[i];
        }

        const double bundle_surplus = total - bundle_price;
        double best_surplus = 0.0;
        double income = 0.0;
        if (bundle_surplus > 0.0) {
            best_surplus = bundle_surplus;
            income = bundle_price;
        }
        bool any_item_clears = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double value = ((mask >> i) & 1) ? high[i] : low[i];
            const double surplus = value - component_prices[i];
            if (surplus > 0.0) {
                any_item_clears = true;
                if (surplus > best_surplus) {
                    best_surplus = surplus;
                    income = component_prices[i];
                }
            }
        }
        outcome.mixed_profit += prob * income;
        outcome.pure_profit += prob * (bundle_surplus > 0.0 ? bundle_price : 0.0);
        if (any_item_clears && !(bundle_surplus > 0.0)) outcome.item_only_probability += prob;
    }
    return outcome;
}

InventorySolution inventory_solve(const MomentSpec& spec, int count_n, double b, double h) {
    if (count_n < 1) throw Error("inventory_solve: count_n must be at least 1");
    if (!(b > 0.0) || !(h > 0.0)) throw Error("inventory_solve: costs must be positive");
    const double critical = b / (b + h);
    if (!(critical >= 0.5))
        throw CriticalRatioOutOfRange("inventory_solve: requires b/(b+h) >= 1/2");

    const double n = count_n;
    const double beta = std::exp(std::log(critical) / n);
    const double mu = spec.mean();
    const double sigma = spec.std_dev();
    const double under_over = std::sqrt((1.0 - beta) / beta);

    InventorySolution sol;
    sol.adverse_beta = beta;
    sol.underage_b = b;
    sol.overage_h = h;
    sol.order_q = n * mu + sigma * ((2.0 * beta - 1.0) / (2.0 * std::sqrt((1.0 - beta) * beta)) -
                                    (n - 1.0) * under_over);
    sol.worst_case_cost = b * sigma * n * under_over;
    return sol;
}

InventorySolution inventory_solve_aggregate(const MomentSpec& spec, int count_n, double b,
                                            double h) {
    if (count_n < 1) throw Error("inventory_solve_aggregate: count_n must be at least 1");
    if (!(b > 0.0) || !(h > 0.0)) throw Error("inventory_solve_aggregate: costs must be positive");

    const double n = count_n;
    InventorySolution sol;
    sol.adverse_beta = b / (b + h);
    sol.underage_b = b;
    sol.overage_h = h;
    sol.order_q = n * spec.mean() +
                  0.5 * std::sqrt(n) * spec.std_dev() * (std::sqrt(b / h) - std::sqrt(h / b));
    sol.worst_case_cost = spec.std_dev() * std::sqrt(n * b * h);
    return sol;
}

double call_upper_bound_branches(double mean, double std_dev, double q) {
    const double s2 = std_dev * std_dev;
    if (mean > 0.0 && q <= (mean * mean + s2) / (2.0 * mean))
        return mean - q * mean * mean / (mean * mean + s2);
    return 0.5 * (mean - q + std::sqrt((q - mean) * (q - mean) + s2));
}

OptionQuote option_quote(const MomentSpec& daily, int days_n, double start_price, double strike,
                         double discount_rate) {
    if (days_n < 1) throw Error("option_quote: days_n must be at least 1");
    const double n = days_n;
    const double q_eff = strike - start_price;
    const double mean_n = n * daily.mean();
    const double sd_n = std::sqrt(n) * daily.std_dev();
    const double discount = std::exp(-discount_rate * n);

    OptionQuote quote{strike, days_n, start_price, daily, 0.0, 0.0, 0.0, discount_rate};
    quote.aggregation =
        discount * 0.5 * (mean_n - q_eff + std::sqrt((q_eff - mean_n) * (q_eff - mean_n) + sd_n * sd_n));
    quote.improved = discount * optimal_loss_bound(ShiftedSpec(daily, q_eff, days_n)).value;
    const double d = (mean_n - q_eff) / sd_n;
    quote.normal_prior = discount * ((mean_n - q_eff) * normal_cdf(d) + sd_n * normal_pdf(d));
    return quote;
}

BoundReport random_price_loss_upper(const MomentSpec& price_spec, const MomentSpec& demand_spec,
                                    double rho, double q) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw CorrelationOutOfRange("random_price_loss_upper: rho must lie in [-1,1]");
    if (!(q > 0.0)) throw Error("random_price_loss_upper: requires q > 0");

    const double mu_s = price_spec.mean();
    const double mu_d = demand_spec.mean();
    const double s_s = price_spec.std_dev();
    const double s_d = demand_spec.std_dev();
    const double price_norm = std::sqrt(mu_s * mu_s + s_s * s_s);
    const double demand_norm = std::sqrt((mu_d - q) * (mu_d - q) + s_d * s_d);

    BoundReport report;
    report.value = 0.5 * (mu_s * mu_d + rho * s_s * s_d - q * mu_s + price_norm * demand_norm);
    report.kind = BoundKind::LossUpper;
    return report;
}

ThreePointJoint random_price_worst_case(const MomentSpec& price_spec,
                                        const MomentSpec& demand_spec, double rho, double q) {
    const double bound = random_price_loss_upper(price_spec, demand_spec, rho, q).value;

    const double mu_s = price_spec.mean();
    const double mu_d = demand_spec.mean();
    const double s_s = price_spec.std_dev();
    const double s_d = demand_spec.std_dev();
    const double demand_sq = (mu_d - q) * (mu_d - q) + s_d * s_d;
    const double k = std::sqrt(demand_sq) / std::sqrt(mu_s * mu_s + s_s * s_s);

    const double den_up = mu_d - q + k * mu_s;
    const double den_down = mu_d - q - k * mu_s;
    const double scale = std::abs(mu_d - q) + k * std::abs(mu_s) + 1.0;
    if (std::abs(den_up) < 1e-12 * scale || std::abs(den_down) < 1e-12 * scale)
        throw DegenerateDenominator("random_price_worst_case: mu_d - q +/- k mu_s vanishes");

    const double up = mu_s + (k * s_s * s_s + rho * s_s * s_d) / den_up;
    const double down = mu_s + (-k * s_s * s_s + rho * s_s * s_d) / den_down;
    const double beta1 = den_up * den_up / (4.0 * k * bound);
    const double beta3 = den_down * den_down / (4.0 * demand_sq - 4.0 * k * bound);
    const double middle = 1.0 - beta1 - beta3;
    const double slack = 1e-12;
    if (!(beta1 >= -slack && beta1 <= 1.0 + slack) || !(beta3 >= -slack && beta3 <= 1.0 + slack) ||
        !(middle >= -slack))
        throw InfeasibleMasses("random_price_worst_case: masses leave [0,1]");

    ThreePointJoint joint;
    joint.k_ratio = k;
    joint.points[0] = {up, q + k * up, beta1};
    joint.points[1] = {0.0, q, middle};
    joint.points[2] = {down, q - k * down, beta3};
    return joint;
}

const char* to_string(BundleMethod method) {
    switch (method) {
    case BundleMethod::Improved: return "improved";
    case BundleMethod::Aggregate: return "aggregate";
    case BundleMethod::UnequalMoments: return "unequal-moments";
    }
    return "unknown";
}

} // namespace semibound
