#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semibound/applications.hpp"
#include "semibound/bounds_iid.hpp"
#include "semibound/bounds_single.hpp"
#include "semibound/csv.hpp"
#include "semibound/expected_loss.hpp"
#include "semibound/oracle.hpp"
#include "semibound/tables.hpp"

namespace {

using nlohmann::json;
using namespace semibound;

json attaining_json(const std::optional<TwoPointDistribution>& dist) {
    if (!dist) return nullptr;
    return json{{"low", dist->low()}, {"high", dist->high()}, {"beta", dist->beta()}};
}

json bound_json(const BoundReport& report, const std::string& method, const json& inputs) {
    json j{{"value", report.value},
           {"kind", to_string(report.kind)},
           {"method", method},
           {"inputs", inputs}};
    if (report.attaining) j["attaining_distribution"] = attaining_json(report.attaining);
    return j;
}

void emit(const TableArtifact& table, const json& as_json, const std::string& format) {
    if (format == "json")
        std::cout << as_json.dump() << "\n";
    else if (format == "csv")
        std::cout << table.to_csv();
    else
        std::cout << table.to_markdown();
}

TableArtifact kv_table(std::string name, std::vector<std::pair<std::string, std::string>> kv) {
    TableArtifact t;
    t.name = std::move(name);
    t.header = {"quantity", "value"};
    for (auto& [k, v] : kv) t.rows.push_back({k, v});
    return t;
}

std::string num(double v) { return format_fixed(v, 6); }

int run_tail(double mu, double sigma, int n, double q, int sweep, const std::string& format) {
    const MomentSpec spec(mu, sigma);
    if (sweep > 0) {
        TableArtifact t;
        t.name = "tail-sweep";
        t.header = {"N", "direction", "improved", "aggregate"};
        json rows = json::array();
        for (int k = 1; k <= sweep; ++k) {
            const SumSpec s(spec, k, q);
            const bool right = mu > q / k;
            double improved, aggregate;
            if (right) {
                improved = improved_tail_lower(s).value;
                aggregate = aggregate_tail_lower(s).value;
            } else if (mu < q / k) {
                improved = improved_left_tail_lower(s).value;
                aggregate =
                    cantelli_left_tail_lower({MomentSpec(k * mu, std::sqrt(k) * sigma), q}).value;
            } else {
                continue;
            }
            t.rows.push_back({std::to_string(k), right ? "right" : "left", num(improved),
                              num(aggregate)});
            rows.push_back({{"n", k},
                            {"direction", right ? "right" : "left"},
                            {"improved", improved},
                            {"aggregate", aggregate}});
        }
        emit(t, rows, format);
        return 0;
    }

    const SumSpec s(spec, n, q);
    const json inputs{{"mu", mu}, {"sigma", sigma}, {"n", n}, {"q", q}};
    BoundReport improved, aggregate;
    std::string direction;
    if (mu > q / n) {
        direction = "right";
        improved = improved_tail_lower(s);
        aggregate = aggregate_tail_lower(s);
    } else {
        direction = "left";
        improved = improved_left_tail_lower(s);
        aggregate = cantelli_left_tail_lower({MomentSpec(n * mu, std::sqrt(n) * sigma), q});
    }
    json j{{"direction", direction},
           {"improved", bound_json(improved, "improved", inputs)},
           {"aggregate", bound_json(aggregate, "aggregate", inputs)}};
    emit(kv_table("tail", {{"direction", direction},
                           {"improved_lower_bound", num(improved.value)},
                           {"aggregate_lower_bound", num(aggregate.value)}}),
         j, format);
    return 0;
}

int run_percentile(double mu, double sigma, int n, double gamma, const std::string& format) {
    const PercentileEnvelope env = percentile_envelope(MomentSpec(mu, sigma), n, gamma);
    const json j{{"gamma", env.gamma},
                 {"lower", env.lower},
                 {"upper", env.upper},
                 {"inputs", {{"mu", mu}, {"sigma", sigma}, {"n", n}}}};
    emit(kv_table("percentile", {{"gamma", num(env.gamma)},
                                 {"lower", num(env.lower)},
                                 {"upper", num(env.upper)}}),
         j, format);
    return 0;
}

int run_loss(double mu, double sigma, int n, double q, const std::string& format) {
    const MomentSpec spec(mu, sigma);
    const ShiftedSpec shifted(spec, q, n);
    const BoundReport improved = optimal_loss_bound(shifted);
    const double mean_n = n * mu;
    const double sd_n = std::sqrt(n) * sigma;
    const double aggregate = 0.5 * (mean_n - q + std::sqrt((q - mean_n) * (q - mean_n) + sd_n * sd_n));
    const BoundReport abs_bound = abs_sum_upper(SumSpec(spec, n, q));
    const json inputs{{"mu", mu}, {"sigma", sigma}, {"n", n}, {"q", q}};
    json j{{"improved", bound_json(improved, "improved", inputs)},
           {"aggregate", {{"value", aggregate}, {"kind", "LossUpper"}, {"method", "aggregate"}, {"inputs", inputs}}},
           {"abs_upper", bound_json(abs_bound, "improved", inputs)}};
    emit(kv_table("loss", {{"improved_loss_upper", num(improved.value)},
                           {"aggregate_loss_upper", num(aggregate)},
                           {"improved_abs_upper", num(abs_bound.value)}}),
         j, format);
    return 0;
}

json bundle_json(const BundleSolution& sol, const json& inputs) {
    return json{{"value", sol.worst_case_profit},
                {"kind", "Profit"},
                {"method", to_string(sol.method)},
                {"price", sol.price_q},
                {"safety_factor", sol.safety_factor_t},
                {"inputs", inputs}};
}

int run_bundle(double mu, double sigma, int n, const std::string& format) {
    const MomentSpec spec(mu, sigma);
    const BundleSolution opt = bundle_price_improved(spec, n);
    const BundleSolution agg = bundle_price_aggregate(spec, n);
    const json inputs{{"mu", mu}, {"sigma", sigma}, {"n", n}};
    json j{{"improved", bundle_json(opt, inputs)}, {"aggregate", bundle_json(agg, inputs)}};
    emit(kv_table("bundle", {{"improved_price", num(opt.price_q)},
                             {"improved_profit", num(opt.worst_case_profit)},
                             {"aggregate_price", num(agg.price_q)},
                             {"aggregate_profit", num(agg.worst_case_profit)}}),
         j, format);
    return 0;
}

json inventory_json(const InventorySolution& sol, const std::string& method, const json& inputs) {
    return json{{"value", sol.worst_case_cost},
                {"kind", "Cost"},
                {"method", method},
                {"order", sol.order_q},
                {"adverse_beta", sol.adverse_beta},
                {"inputs", inputs}};
}

int run_inventory(double mu, double sigma, int n, double b, double h, bool pooling_detail,
                  const std::string& format) {
    const MomentSpec spec(mu, sigma);
    const InventorySolution opt = inventory_solve(spec, n, b, h);
    const json inputs{{"mu", mu}, {"sigma", sigma}, {"n", n}, {"underage", b}, {"overage", h}};
    if (pooling_detail) {
        const TwoPointDistribution adverse = make_two_point(spec, opt.adverse_beta);
        json j = inventory_json(opt, "improved", inputs);
        j["adverse_distribution"] = attaining_json(adverse);
        emit(kv_table("newsvendor-rp", {{"order", num(opt.order_q)},
                                        {"worst_case_cost", num(opt.worst_case_cost)},
                                        {"adverse_beta", num(opt.adverse_beta)},
                                        {"adverse_low", num(adverse.low())},
                                        {"adverse_high", num(adverse.high())}}),
             j, format);
        return 0;
    }
    const InventorySolution agg = inventory_solve_aggregate(spec, n, b, h);
    json j{{"improved", inventory_json(opt, "improved", inputs)},
           {"aggregate", inventory_json(agg, "aggregate", inputs)}};
    emit(kv_table("inventory", {{"improved_order", num(opt.order_q)},
                                {"improved_cost", num(opt.worst_case_cost)},
                                {"aggregate_order", num(agg.order_q)},
                                {"aggregate_cost", num(agg.worst_case_cost)}}),
         j, format);
    return 0;
}

int run_option(double mu, double sigma, int n, double start, double strike, double rate,
               const std::string& prices_path, const std::string& date_col,
               const std::string& close_col, bool population, const std::string& format) {
    MomentSpec daily(mu, sigma);
    if (!prices_path.empty()) {
        const auto [series, estimated] =
            ingest_prices(prices_path, {date_col, close_col, population});
        daily = estimated;
        if (start <= 0.0) start = series.rows.back().close;
    }
    const OptionQuote quote = option_quote(daily, n, start, strike, rate);
    const json j{{"inputs",
                  {{"mu", daily.mean()},
                   {"sigma", daily.std_dev()},
                   {"n", n},
                   {"start", start},
                   {"strike", strike},
                   {"rate", rate}}},
                 {"aggregation", quote.aggregation},
                 {"improved", quote.improved},
                 {"normal_prior", quote.normal_prior}};
    emit(kv_table("option", {{"mu", num(daily.mean())},
                             {"sigma", num(daily.std_dev())},
                             {"aggregation", num(quote.aggregation)},
                             {"improved", num(quote.improved)},
                             {"normal_prior", num(quote.normal_prior)}}),
         j, format);
    return 0;
}

int run_reproduce(const std::string& table_name, const std::string& format) {
    const TableArtifact table = reproduce(parse_table_name(table_name));
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[table.header[i]] = row[i];
        rows.push_back(r);
    }
    emit(table, json{{"table", table.name}, {"rows", rows}}, format);
    return 0;
}

int run_verify(int n, std::uint64_t seed, const std::string& format) {
    if (n > 8) {
        std::cerr << "verify: exact enumeration supports n <= 8\n";
        return 1;
    }
    struct Point {
        double mu, sigma, q;
    };
    const Point points[] = {{0.0, 1.0, 0.5}, {1.0, 1.0, 0.5 * n}, {2.5, 1.0, 3.25 * n},
                            {-0.3, 0.7, 0.2 * n}, {0.5, 0.288675134594813, 0.527 * n}};
    double worst_loss = 0.0;
    double worst_tail = 0.0;
    long long laws = 0;
    for (const auto& p : points) {
        const auto report =
            oracle::adversarial_search(MomentSpec(p.mu, p.sigma), n, p.q, 1000, seed);
        worst_loss = std::max(worst_loss, report.worst_loss_gap);
        worst_tail = std::max(worst_tail, report.worst_tail_gap);
        laws += report.laws_tested;
    }
    const bool ok = worst_loss <= 1e-9 && worst_tail <= 1e-9;
    const json j{{"laws_tested", laws},
                 {"worst_loss_gap", worst_loss},
                 {"worst_tail_gap", worst_tail},
                 {"seed", seed},
                 {"certified", ok}};
    emit(kv_table("verify", {{"laws_tested", std::to_string(laws)},
                             {"worst_loss_gap", num(worst_loss)},
                             {"worst_tail_gap", num(worst_tail)},
                             {"certified", ok ? "yes" : "no"}}),
         j, format);
    if (!ok) {
        std::cerr << "verify: certification failed\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp mean-variance bounds for sums of independent random variables"};
    app.require_subcommand(1);

    std::string format = "md";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"md", "csv", "json"}));

    std::uint64_t seed = 42;
    if (const char* env = std::getenv("SEMIBOUND_SEED")) seed = std::strtoull(env, nullptr, 10);
    app.add_option("--seed", seed, "seed for randomized certification");

    double mu = 0.0, sigma = 1.0, q = 0.0, gamma = 0.5;
    int n = 1;

    auto add_moment_flags = [&](CLI::App* cmd, bool need_q) {
        cmd->add_option("--mu", mu, "per-variable mean")->required();
        cmd->add_option("--sigma", sigma, "per-variable standard deviation")->required();
        cmd->add_option("--n", n, "number of variables")->required();
        if (need_q) cmd->add_option("--q", q, "threshold")->required();
    };

    auto* tail = app.add_subcommand("tail", "lower bounds on Pr(sum beyond q)");
    int sweep = 0;
    add_moment_flags(tail, true);
    tail->add_option("--sweep-n", sweep, "dump bounds for N = 1..sweep");

    auto* percentile = app.add_subcommand("percentile", "envelope for a percentile of the sum");
    percentile->add_option("--mu", mu)->required();
    percentile->add_option("--sigma", sigma)->required();
    percentile->add_option("--n", n)->required();
    percentile->add_option("--gamma", gamma, "percentile level in (0,1)")->required();

    auto* loss = app.add_subcommand("loss", "upper bounds on E(sum - q)^+ and E|sum - q|");
    add_moment_flags(loss, true);

    auto* bundle = app.add_subcommand("bundle", "robust bundle price for N identical goods");
    bundle->add_option("--mu", mu)->required();
    bundle->add_option("--sigma", sigma)->required();
    bundle->add_option("--n", n)->required();

    double underage = 1.0, overage = 1.0;
    auto* inventory = app.add_subcommand("inventory", "robust central-stock solution");
    inventory->add_option("--mu", mu)->required();
    inventory->add_option("--sigma", sigma)->required();
    inventory->add_option("--n", n)->required();
    inventory->add_option("--underage", underage, "per-unit underage cost")->required();
    inventory->add_option("--overage", overage, "per-unit overage cost")->required();

    auto* pooling = app.add_subcommand("newsvendor-rp", "risk-pooling solution with adverse law");
    pooling->add_option("--mu", mu)->required();
    pooling->add_option("--sigma", sigma)->required();
    pooling->add_option("--n", n)->required();
    pooling->add_option("--underage", underage)->required();
    pooling->add_option("--overage", overage)->required();

    double start = 0.0, strike = 0.0, rate = 0.0;
    std::string prices_path, date_col = "date", close_col = "close";
    bool population = false;
    auto* option = app.add_subcommand("option", "European call quotes from daily moments");
    option->add_option("--mu", mu);
    option->add_option("--sigma", sigma);
    option->add_option("--n", n, "days to expiry")->required();
    option->add_option("--start", start, "current price");
    option->add_option("--strike", strike)->required();
    option->add_option("--rate", rate, "per-day risk-free rate");
    option->add_option("--prices", prices_path, "CSV of dated closes to estimate moments");
    option->add_option("--date-column", date_col);
    option->add_option("--close-column", close_col);
    option->add_flag("--population", population, "divide variance by N instead of N-1");

    std::string table_name;
    auto* repro = app.add_subcommand("reproduce", "regenerate a published table");
    repro->add_option("table", table_name, "table2 | table4 | table5 | appendixb")->required();

    auto* verify = app.add_subcommand("verify", "adversarial certification of the sharp bounds");
    int verify_n = 8;
    verify->add_option("--n", verify_n, "variables per sum (exact enumeration, <= 8)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tail->parsed()) return run_tail(mu, sigma, n, q, sweep, format);
        if (percentile->parsed()) return run_percentile(mu, sigma, n, gamma, format);
        if (loss->parsed()) return run_loss(mu, sigma, n, q, format);
        if (bundle->parsed()) return run_bundle(mu, sigma, n, format);
        if (inventory->parsed())
            return run_inventory(mu, sigma, n, underage, overage, false, format);
        if (pooling->parsed()) return run_inventory(mu, sigma, n, underage, overage, true, format);
        if (option->parsed())
            return run_option(mu, sigma, n, start, strike, rate, prices_path, date_col, close_col,
                              population, format);
        if (repro->parsed()) return run_reproduce(table_name, format);
        if (verify->parsed()) return run_verify(verify_n, seed, format);
    } catch (const semibound::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
