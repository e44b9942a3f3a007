#include "semibound/tables.hpp"

#include <cfenv>
#include <cmath>
#include <sstream>

#include "semibound/applications.hpp"
#include "semibound/errors.hpp"

namespace semibound {

std::string format_fixed(double value, int decimals) {
    unsigned long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    // llrint under the default rounding mode gives round-half-even
    const long long units = std::llrint(value * static_cast<double>(scale));
    const bool negative = units < 0;
    unsigned long long mag = negative ? static_cast<unsigned long long>(-units)
                                      : static_cast<unsigned long long>(units);
    std::string frac = std::to_string(mag % scale);
    frac.insert(frac.begin(), decimals - frac.size(), '0');
    std::string out = negative ? "-" : "";
    out += std::to_string(mag / scale);
    if (decimals > 0) out += "." + frac;
    return out;
}

namespace {

std::string percent(double fraction) { return format_fixed(100.0 * fraction, 1) + "%"; }

const int kBundleInventoryCounts[] = {1, 2, 3, 4, 5, 10, 20};
const int kOptionCounts[] = {10, 30, 60, 100, 200};

TableArtifact bundle_table() {
    const MomentSpec spec(2.5, 1.0);
    TableArtifact table;
    table.name = "table2";
    table.header = {"N", "q_agg", "T_agg", "q_opt", "T_opt", "price_gap", "profit_gap"};
    for (int n : kBundleInventoryCounts) {
        const BundleSolution agg = bundle_price_aggregate(spec, n);
        const BundleSolution opt = bundle_price_improved(spec, n);
        table.rows.push_back({std::to_string(n), format_fixed(agg.price_q, 3),
                              format_fixed(agg.worst_case_profit, 3), format_fixed(opt.price_q, 3),
                              format_fixed(opt.worst_case_profit, 3),
                              percent((opt.price_q - agg.price_q) / opt.price_q),
                              percent((opt.worst_case_profit - agg.worst_case_profit) /
                                      opt.worst_case_profit)});
    }
    return table;
}

TableArtifact inventory_table() {
    const MomentSpec spec(2.5, 1.0);
    const double b = 4.0;
    const double h = 1.0;
    TableArtifact table;
    table.name = "table4";
    table.header = {"N", "q_agg", "T_agg", "q_opt", "T_opt", "order_gap", "cost_gap"};
    for (int n : kBundleInventoryCounts) {
        const InventorySolution agg = inventory_solve_aggregate(spec, n, b, h);
        const InventorySolution opt = inventory_solve(spec, n, b, h);
        table.rows.push_back(
            {std::to_string(n), format_fixed(agg.order_q, 3),
             format_fixed(agg.worst_case_cost, 3), format_fixed(opt.order_q, 3),
             format_fixed(opt.worst_case_cost, 3),
             percent((agg.order_q - opt.order_q) / opt.order_q),
             percent((agg.worst_case_cost - opt.worst_case_cost) / opt.worst_case_cost)});
    }
    return table;
}

TableArtifact option_table() {
    const MomentSpec daily(0.0194, 0.2752);
    TableArtifact table;
    table.name = "table5";
    table.header = {"method"};
    for (int n : kOptionCounts) table.header.push_back("N=" + std::to_string(n));

    std::vector<std::string> agg_row{"Aggregation"};
    std::vector<std::string> impr_row{"Improved"};
    std::vector<std::string> normal_row{"Normal Prior"};
    for (int n : kOptionCounts) {
        const OptionQuote quote = option_quote(daily, n, 0.0, 2.54, 0.0);
        agg_row.push_back(format_fixed(quote.aggregation, 3));
        impr_row.push_back(format_fixed(quote.improved, 3));
        normal_row.push_back(format_fixed(quote.normal_prior, 3));
    }
    table.rows.push_back(agg_row);
    table.rows.push_back(impr_row);
    table.rows.push_back(normal_row);
    return table;
}

TableArtifact worst_case_joint_table() {
    const ThreePointJoint joint =
        random_price_worst_case(MomentSpec(12.0, 3.0), MomentSpec(10.0, 4.0), 0.2, 13.0);
    TableArtifact table;
    table.name = "appendixb";
    table.header = {"point", "spot_price", "demand", "probability"};
    for (std::size_t i = 0; i < joint.points.size(); ++i) {
        const auto& p = joint.points[i];
        table.rows.push_back({std::to_string(i + 1), format_fixed(p.spot_price, 3),
                              format_fixed(p.demand, 3), format_fixed(p.prob, 3)});
    }
    table.rows.push_back({"k_ratio", format_fixed(joint.k_ratio, 4), "", ""});
    return table;
}

} // namespace

TableArtifact reproduce(TableName table) {
    switch (table) {
    case TableName::Table2: return bundle_table();
    case TableName::Table4: return inventory_table();
    case TableName::Table5: return option_table();
    case TableName::AppendixB: return worst_case_joint_table();
    }
    throw Error("reproduce: unknown table");
}

TableName parse_table_name(const std::string& text) {
    if (text == "table2") return TableName::Table2;
    if (text == "table4") return TableName::Table4;
    if (text == "table5") return TableName::Table5;
    if (text == "appendixb") return TableName::AppendixB;
    throw Error("unknown table '" + text + "' (expected table2, table4, table5, appendixb)");
}

std::string TableArtifact::to_markdown() const {
    std::ostringstream out;
    out << "|";
    for (const auto& cell : header) out << " " << cell << " |";
    out << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << "\n";
    for (const auto& row : rows) {
        out << "|";
        for (const auto& cell : row) out << " " << cell << " |";
        out << "\n";
    }
    return out.str();
}

std::string TableArtifact::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << "\r\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\r\n";
    }
    return out.str();
}

} // namespace semibound
