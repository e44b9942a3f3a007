#include "semibound/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "semibound/numeric.hpp"

namespace semibound {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::pair<PriceSeries, MomentSpec> ingest_prices_stream(std::istream& in,
                                                        const IngestOptions& opts) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header row", 0, opts.date_column);

    const auto header = split_line(line);
    std::size_t date_idx = header.size();
    std::size_t close_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = strip(header[i]);
        if (name == opts.date_column) date_idx = i;
        if (name == opts.close_column) close_idx = i;
    }
    if (date_idx == header.size())
        throw ParseError("date column not found in header", 0, opts.date_column);
    if (close_idx == header.size())
        throw ParseError("close column not found in header", 0, opts.close_column);

    PriceSeries series;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (strip(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() <= std::max(date_idx, close_idx))
            throw ParseError("row has too few cells", row_number, opts.close_column);

        const std::string date = strip(cells[date_idx]);
        const std::string close_text = strip(cells[close_idx]);
        double close;
        try {
            std::size_t used = 0;
            close = std::stod(close_text, &used);
            if (used != close_text.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ParseError("close value is not numeric", row_number, opts.close_column);
        }
        if (!std::isfinite(close))
            throw ParseError("close value is not finite", row_number, opts.close_column);
        if (!series.rows.empty() && !(series.rows.back().date < date))
            throw ParseError("dates must be strictly increasing", row_number, opts.date_column);
        series.rows.push_back({date, close});
    }
    if (series.rows.size() < 2) throw TooFewRows("ingest_prices: need at least two rows");

    series.daily_changes.reserve(series.rows.size() - 1);
    for (std::size_t i = 1; i < series.rows.size(); ++i)
        series.daily_changes.push_back(series.rows[i].close - series.rows[i - 1].close);

    CompensatedSum sum;
    for (double c : series.daily_changes) sum.add(c);
    const double n = static_cast<double>(series.daily_changes.size());
    const double mean = sum.value() / n;

    CompensatedSum sq;
    for (double c : series.daily_changes) sq.add((c - mean) * (c - mean));
    const double denom = opts.population ? n : n - 1.0;
    if (!(denom > 0.0)) throw TooFewRows("ingest_prices: need at least three rows for sample std");
    const double variance = sq.value() / denom;

    return {std::move(series), MomentSpec(mean, std::sqrt(variance))};
}

std::pair<PriceSeries, MomentSpec> ingest_prices(const std::string& path,
                                                 const IngestOptions& opts) {
    std::ifstream file(path);
    if (!file.is_open()) throw Error("ingest_prices: cannot open " + path);
    return ingest_prices_stream(file, opts);
}

} // namespace semibound
