#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "semibound/moments.hpp"

namespace semibound {

// Dated close prices plus their first differences. Dates are opaque sort
// keys; calendar gaps are ignored.
struct PriceSeries {
    struct Row {
        std::string date;
        double close;
    };
    std::vector<Row> rows;
    std::vector<double> daily_changes;
};

struct IngestOptions {
    std::string date_column = "date";
    std::string close_column = "close";
    bool population = false; // divide variance by N instead of N-1
};

// Parse a comma-separated stream with a header row and estimate the moments
// of the daily changes. Throws ParseError with the offending row/column,
// TooFewRows below two rows, and NonPositiveVariance for constant series.
std::pair<PriceSeries, MomentSpec> ingest_prices_stream(std::istream& in,
                                                        const IngestOptions& opts = {});

std::pair<PriceSeries, MomentSpec> ingest_prices(const std::string& path,
                                                 const IngestOptions& opts = {});

} // namespace semibound
