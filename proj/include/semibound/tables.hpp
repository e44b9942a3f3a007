#pragma once

#include <string>
#include <vector>

namespace semibound {

enum class TableName { Table2, Table4, Table5, AppendixB };

// Pre-rendered table: computations run at full precision and cells are
// rounded half-even only here.
struct TableArtifact {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_markdown() const;
    std::string to_csv() const; // RFC 4180, CRLF line endings
};

// Bundle-pricing, inventory, option-pricing and worst-case-joint tables at
// their published parameter sets.
TableArtifact reproduce(TableName table);

TableName parse_table_name(const std::string& text);

// Fixed-point rendering with round-half-even at the given decimals.
std::string format_fixed(double value, int decimals);

} // namespace semibound
