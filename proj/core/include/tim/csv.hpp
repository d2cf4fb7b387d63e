#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tim {

// RFC-4180-ish comma separated values: double quotes guard commas, quotes
// and newlines inside fields; "" inside a quoted field is a literal quote.

struct CsvRow {
    std::vector<std::string> fields;
    size_t line = 0;  // 1-based line number in the source file
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;

    // Index of a header column, -1 when absent.
    int column(std::string_view name) const;
};

std::vector<std::string> parse_csv_line(std::string_view line);

// Reads a whole file. Blank lines and lines starting with '#' are skipped
// (our own exports carry a '#' sort-order comment above the header).
CsvTable read_csv_file(const std::string& path);

// Quotes the field only when it needs quoting.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace tim
