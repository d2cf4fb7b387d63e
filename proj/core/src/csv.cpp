#include "tim/csv.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "tim/errors.hpp"

namespace tim {

int CsvTable::column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return -1;
    return static_cast<int>(it - header.begin());
}

std::vector<std::string> parse_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cell;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (c == ',' && !quoted) {
            fields.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\r') {
            continue;
        } else {
            cell += c;
        }
    }
    fields.push_back(std::move(cell));
    return fields;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);

    CsvTable table;
    std::string line;
    size_t lineno = 0;
    // Strip a UTF-8 BOM from the very first line if present.
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (first_content && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB &&
            static_cast<unsigned char>(line[2]) == 0xBF) {
            line.erase(0, 3);
        }
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') continue;
        auto fields = parse_csv_line(line);
        if (first_content) {
            table.header = std::move(fields);
            first_content = false;
        } else {
            table.rows.push_back(CsvRow{std::move(fields), lineno});
        }
    }
    if (first_content) throw InputError(path + ": empty file, expected a header row");
    return table;
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

}  // namespace tim
