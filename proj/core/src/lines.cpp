#include "tim/lines.hpp"

#include <algorithm>
#include <map>

#include "tim/csv.hpp"
#include "tim/errors.hpp"
#include "tim/text.hpp"
#include "tim/unicode.hpp"

namespace tim {

std::string to_string(LineMode m) {
    return m == LineMode::tram ? "tram" : "bus";
}

LineMode line_mode_from_string(const std::string& s) {
    if (s == "tram") return LineMode::tram;
    if (s == "bus") return LineMode::bus;
    throw InputError("unknown line mode: '" + s + "' (expected tram or bus)");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

LineRegistry load_line_registry(const std::string& path) {
    CsvTable t = read_csv_file(path);
    int c_id = t.column("line_id");
    int c_mode = t.column("mode");
    if (c_id < 0) throw InputError(path + ": missing required column 'line_id'");
    if (c_mode < 0) throw InputError(path + ": missing required column 'mode'");
    int c_aliases = t.column("aliases");

    LineRegistry reg;
    for (const auto& row : t.rows) {
        LineRegistry::Line line;
        line.id = trim(row.fields.at(c_id));
        if (line.id.empty()) throw InputError(path, row.line, "empty line_id");
        try {
            line.mode = line_mode_from_string(trim(row.fields.at(c_mode)));
        } catch (const InputError& e) {
            throw InputError(path, row.line, e.what());
        }
        if (c_aliases >= 0) {
            std::string raw = row.fields.at(c_aliases);
            size_t pos = 0;
            while (pos <= raw.size()) {
                size_t sep = raw.find(';', pos);
                std::string alias = trim(raw.substr(pos, sep == std::string::npos ? sep
                                                                                  : sep - pos));
                if (!alias.empty()) line.aliases.push_back(alias);
                if (sep == std::string::npos) break;
                pos = sep + 1;
            }
        }
        size_t idx = reg.lines.size();
        if (!reg.by_token.emplace(lowercase(line.id), idx).second) {
            throw InputError(path, row.line, "duplicate line id '" + line.id + "'");
        }
        for (const auto& alias : line.aliases) {
            if (!reg.by_token.emplace(lowercase(alias), idx).second) {
                throw InputError(path, row.line,
                                 "alias '" + alias + "' collides with an existing line or alias");
            }
        }
        reg.lines.push_back(std::move(line));
    }
    return reg;
}

std::set<std::string> extract_line_mentions(const std::string& text,
                                            const LineRegistry& registry) {
    if (registry.empty()) throw InputError("line registry is empty");
    std::set<std::string> out;
    for (const auto& tok : tokenize(text)) {
        if (auto it = registry.by_token.find(tok); it != registry.by_token.end()) {
            out.insert(registry.lines[it->second].id);
        }
    }
    return out;
}

std::vector<LineMentionCount> count_line_mentions(const std::vector<Post>& posts,
                                                  const LineRegistry& registry) {
    std::map<std::string, int64_t> counts;
    if (registry.empty()) return {};
    for (const auto& post : posts) {
        for (const auto& id : extract_line_mentions(post.text, registry)) counts[id] += 1;
    }
    std::vector<LineMentionCount> out;
    for (const auto& [id, count] : counts) {
        const auto& line = registry.lines[registry.by_token.at(lowercase(id))];
        out.push_back({id, line.mode, count});
    }
    std::sort(out.begin(), out.end(), [](const LineMentionCount& a, const LineMentionCount& b) {
        if (a.post_count != b.post_count) return a.post_count > b.post_count;
        return a.line_id < b.line_id;
    });
    return out;
}

}  // namespace tim
