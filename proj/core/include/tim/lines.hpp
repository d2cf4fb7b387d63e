#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tim/post.hpp"

namespace tim {

enum class LineMode { tram, bus };

std::string to_string(LineMode m);
LineMode line_mode_from_string(const std::string& s);

struct LineRegistry {
    struct Line {
        std::string id;
        LineMode mode = LineMode::tram;
        std::vector<std::string> aliases;
    };
    std::vector<Line> lines;
    // Lowercased id or alias token → index into lines.
    std::unordered_map<std::string, size_t> by_token;

    bool empty() const { return lines.empty(); }
};

// lines.csv with columns line_id, mode and an optional aliases column
// (';'-separated alternate spellings).
LineRegistry load_line_registry(const std::string& path);

struct LineMentionCount {
    std::string line_id;
    LineMode mode = LineMode::tram;
    int64_t post_count = 0;
};

// Registered line ids whose id or alias appears as a whole token in the text.
// Unregistered numbers never match.
std::set<std::string> extract_line_mentions(const std::string& text,
                                            const LineRegistry& registry);

// Distinct-post counts per line, mentioned lines only, sorted descending by
// count with ties broken by line id.
std::vector<LineMentionCount> count_line_mentions(const std::vector<Post>& posts,
                                                  const LineRegistry& registry);

}  // namespace tim
