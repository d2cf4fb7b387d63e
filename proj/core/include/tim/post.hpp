#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tim {

enum class Platform { facebook, twitter };

std::string to_string(Platform p);
Platform platform_from_string(const std::string& s);  // throws InputError

struct Comment {
    std::string id;
    std::string text;
    std::string author_hash;  // pre-anonymized upstream
    int64_t published_at = 0;  // UTC epoch seconds
};

struct Post {
    std::string id;
    Platform platform = Platform::facebook;
    int64_t published_at = 0;  // UTC epoch seconds
    std::string text;
    std::vector<std::string> hashtags;
    std::map<std::string, int64_t> reactions;  // reaction kind -> count, all >= 0
    std::vector<Comment> comments;
};

// One JSONL line (no trailing newline). Timestamps are emitted in canonical
// UTC form; a post parsed back from this line compares equal.
std::string post_to_json_line(const Post& p);

// Extra top-level keys (e.g. "label" on classified posts) are preserved by
// parse and ignored here; parse_post_json_line validates the Post fields.
Post parse_post_json_line(const std::string& line, const std::string& file, size_t lineno);

}  // namespace tim
