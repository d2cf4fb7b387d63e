#include "tim/post.hpp"

#include <set>

#include <json.hpp>

#include "tim/datetime.hpp"
#include "tim/errors.hpp"

namespace tim {

using nlohmann::json;

std::string to_string(Platform p) {
    return p == Platform::facebook ? "facebook" : "twitter";
}

Platform platform_from_string(const std::string& s) {
    if (s == "facebook") return Platform::facebook;
    if (s == "twitter") return Platform::twitter;
    throw InputError("unknown platform: '" + s + "' (expected facebook or twitter)");
}

std::string post_to_json_line(const Post& p) {
    json j;
    j["id"] = p.id;
    j["platform"] = to_string(p.platform);
    j["published_at"] = format_iso8601_utc(p.published_at);
    j["text"] = p.text;
    j["hashtags"] = p.hashtags;
    j["reactions"] = json::object();
    for (const auto& [kind, count] : p.reactions) j["reactions"][kind] = count;
    j["comments"] = json::array();
    for (const auto& c : p.comments) {
        j["comments"].push_back({{"id", c.id},
                                 {"text", c.text},
                                 {"author_hash", c.author_hash},
                                 {"published_at", format_iso8601_utc(c.published_at)}});
    }
    return j.dump();
}

namespace {

[[noreturn]] void bad(const std::string& file, size_t lineno, const std::string& msg) {
    throw InputError(file, lineno, msg);
}

const json& require(const json& j, const char* key, const std::string& file, size_t lineno) {
    auto it = j.find(key);
    if (it == j.end()) bad(file, lineno, std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& j, const char* key, const std::string& file,
                           size_t lineno) {
    const json& v = require(j, key, file, lineno);
    if (!v.is_string()) bad(file, lineno, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

Post parse_post_json_line(const std::string& line, const std::string& file, size_t lineno) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        bad(file, lineno, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) bad(file, lineno, "post record must be a JSON object");

    Post p;
    p.id = require_string(j, "id", file, lineno);
    if (p.id.empty()) bad(file, lineno, "post id must be non-empty");
    p.platform = platform_from_string(require_string(j, "platform", file, lineno));
    try {
        p.published_at = parse_iso8601(require_string(j, "published_at", file, lineno));
    } catch (const InputError& e) {
        bad(file, lineno, e.what());
    }
    p.text = require_string(j, "text", file, lineno);

    if (auto it = j.find("hashtags"); it != j.end()) {
        if (!it->is_array()) bad(file, lineno, "field 'hashtags' must be an array");
        for (const auto& h : *it) {
            if (!h.is_string()) bad(file, lineno, "hashtags must be strings");
            p.hashtags.push_back(h.get<std::string>());
        }
    }
    if (auto it = j.find("reactions"); it != j.end()) {
        if (!it->is_object()) bad(file, lineno, "field 'reactions' must be an object");
        for (const auto& [kind, count] : it->items()) {
            if (!count.is_number_integer() || count.get<int64_t>() < 0) {
                bad(file, lineno, "reaction count for '" + kind + "' must be a non-negative integer");
            }
            p.reactions[kind] = count.get<int64_t>();
        }
    }
    if (auto it = j.find("comments"); it != j.end()) {
        if (!it->is_array()) bad(file, lineno, "field 'comments' must be an array");
        std::set<std::string> seen;
        for (const auto& cj : *it) {
            if (!cj.is_object()) bad(file, lineno, "comment records must be JSON objects");
            Comment c;
            c.id = require_string(cj, "id", file, lineno);
            if (!seen.insert(c.id).second) {
                bad(file, lineno, "duplicate comment id '" + c.id + "' in post '" + p.id + "'");
            }
            c.text = require_string(cj, "text", file, lineno);
            if (auto a = cj.find("author_hash"); a != cj.end() && a->is_string()) {
                c.author_hash = a->get<std::string>();
            }
            try {
                c.published_at = parse_iso8601(require_string(cj, "published_at", file, lineno));
            } catch (const InputError& e) {
                bad(file, lineno, e.what());
            }
            p.comments.push_back(std::move(c));
        }
    }
    return p;
}

}  // namespace tim
