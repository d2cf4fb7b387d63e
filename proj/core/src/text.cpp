#include "tim/text.hpp"

#include <algorithm>

#include "tim/unicode.hpp"

namespace tim {

namespace {

// Byte length of the UTF-8 encoding that starts at this lead byte.
size_t seq_len(unsigned char b) {
    if (b < 0x80) return 1;
    if ((b & 0xE0) == 0xC0) return 2;
    if ((b & 0xF0) == 0xE0) return 3;
    if ((b & 0xF8) == 0xF0) return 4;
    return 1;
}

char32_t decode_at(std::string_view s, size_t i, size_t len) {
    auto cps = utf8_decode(s.substr(i, len));
    return cps.empty() ? 0xFFFD : cps[0];
}

}  // namespace

std::vector<ScannedToken> scan_tokens(std::string_view text) {
    std::vector<ScannedToken> tokens;
    ScannedToken cur;
    bool in_token = false;
    size_t i = 0;
    while (i < text.size()) {
        size_t len = std::min(seq_len(static_cast<unsigned char>(text[i])), text.size() - i);
        char32_t cp = decode_at(text, i, len);
        if (is_letter_or_digit(cp)) {
            if (!in_token) {
                cur = ScannedToken{};
                cur.begin = i;
                cur.capitalized = is_upper(cp);
                in_token = true;
            }
            cur.has_digit = cur.has_digit || is_digit(cp);
            utf8_append(cur.lower, to_lower(cp));
            cur.end = i + len;
        } else if (in_token) {
            tokens.push_back(std::move(cur));
            in_token = false;
        }
        i += len;
    }
    if (in_token) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (auto& t : scan_tokens(text)) out.push_back(std::move(t.lower));
    return out;
}

const std::vector<std::string> kDefaultNamePrefixes = {"ul", "pl", "al"};

std::string normalize_name(std::string_view s, const std::vector<std::string>& strip_prefixes) {
    auto cps = utf8_decode(s);
    // Lowercase and collapse whitespace in one pass.
    std::vector<char32_t> flat;
    flat.reserve(cps.size());
    bool pending_space = false;
    for (char32_t cp : cps) {
        if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0xA0) {
            pending_space = !flat.empty();
            continue;
        }
        if (pending_space) {
            flat.push_back(' ');
            pending_space = false;
        }
        flat.push_back(to_lower(cp));
    }
    // Strip leading generic prefixes ("ul", "ul.", ...), possibly several.
    size_t pos = 0;
    for (;;) {
        size_t end = pos;
        while (end < flat.size() && flat[end] != ' ') ++end;
        size_t word_end = end;
        while (word_end > pos && flat[word_end - 1] == '.') --word_end;
        std::string word = utf8_encode({flat.begin() + pos, flat.begin() + word_end});
        bool matched = word_end > pos &&
                       std::find(strip_prefixes.begin(), strip_prefixes.end(), word) !=
                           strip_prefixes.end();
        if (!matched || end >= flat.size()) break;
        pos = end + 1;
    }
    return utf8_encode({flat.begin() + pos, flat.end()});
}

}  // namespace tim
