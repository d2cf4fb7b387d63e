#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tim {

// One token as it appeared in the source text. Tokens are maximal runs of
// letters and digits; everything else separates. Offsets are byte offsets
// into the original UTF-8 string.
struct ScannedToken {
    std::string lower;       // lowercased token text
    size_t begin = 0;        // byte offset of first codepoint
    size_t end = 0;          // byte offset one past last codepoint
    bool capitalized = false;  // first codepoint is an uppercase letter
    bool has_digit = false;    // contains at least one ASCII digit
};

std::vector<ScannedToken> scan_tokens(std::string_view text);

// Lowercased tokens only: split on any codepoint that is neither a letter
// nor a digit, drop empties, keep diacritics.
std::vector<std::string> tokenize(std::string_view text);

extern const std::vector<std::string> kDefaultNamePrefixes;  // "ul", "pl", "al"

// Canonical form used for gazetteer keys and fuzzy matching: lowercase,
// whitespace runs collapsed to single spaces, leading generic prefixes
// (abbreviations like "ul." / "pl." / "al.", with or without the dot)
// stripped. Diacritics are preserved.
std::string normalize_name(std::string_view s,
                           const std::vector<std::string>& strip_prefixes = kDefaultNamePrefixes);

}  // namespace tim
