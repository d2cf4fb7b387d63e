#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tim {

// Minimal codepoint-level helpers for the scripts that show up in the input
// corpora (Latin incl. Polish diacritics, Cyrillic, Greek). Not a general
// Unicode library; the covered ranges are listed next to each function.

// Decodes UTF-8 into Unicode scalar values. Invalid byte sequences decode to
// U+FFFD, one replacement per rejected byte.
std::vector<char32_t> utf8_decode(std::string_view s);

void utf8_append(std::string& out, char32_t cp);
std::string utf8_encode(const std::vector<char32_t>& cps);

// Letters: ASCII, Latin-1 supplement, Latin Extended-A/B, Latin Extended
// Additional, Greek, Cyrillic.
bool is_letter(char32_t cp);

// ASCII digits only.
bool is_digit(char32_t cp);

bool is_letter_or_digit(char32_t cp);

// Simple one-to-one lowercase mapping over the ranges named above.
char32_t to_lower(char32_t cp);

bool is_upper(char32_t cp);

// Emoji detection by block: emoticons, misc symbols and pictographs,
// transport and map, supplemental symbols, plus the joiners and modifiers
// that only occur inside emoji sequences.
bool is_emoji(char32_t cp);

// Lowercases a whole UTF-8 string codepoint by codepoint.
std::string lowercase(std::string_view s);

}  // namespace tim
