#include "tim/unicode.hpp"

namespace tim {

std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char b0 = s[i];
        if (b0 < 0x80) {
            out.push_back(b0);
            i += 1;
            continue;
        }
        int len = 0;
        char32_t cp = 0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(0xFFFD);
            i += 1;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(0xFFFD);
            i += 1;
            continue;
        }
        bool ok = true;
        char32_t decoded = cp;
        for (int k = 1; k < len; ++k) {
            unsigned char b = s[i + k];
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            decoded = (decoded << 6) | (b & 0x3F);
        }
        // Reject overlong forms and surrogate range.
        if (ok) {
            if ((len == 2 && decoded < 0x80) || (len == 3 && decoded < 0x800) ||
                (len == 4 && decoded < 0x10000) || decoded > 0x10FFFF ||
                (decoded >= 0xD800 && decoded <= 0xDFFF)) {
                ok = false;
            }
        }
        if (!ok) {
            out.push_back(0xFFFD);
            i += 1;
            continue;
        }
        out.push_back(decoded);
        i += len;
    }
    return out;
}

void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) utf8_append(out, cp);
    return out;
}

bool is_letter(char32_t cp) {
    if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;  // Latin-1 + Ext-A/B
    if (cp >= 0x370 && cp <= 0x3FF) return true;                     // Greek
    if (cp >= 0x400 && cp <= 0x4FF) return true;                     // Cyrillic
    if (cp >= 0x1E00 && cp <= 0x1EFF) return true;                   // Latin Ext Additional
    return false;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_or_digit(char32_t cp) { return is_letter(cp) || is_digit(cp); }

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;  // Y with diaeresis
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;                 // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

bool is_upper(char32_t cp) { return is_letter(cp) && to_lower(cp) != cp; }

bool is_emoji(char32_t cp) {
    return (cp >= 0x1F600 && cp <= 0x1F64F)    // emoticons
        || (cp >= 0x1F300 && cp <= 0x1F5FF)    // misc symbols and pictographs
        || (cp >= 0x1F680 && cp <= 0x1F6FF)    // transport and map
        || (cp >= 0x1F900 && cp <= 0x1F9FF)    // supplemental symbols
        || (cp >= 0x1FA70 && cp <= 0x1FAFF)    // symbols extended-A
        || (cp >= 0x1F1E6 && cp <= 0x1F1FF)    // regional indicators (flags)
        || (cp >= 0x2600 && cp <= 0x27BF)      // misc symbols, dingbats
        || cp == 0x200D || cp == 0xFE0E || cp == 0xFE0F || cp == 0x20E3;
}

std::string lowercase(std::string_view s) {
    auto cps = utf8_decode(s);
    for (auto& cp : cps) cp = to_lower(cp);
    return utf8_encode(cps);
}

}  // namespace tim
