#include "tim/datetime.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "tim/errors.hpp"

namespace tim {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

bool valid_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int mdays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = mdays[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) dim = 29;
    return d <= dim;
}

}  // namespace

int64_t days_from_civil(int y, int m, int d) {
    // Howard Hinnant's algorithm, public domain.
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

int64_t parse_iso8601(std::string_view s) {
    // Layout: 0123456789012345678
    //         YYYY-MM-DD*HH:MM:SS then optional .fff then zone
    if (s.size() < 19) throw InputError("malformed timestamp: " + std::string(s));
    auto sub = [&](size_t pos, size_t n) { return s.substr(pos, n); };
    if (!all_digits(sub(0, 4)) || s[4] != '-' || !all_digits(sub(5, 2)) || s[7] != '-' ||
        !all_digits(sub(8, 2)) || (s[10] != 'T' && s[10] != ' ') || !all_digits(sub(11, 2)) ||
        s[13] != ':' || !all_digits(sub(14, 2)) || s[16] != ':' || !all_digits(sub(17, 2))) {
        throw InputError("malformed timestamp: " + std::string(s));
    }
    int year = to_int(sub(0, 4)), month = to_int(sub(5, 2)), day = to_int(sub(8, 2));
    int hour = to_int(sub(11, 2)), minute = to_int(sub(14, 2)), second = to_int(sub(17, 2));
    if (!valid_date(year, month, day) || hour > 23 || minute > 59 || second > 60) {
        throw InputError("timestamp out of range: " + std::string(s));
    }
    if (second == 60) second = 59;  // leap second, clamp

    size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) throw InputError("malformed timestamp: " + std::string(s));
    }
    if (pos >= s.size()) {
        throw InputError("timestamp has no timezone designator (refusing to assume local): " +
                         std::string(s));
    }

    int64_t offset = 0;
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
        offset = 0;
    } else if (s[pos] == '+' || s[pos] == '-') {
        int sign = s[pos] == '+' ? 1 : -1;
        std::string_view z = s.substr(pos + 1);
        int oh = 0, om = 0;
        if (z.size() == 2 && all_digits(z)) {
            oh = to_int(z);
        } else if (z.size() == 5 && z[2] == ':' && all_digits(z.substr(0, 2)) &&
                   all_digits(z.substr(3, 2))) {
            oh = to_int(z.substr(0, 2));
            om = to_int(z.substr(3, 2));
        } else if (z.size() == 4 && all_digits(z)) {
            oh = to_int(z.substr(0, 2));
            om = to_int(z.substr(2, 2));
        } else {
            throw InputError("malformed timezone designator: " + std::string(s));
        }
        if (oh > 18 || om > 59) throw InputError("timezone offset out of range: " + std::string(s));
        offset = sign * (oh * 3600LL + om * 60LL);
    } else {
        throw InputError("malformed timezone designator: " + std::string(s));
    }

    int64_t days = days_from_civil(year, month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601_utc(int64_t epoch) {
    int64_t days = epoch / 86400;
    int64_t rem = epoch % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::string CivilDateTime::date_key() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

bool is_weekday(const CivilDateTime& c) { return c.weekday < 5; }

DayKind day_kind(const CivilDateTime& c) {
    return is_weekday(c) ? DayKind::weekday : DayKind::weekend;
}

TimeZone::TimeZone() = default;

TimeZone TimeZone::utc() { return TimeZone(); }

TimeZone TimeZone::fixed(const std::string& name, int64_t offset_seconds) {
    TimeZone tz;
    tz.name_ = name;
    tz.base_offset_ = offset_seconds;
    return tz;
}

namespace {

uint32_t read_u32(const unsigned char* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

int64_t read_i64(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return static_cast<int64_t>(v);
}

int32_t read_i32(const unsigned char* p) { return static_cast<int32_t>(read_u32(p)); }

struct TzifCounts {
    uint32_t isutcnt, isstdcnt, leapcnt, timecnt, typecnt, charcnt;
};

TzifCounts read_counts(const unsigned char* h) {
    TzifCounts c;
    c.isutcnt = read_u32(h + 20);
    c.isstdcnt = read_u32(h + 24);
    c.leapcnt = read_u32(h + 28);
    c.timecnt = read_u32(h + 32);
    c.typecnt = read_u32(h + 36);
    c.charcnt = read_u32(h + 40);
    return c;
}

size_t data_block_size(const TzifCounts& c, int time_size) {
    return size_t(c.timecnt) * time_size + c.timecnt + size_t(c.typecnt) * 6 + c.charcnt +
           size_t(c.leapcnt) * (time_size + 4) + c.isstdcnt + c.isutcnt;
}

// Parses "±HH" or "±HH:MM" after a "UTC" prefix.
bool parse_fixed_offset(const std::string& name, int64_t& offset) {
    if (name == "UTC" || name == "utc" || name == "Z") {
        offset = 0;
        return true;
    }
    if (name.rfind("UTC", 0) != 0 || name.size() < 4) return false;
    std::string_view z(name);
    z.remove_prefix(3);
    int sign = z[0] == '+' ? 1 : z[0] == '-' ? -1 : 0;
    if (sign == 0) return false;
    z.remove_prefix(1);
    int oh = 0, om = 0;
    if (z.size() == 2 && all_digits(z)) {
        oh = to_int(z);
    } else if (z.size() == 5 && z[2] == ':' && all_digits(z.substr(0, 2)) &&
               all_digits(z.substr(3, 2))) {
        oh = to_int(z.substr(0, 2));
        om = to_int(z.substr(3, 2));
    } else {
        return false;
    }
    offset = sign * (oh * 3600LL + om * 60LL);
    return true;
}

}  // namespace

TimeZone TimeZone::named(const std::string& name, const std::string& tzdata_dir) {
    int64_t fixed_off = 0;
    if (parse_fixed_offset(name, fixed_off)) return fixed(name, fixed_off);
    if (name.find("..") != std::string::npos || name.find('/') == 0) {
        throw InputError("invalid timezone name: " + name);
    }

    std::string path = tzdata_dir + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("unknown timezone '" + name + "' (no tzdata at " + path + ")");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    size_t n = bytes.size();

    auto fail = [&]() -> TimeZone {
        throw InputError("cannot parse tzdata file for '" + name + "'");
    };
    if (n < 44 || bytes.compare(0, 4, "TZif") != 0) return fail();
    char version = bytes[4];
    TzifCounts c1 = read_counts(p);

    size_t off = 44;
    int time_size = 4;
    TzifCounts counts = c1;
    if (version >= '2') {
        // Skip the 32-bit v1 block, then read the 64-bit block.
        off += data_block_size(c1, 4);
        if (off + 44 > n) return fail();
        if (bytes.compare(off, 4, "TZif") != 0) return fail();
        counts = read_counts(p + off);
        off += 44;
        time_size = 8;
    }
    if (counts.typecnt == 0) return fail();
    size_t need = data_block_size(counts, time_size);
    if (off + need > n) return fail();

    std::vector<int64_t> trans(counts.timecnt);
    for (uint32_t i = 0; i < counts.timecnt; ++i) {
        trans[i] = time_size == 8 ? read_i64(p + off + i * 8)
                                  : static_cast<int64_t>(read_i32(p + off + i * 4));
    }
    size_t idx_off = off + size_t(counts.timecnt) * time_size;
    size_t type_off = idx_off + counts.timecnt;

    std::vector<int64_t> type_offsets(counts.typecnt);
    std::vector<bool> type_isdst(counts.typecnt);
    for (uint32_t i = 0; i < counts.typecnt; ++i) {
        type_offsets[i] = read_i32(p + type_off + i * 6);
        type_isdst[i] = p[type_off + i * 6 + 4] != 0;
    }

    TimeZone tz;
    tz.name_ = name;
    // Offset before the first transition: first standard-time type, falling
    // back to type 0 (RFC 8536 section 3.2 guidance).
    uint32_t first_type = 0;
    for (uint32_t i = 0; i < counts.typecnt; ++i) {
        if (!type_isdst[i]) {
            first_type = i;
            break;
        }
    }
    tz.base_offset_ = type_offsets[first_type];
    tz.transitions_ = std::move(trans);
    tz.offsets_.resize(counts.timecnt);
    for (uint32_t i = 0; i < counts.timecnt; ++i) {
        unsigned char t = p[idx_off + i];
        if (t >= counts.typecnt) return fail();
        tz.offsets_[i] = type_offsets[t];
    }
    return tz;
}

int64_t TimeZone::offset_at(int64_t epoch) const {
    if (transitions_.empty()) return base_offset_;
    auto it = std::upper_bound(transitions_.begin(), transitions_.end(), epoch);
    if (it == transitions_.begin()) return base_offset_;
    return offsets_[(it - transitions_.begin()) - 1];
}

CivilDateTime TimeZone::to_civil(int64_t epoch) const {
    int64_t local = epoch + offset_at(epoch);
    int64_t days = local / 86400;
    int64_t rem = local % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    CivilDateTime c;
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    c.weekday = static_cast<int>(((days % 7) + 7 + 3) % 7);  // 1970-01-01 is a Thursday
    return c;
}

}  // namespace tim
