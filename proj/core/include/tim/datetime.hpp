#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tim {

// Timestamps are UTC epoch seconds throughout the library. Inputs must carry
// an explicit zone designator; local-looking timestamps are rejected because
// the impact aggregation is hour-sensitive.

// Accepts YYYY-MM-DD{T or space}HH:MM:SS[.fff](Z|±HH:MM|±HHMM|±HH).
// Fractional seconds are truncated. Throws InputError on malformed input or
// a missing zone designator.
int64_t parse_iso8601(std::string_view s);

// Canonical UTC form: YYYY-MM-DDTHH:MM:SSZ.
std::string format_iso8601_utc(int64_t epoch);

struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
    int weekday = 3;  // 0 = Monday .. 6 = Sunday

    // Sortable yyyy-mm-dd key for counting distinct dates.
    std::string date_key() const;
};

enum class DayKind { weekday, weekend };

bool is_weekday(const CivilDateTime& c);
DayKind day_kind(const CivilDateTime& c);

// Proleptic Gregorian calendar <-> days since 1970-01-01.
int64_t days_from_civil(int year, int month, int day);
void civil_from_days(int64_t days, int& year, int& month, int& day);

// A fixed UTC offset or an IANA zone backed by the system tzdata files
// (TZif, RFC 8536). Offsets beyond the zone's last recorded transition reuse
// the last transition's offset; system files currently extend past 2037.
class TimeZone {
public:
    TimeZone();  // UTC

    static TimeZone utc();
    static TimeZone fixed(const std::string& name, int64_t offset_seconds);

    // "UTC", "UTC±HH[:MM]", or an IANA name like "Europe/Warsaw" looked up
    // under /usr/share/zoneinfo (override with tzdata_dir for tests).
    // Throws InputError for unknown names.
    static TimeZone named(const std::string& name,
                          const std::string& tzdata_dir = "/usr/share/zoneinfo");

    const std::string& name() const { return name_; }
    int64_t offset_at(int64_t epoch) const;
    CivilDateTime to_civil(int64_t epoch) const;

private:
    std::string name_ = "UTC";
    int64_t base_offset_ = 0;  // fixed offset; also used before first transition
    std::vector<int64_t> transitions_;  // UTC instants, ascending
    std::vector<int64_t> offsets_;      // offsets_[i] applies from transitions_[i]
};

}  // namespace tim
