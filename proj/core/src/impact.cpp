#include "tim/impact.hpp"

#include <algorithm>
#include <set>

#include "tim/errors.hpp"

namespace tim {

namespace {

bool on_segment(const GeoPoint& a, const GeoPoint& b, double lon, double lat) {
    double cross = (b.lon - a.lon) * (lat - a.lat) - (b.lat - a.lat) * (lon - a.lon);
    if (cross != 0.0) return false;
    return std::min(a.lon, b.lon) <= lon && lon <= std::max(a.lon, b.lon) &&
           std::min(a.lat, b.lat) <= lat && lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool point_in_region(const MobilityRegion& region, double lon, double lat) {
    const auto& v = region.ring;
    const size_t n = v.size();
    if (n < 3) return false;
    // Boundary points count as inside; test edges exactly before ray casting.
    for (size_t i = 0; i < n; ++i) {
        if (on_segment(v[i], v[(i + 1) % n], lon, lat)) return true;
    }
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].lat > lat) != (v[j].lat > lat)) {
            double x = v[i].lon +
                       (v[j].lon - v[i].lon) * (lat - v[i].lat) / (v[j].lat - v[i].lat);
            if (lon < x) inside = !inside;
        }
    }
    return inside;
}

const MobilityRegion* locate_region(const std::vector<MobilityRegion>& regions, double lon,
                                    double lat) {
    for (const auto& r : regions) {
        if (point_in_region(r, lon, lat)) return &r;
    }
    return nullptr;
}

int64_t passengers_at(const std::string& region_id, int64_t timestamp, const FlowTable& flows,
                      const TimeZone& tz, int64_t* missing) {
    CivilDateTime civil = tz.to_civil(timestamp);
    const int64_t* cell = flows.find(region_id, civil.hour, day_kind(civil));
    if (!cell) {
        if (missing) ++*missing;
        return 0;
    }
    return *cell;
}

ImpactReport estimate_impact(const std::vector<IncidentPoint>& incidents,
                             const std::vector<MobilityRegion>& regions, const FlowTable& flows,
                             const TimeZone& tz) {
    ImpactReport report;
    std::set<std::string> weekdays;
    for (const auto& incident : incidents) {
        CivilDateTime civil = tz.to_civil(incident.timestamp);
        if (!is_weekday(civil)) continue;
        weekdays.insert(civil.date_key());
        const MobilityRegion* region =
            locate_region(regions, incident.location.lon, incident.location.lat);
        if (!region) {
            report.unmapped_incidents += 1;
            continue;
        }
        int64_t passengers = passengers_at(region->region_id, incident.timestamp, flows, tz,
                                           &report.missing_flow_rows);
        report.per_region[region->region_id] += passengers;
        report.total_passengers += passengers;
    }
    report.distinct_incident_weekdays = static_cast<int64_t>(weekdays.size());
    report.per_day_average = static_cast<double>(report.total_passengers) /
                             static_cast<double>(std::max<int64_t>(1, report.distinct_incident_weekdays));
    return report;
}

FrequencyStats frequency_stats(const std::vector<int64_t>& timestamps) {
    if (timestamps.empty()) throw InputError("frequency_stats requires at least one incident");
    auto [lo, hi] = std::minmax_element(timestamps.begin(), timestamps.end());
    FrequencyStats stats;
    stats.incident_count = static_cast<int64_t>(timestamps.size());
    const double span_seconds = static_cast<double>(*hi - *lo);
    stats.span_days = span_seconds / 86400.0;
    // Single division keeps round values (22.8-day span over 10) exact.
    stats.days_per_incident = span_seconds / (86400.0 * static_cast<double>(timestamps.size()));
    return stats;
}

}  // namespace tim
