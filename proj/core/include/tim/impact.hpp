#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tim/datetime.hpp"
#include "tim/geoparse.hpp"
#include "tim/regions.hpp"

namespace tim {

struct IncidentPoint {
    IncidentLocation location;
    int64_t timestamp = 0;
};

struct ImpactReport {
    int64_t total_passengers = 0;
    std::map<std::string, int64_t> per_region;
    double per_day_average = 0.0;
    int64_t distinct_incident_weekdays = 0;
    int64_t unmapped_incidents = 0;
    // Weekday incidents whose region lacked a flow cell for their hour.
    int64_t missing_flow_rows = 0;
};

struct FrequencyStats {
    int64_t incident_count = 0;
    double span_days = 0.0;
    double days_per_incident = 0.0;
};

// Flow lookup for the incident's civil hour and day kind in the given zone.
// Absent cells yield 0 and bump *missing when provided.
int64_t passengers_at(const std::string& region_id, int64_t timestamp, const FlowTable& flows,
                      const TimeZone& tz, int64_t* missing = nullptr);

// Weekday incidents only; one region contribution per incident. Incidents
// outside every region are tallied in unmapped_incidents.
ImpactReport estimate_impact(const std::vector<IncidentPoint>& incidents,
                             const std::vector<MobilityRegion>& regions, const FlowTable& flows,
                             const TimeZone& tz);

FrequencyStats frequency_stats(const std::vector<int64_t>& timestamps);

}  // namespace tim
