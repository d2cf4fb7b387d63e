#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tim/datetime.hpp"

namespace tim {

struct GeoPoint {
    double lon = 0.0;
    double lat = 0.0;
};

// Simple polygon stored as an open ring (last vertex != first).
struct MobilityRegion {
    std::string region_id;
    std::vector<GeoPoint> ring;
};

struct FlowKey {
    std::string region_id;
    int hour = 0;
    DayKind day_kind = DayKind::weekday;

    bool operator<(const FlowKey& o) const {
        if (region_id != o.region_id) return region_id < o.region_id;
        if (hour != o.hour) return hour < o.hour;
        return static_cast<int>(day_kind) < static_cast<int>(o.day_kind);
    }
};

// Passenger counts per (region, hour-of-day, weekday/weekend) cell.
struct FlowTable {
    std::map<FlowKey, int64_t> cells;

    // Returns nullptr when the cell is absent.
    const int64_t* find(const std::string& region_id, int hour, DayKind kind) const {
        auto it = cells.find(FlowKey{region_id, hour, kind});
        return it == cells.end() ? nullptr : &it->second;
    }
};

// True when the point lies inside the polygon or on its boundary.
bool point_in_region(const MobilityRegion& region, double lon, double lat);

// Returns the region containing the point, first match in file order, or nullptr.
const MobilityRegion* locate_region(const std::vector<MobilityRegion>& regions, double lon,
                                    double lat);

}  // namespace tim
