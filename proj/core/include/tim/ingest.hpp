#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tim/gazetteer.hpp"
#include "tim/post.hpp"
#include "tim/regions.hpp"

namespace tim {

// Reads a JSONL post corpus. Posts come back sorted ascending by published_at
// (stable, so equal timestamps keep file order). With a hashtag filter only
// posts carrying it (case-insensitive, in text or the hashtag list) survive.
std::vector<Post> load_posts(const std::string& path,
                             const std::optional<std::string>& hashtag_filter = std::nullopt);

// GTFS stops.txt subset: needs stop_id, stop_name, stop_lat, stop_lon columns.
// Rows identical in (name, lat, lon) at 1e-6 degree resolution collapse to one.
std::vector<Toponym> load_gtfs_stops(const std::string& path);

// gazetteer.csv with columns name, kind, lat, lon, source.
std::vector<Toponym> load_gazetteer_csv(const std::string& path);

// Feature collection of polygon features, each with a region_id property.
// Rings are stored open; a closing vertex equal to the first is dropped.
std::vector<MobilityRegion> load_regions(const std::string& path);

// flows.csv with columns region_id, hour, day_kind, passengers. Every row must
// reference a loaded region; duplicate (region, hour, day_kind) keys are errors.
FlowTable load_flows(const std::string& path, const std::vector<MobilityRegion>& regions);

std::pair<std::vector<MobilityRegion>, FlowTable> load_regions_and_flows(
    const std::string& regions_path, const std::string& flows_path);

}  // namespace tim
