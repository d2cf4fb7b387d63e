#include "tim/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "tim/csv.hpp"
#include "tim/errors.hpp"
#include "tim/unicode.hpp"

namespace tim {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& raw, const std::string& file, size_t line,
                          const std::string& what) {
    std::string s = trim(raw);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw InputError(file, line, "cannot parse " + what + " from '" + raw + "'");
    }
    return v;
}

int64_t parse_int_field(const std::string& raw, const std::string& file, size_t line,
                        const std::string& what) {
    std::string s = trim(raw);
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw InputError(file, line, "cannot parse " + what + " from '" + raw + "'");
    }
    return v;
}

void check_coords(double lat, double lon, const std::string& file, size_t line) {
    if (lat < -90.0 || lat > 90.0) {
        throw InputError(file, line, "latitude " + std::to_string(lat) + " outside [-90, 90]");
    }
    if (lon < -180.0 || lon > 180.0) {
        throw InputError(file, line, "longitude " + std::to_string(lon) + " outside [-180, 180]");
    }
}

std::string strip_hash(const std::string& s) {
    return !s.empty() && s[0] == '#' ? s.substr(1) : s;
}

bool post_has_hashtag(const Post& p, const std::string& filter_lower) {
    if (lowercase(p.text).find(filter_lower) != std::string::npos) return true;
    const std::string bare = strip_hash(filter_lower);
    for (const auto& h : p.hashtags) {
        if (strip_hash(lowercase(h)) == bare) return true;
    }
    return false;
}

int require_column(const CsvTable& t, const std::string& path, const std::string& name) {
    int c = t.column(name);
    if (c < 0) throw InputError(path + ": missing required column '" + name + "'");
    return c;
}

// Cross product sign of (b - a) x (c - a); 0 means collinear.
int orientation(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) {
    double v = (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool within_bbox(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) {
    return std::min(a.lon, b.lon) <= p.lon && p.lon <= std::max(a.lon, b.lon) &&
           std::min(a.lat, b.lat) <= p.lat && p.lat <= std::max(a.lat, b.lat);
}

bool segments_intersect(const GeoPoint& p1, const GeoPoint& p2, const GeoPoint& q1,
                        const GeoPoint& q2) {
    int o1 = orientation(p1, p2, q1);
    int o2 = orientation(p1, p2, q2);
    int o3 = orientation(q1, q2, p1);
    int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && within_bbox(p1, p2, q1)) return true;
    if (o2 == 0 && within_bbox(p1, p2, q2)) return true;
    if (o3 == 0 && within_bbox(q1, q2, p1)) return true;
    if (o4 == 0 && within_bbox(q1, q2, p2)) return true;
    return false;
}

void check_ring_simple(const MobilityRegion& r, const std::string& path) {
    const auto& v = r.ring;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // Edges sharing a vertex are allowed to touch there.
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
                throw InputError(path + ": region '" + r.region_id +
                                 "' has a self-intersecting polygon");
            }
        }
    }
}

}  // namespace

std::vector<Post> load_posts(const std::string& path,
                             const std::optional<std::string>& hashtag_filter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open posts file: " + path);

    std::vector<Post> posts;
    std::unordered_set<std::string> ids;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        Post p = parse_post_json_line(line, path, lineno);
        if (!ids.insert(p.id).second) {
            throw InputError(path, lineno, "duplicate post id '" + p.id + "'");
        }
        posts.push_back(std::move(p));
    }

    if (hashtag_filter && !hashtag_filter->empty()) {
        const std::string f = lowercase(*hashtag_filter);
        std::erase_if(posts, [&](const Post& p) { return !post_has_hashtag(p, f); });
    }
    std::stable_sort(posts.begin(), posts.end(),
                     [](const Post& a, const Post& b) { return a.published_at < b.published_at; });
    return posts;
}

std::vector<Toponym> load_gtfs_stops(const std::string& path) {
    CsvTable t = read_csv_file(path);
    int c_name = require_column(t, path, "stop_name");
    int c_lat = require_column(t, path, "stop_lat");
    int c_lon = require_column(t, path, "stop_lon");
    require_column(t, path, "stop_id");

    std::vector<Toponym> out;
    std::set<std::tuple<std::string, int64_t, int64_t>> seen;
    for (const auto& row : t.rows) {
        Toponym top;
        top.name = trim(row.fields.at(c_name));
        if (top.name.empty()) throw InputError(path, row.line, "empty stop_name");
        top.kind = ToponymKind::stop;
        top.source = ToponymSource::gtfs;
        top.lat = parse_double_field(row.fields.at(c_lat), path, row.line, "stop_lat");
        top.lon = parse_double_field(row.fields.at(c_lon), path, row.line, "stop_lon");
        check_coords(top.lat, top.lon, path, row.line);
        auto key = std::make_tuple(top.name, std::llround(top.lat * 1e6),
                                   std::llround(top.lon * 1e6));
        if (!seen.insert(key).second) continue;
        out.push_back(std::move(top));
    }
    return out;
}

std::vector<Toponym> load_gazetteer_csv(const std::string& path) {
    CsvTable t = read_csv_file(path);
    int c_name = require_column(t, path, "name");
    int c_kind = require_column(t, path, "kind");
    int c_lat = require_column(t, path, "lat");
    int c_lon = require_column(t, path, "lon");
    int c_source = require_column(t, path, "source");

    std::vector<Toponym> out;
    for (const auto& row : t.rows) {
        Toponym top;
        top.name = trim(row.fields.at(c_name));
        if (top.name.empty()) throw InputError(path, row.line, "empty name");
        try {
            top.kind = toponym_kind_from_string(trim(row.fields.at(c_kind)));
            top.source = toponym_source_from_string(trim(row.fields.at(c_source)));
        } catch (const InputError& e) {
            throw InputError(path, row.line, e.what());
        }
        top.lat = parse_double_field(row.fields.at(c_lat), path, row.line, "lat");
        top.lon = parse_double_field(row.fields.at(c_lon), path, row.line, "lon");
        check_coords(top.lat, top.lon, path, row.line);
        out.push_back(std::move(top));
    }
    return out;
}

std::vector<MobilityRegion> load_regions(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open regions file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc["features"].is_array()) {
        throw InputError(path + ": expected a FeatureCollection with a features array");
    }

    std::vector<MobilityRegion> regions;
    std::unordered_set<std::string> ids;
    for (const auto& feature : doc["features"]) {
        MobilityRegion r;
        if (!feature.contains("properties") || !feature["properties"].contains("region_id") ||
            !feature["properties"]["region_id"].is_string()) {
            throw InputError(path + ": feature missing string property 'region_id'");
        }
        r.region_id = feature["properties"]["region_id"].get<std::string>();
        if (!ids.insert(r.region_id).second) {
            throw InputError(path + ": duplicate region_id '" + r.region_id + "'");
        }
        const auto& geom = feature.value("geometry", json());
        if (geom.value("type", "") != "Polygon" || !geom.contains("coordinates") ||
            !geom["coordinates"].is_array() || geom["coordinates"].empty()) {
            throw InputError(path + ": region '" + r.region_id +
                             "' must carry a Polygon geometry");
        }
        if (geom["coordinates"].size() > 1) {
            throw InputError(path + ": region '" + r.region_id +
                             "' has interior rings (holes are not supported)");
        }
        for (const auto& pos : geom["coordinates"][0]) {
            if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
                throw InputError(path + ": region '" + r.region_id +
                                 "' has a malformed coordinate pair");
            }
            GeoPoint pt{pos[0].get<double>(), pos[1].get<double>()};
            check_coords(pt.lat, pt.lon, path, 0);
            if (!r.ring.empty() && r.ring.back().lon == pt.lon && r.ring.back().lat == pt.lat) {
                continue;
            }
            r.ring.push_back(pt);
        }
        // Closed input rings are stored open.
        if (r.ring.size() > 1 && r.ring.front().lon == r.ring.back().lon &&
            r.ring.front().lat == r.ring.back().lat) {
            r.ring.pop_back();
        }
        std::set<std::pair<double, double>> distinct;
        for (const auto& pt : r.ring) distinct.insert({pt.lon, pt.lat});
        if (distinct.size() < 3) {
            throw InputError(path + ": region '" + r.region_id +
                             "' polygon has fewer than 3 distinct vertices");
        }
        check_ring_simple(r, path);
        regions.push_back(std::move(r));
    }
    return regions;
}

FlowTable load_flows(const std::string& path, const std::vector<MobilityRegion>& regions) {
    CsvTable t = read_csv_file(path);
    int c_region = require_column(t, path, "region_id");
    int c_hour = require_column(t, path, "hour");
    int c_kind = require_column(t, path, "day_kind");
    int c_pass = require_column(t, path, "passengers");

    std::unordered_set<std::string> known;
    for (const auto& r : regions) known.insert(r.region_id);

    FlowTable flows;
    for (const auto& row : t.rows) {
        FlowKey key;
        key.region_id = trim(row.fields.at(c_region));
        if (!known.count(key.region_id)) {
            throw InputError(path, row.line, "flow row references unknown region '" +
                             key.region_id + "'");
        }
        int64_t hour = parse_int_field(row.fields.at(c_hour), path, row.line, "hour");
        if (hour < 0 || hour > 23) {
            throw InputError(path, row.line,
                             "hour " + std::to_string(hour) + " outside valid range 0-23");
        }
        key.hour = static_cast<int>(hour);
        const std::string kind = trim(row.fields.at(c_kind));
        if (kind == "weekday") {
            key.day_kind = DayKind::weekday;
        } else if (kind == "weekend") {
            key.day_kind = DayKind::weekend;
        } else {
            throw InputError(path, row.line,
                             "day_kind '" + kind + "' must be weekday or weekend");
        }
        int64_t passengers = parse_int_field(row.fields.at(c_pass), path, row.line, "passengers");
        if (passengers < 0) {
            throw InputError(path, row.line, "passengers must be non-negative");
        }
        if (!flows.cells.emplace(key, passengers).second) {
            throw InputError(path, row.line,
                             "duplicate flow cell (" + key.region_id + ", " +
                             std::to_string(key.hour) + ", " + kind + ")");
        }
    }
    return flows;
}

std::pair<std::vector<MobilityRegion>, FlowTable> load_regions_and_flows(
    const std::string& regions_path, const std::string& flows_path) {
    std::vector<MobilityRegion> regions = load_regions(regions_path);
    FlowTable flows = load_flows(flows_path, regions);
    return {std::move(regions), std::move(flows)};
}

}  // namespace tim
