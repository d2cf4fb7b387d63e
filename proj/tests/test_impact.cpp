#include <doctest.h>

#include <cmath>
#include <random>

#include "tim/datetime.hpp"
#include "tim/errors.hpp"
#include "tim/impact.hpp"

using namespace tim;

namespace {

MobilityRegion square(const std::string& id, double lon0, double lat0, double side) {
    return {id,
            {{lon0, lat0}, {lon0 + side, lat0}, {lon0 + side, lat0 + side}, {lon0, lat0 + side}}};
}

IncidentPoint at(double lon, double lat, const std::string& iso) {
    IncidentPoint p;
    p.location.lon = lon;
    p.location.lat = lat;
    p.timestamp = parse_iso8601(iso);
    return p;
}

// Convex-only containment oracle: the point is inside iff it is on the same
// side (or on the edge) for every CCW edge.
bool convex_contains(const std::vector<GeoPoint>& ring, double lon, double lat) {
    const size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
        const GeoPoint& a = ring[i];
        const GeoPoint& b = ring[(i + 1) % n];
        double cross = (b.lon - a.lon) * (lat - a.lat) - (b.lat - a.lat) * (lon - a.lon);
        if (cross < 0.0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("point_in_region on the unit square") {
    MobilityRegion r = square("R", 0.0, 0.0, 1.0);
    CHECK(point_in_region(r, 0.5, 0.5));
    CHECK_FALSE(point_in_region(r, 1.5, 0.5));
    CHECK_FALSE(point_in_region(r, -0.1, 0.5));
    CHECK_FALSE(point_in_region(r, 0.5, 1.0000001));

    // Boundary counts as inside: edges and vertices.
    CHECK(point_in_region(r, 1.0, 0.5));
    CHECK(point_in_region(r, 0.5, 0.0));
    CHECK(point_in_region(r, 0.0, 0.0));
    CHECK(point_in_region(r, 1.0, 1.0));
}

TEST_CASE("point_in_region handles concave rings") {
    // An L shape: the notch at the top right is outside.
    MobilityRegion r{"L", {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    CHECK(point_in_region(r, 0.5, 1.5));
    CHECK(point_in_region(r, 1.5, 0.5));
    CHECK_FALSE(point_in_region(r, 1.5, 1.5));
    CHECK(point_in_region(r, 1.0, 1.5));  // notch edge
}

TEST_CASE("point_in_region rejects degenerate rings") {
    MobilityRegion r{"bad", {{0, 0}, {1, 1}}};
    CHECK_FALSE(point_in_region(r, 0.5, 0.5));
}

TEST_CASE("point_in_region agrees with a convex oracle on random points") {
    // Regular-ish convex hexagon, CCW.
    MobilityRegion hex{"H",
                       {{2.0, 0.0},
                        {4.0, 1.0},
                        {4.0, 3.0},
                        {2.0, 4.0},
                        {0.0, 3.0},
                        {0.0, 1.0}}};
    std::mt19937_64 rng(17);
    auto coord = [&]() { return static_cast<double>(rng() % 5000) / 1000.0 - 0.5; };
    for (int i = 0; i < 1000; ++i) {
        double lon = coord();
        double lat = coord();
        CHECK(point_in_region(hex, lon, lat) == convex_contains(hex.ring, lon, lat));
    }
}

TEST_CASE("locate_region picks the first containing region") {
    std::vector<MobilityRegion> regions = {square("A", 0, 0, 1), square("B", 1, 0, 1)};
    REQUIRE(locate_region(regions, 0.5, 0.5) != nullptr);
    CHECK(locate_region(regions, 0.5, 0.5)->region_id == "A");
    CHECK(locate_region(regions, 1.5, 0.5)->region_id == "B");
    // The shared edge lies on both boundaries; file order decides.
    CHECK(locate_region(regions, 1.0, 0.5)->region_id == "A");
    CHECK(locate_region(regions, 2.5, 0.5) == nullptr);
}

TEST_CASE("passengers_at uses the civil hour of the given zone") {
    FlowTable flows;
    flows.cells[{"R1", 7, DayKind::weekday}] = 800;
    flows.cells[{"R1", 8, DayKind::weekday}] = 1200;
    TimeZone waw = TimeZone::named("Europe/Warsaw");

    // 2023-03-06 06:59:59Z is 07:59:59 in Warsaw: still hour 7.
    CHECK(passengers_at("R1", parse_iso8601("2023-03-06T06:59:59Z"), flows, waw) == 800);
    CHECK(passengers_at("R1", parse_iso8601("2023-03-06T07:00:00Z"), flows, waw) == 1200);

    int64_t missing = 0;
    CHECK(passengers_at("R1", parse_iso8601("2023-03-06T12:00:00Z"), flows, waw, &missing) == 0);
    CHECK(missing == 1);
    CHECK(passengers_at("R2", parse_iso8601("2023-03-06T07:00:00Z"), flows, waw, &missing) == 0);
    CHECK(missing == 2);
}

TEST_CASE("estimate_impact sums weekday flows per region") {
    std::vector<MobilityRegion> regions = {square("R1", 16.95, 51.09, 0.05),
                                           square("R2", 17.00, 51.09, 0.05)};
    FlowTable flows;
    flows.cells[{"R1", 8, DayKind::weekday}] = 1200;
    flows.cells[{"R1", 9, DayKind::weekday}] = 900;
    flows.cells[{"R2", 17, DayKind::weekday}] = 1000;
    flows.cells[{"R2", 8, DayKind::weekend}] = 9999;  // never hit by weekday posts
    TimeZone waw = TimeZone::named("Europe/Warsaw");

    std::vector<IncidentPoint> incidents = {
        at(16.99, 51.12, "2023-03-06T08:15:00+01:00"),  // R1 h8 Mon  -> 1200
        at(16.97, 51.10, "2023-03-06T09:40:00+01:00"),  // R1 h9 Mon  -> 900
        at(17.03, 51.10, "2023-03-07T17:25:00+01:00"),  // R2 h17 Tue -> 1000
        at(17.03, 51.10, "2023-03-08T06:10:00+01:00"),  // R2 h6 Wed  -> missing cell
        at(20.00, 52.00, "2023-03-09T08:00:00+01:00"),  // Thu, outside every region
    };

    ImpactReport r = estimate_impact(incidents, regions, flows, waw);
    CHECK(r.total_passengers == 3100);
    CHECK(r.per_region.at("R1") == 2100);
    CHECK(r.per_region.at("R2") == 1000);
    CHECK(r.unmapped_incidents == 1);
    CHECK(r.missing_flow_rows == 1);
    // Mon, Tue, Wed, Thu: the unmapped incident still marks its day.
    CHECK(r.distinct_incident_weekdays == 4);
    CHECK(r.per_day_average == doctest::Approx(3100.0 / 4.0));
}

TEST_CASE("estimate_impact ignores weekend incidents entirely") {
    std::vector<MobilityRegion> regions = {square("R1", 16.95, 51.09, 0.05)};
    FlowTable flows;
    flows.cells[{"R1", 8, DayKind::weekday}] = 1200;
    flows.cells[{"R1", 12, DayKind::weekend}] = 400;
    TimeZone waw = TimeZone::named("Europe/Warsaw");

    std::vector<IncidentPoint> weekday_only = {
        at(16.99, 51.12, "2023-03-06T08:15:00+01:00"),
    };
    ImpactReport base = estimate_impact(weekday_only, regions, flows, waw);

    auto with_weekends = weekday_only;
    with_weekends.push_back(at(16.99, 51.12, "2023-03-18T12:10:00+01:00"));  // Sat
    with_weekends.push_back(at(16.99, 51.12, "2023-03-19T08:15:00+01:00"));  // Sun
    with_weekends.push_back(at(99.0, 0.0, "2023-03-19T09:00:00+01:00"));     // Sun, unmapped
    ImpactReport extended = estimate_impact(with_weekends, regions, flows, waw);

    CHECK(extended.total_passengers == base.total_passengers);
    CHECK(extended.per_region == base.per_region);
    CHECK(extended.distinct_incident_weekdays == base.distinct_incident_weekdays);
    CHECK(extended.unmapped_incidents == base.unmapped_incidents);
    CHECK(extended.missing_flow_rows == base.missing_flow_rows);
    CHECK(extended.per_day_average == base.per_day_average);
}

TEST_CASE("estimate_impact counts a day once across multiple incidents") {
    std::vector<MobilityRegion> regions = {square("R1", 16.95, 51.09, 0.05)};
    FlowTable flows;
    flows.cells[{"R1", 8, DayKind::weekday}] = 100;
    flows.cells[{"R1", 9, DayKind::weekday}] = 50;
    TimeZone waw = TimeZone::named("Europe/Warsaw");

    std::vector<IncidentPoint> incidents = {
        at(16.99, 51.12, "2023-03-06T08:05:00+01:00"),
        at(16.99, 51.12, "2023-03-06T09:55:00+01:00"),
    };
    ImpactReport r = estimate_impact(incidents, regions, flows, waw);
    CHECK(r.distinct_incident_weekdays == 1);
    CHECK(r.total_passengers == 150);
    CHECK(r.per_day_average == doctest::Approx(150.0));
}

TEST_CASE("estimate_impact is translation consistent") {
    // Shifting every region and incident by the same offset changes nothing.
    const double dlon = 1.25, dlat = -0.75;
    std::vector<MobilityRegion> regions = {square("R1", 16.95, 51.09, 0.05),
                                           square("R2", 17.00, 51.09, 0.05)};
    std::vector<MobilityRegion> shifted = regions;
    for (auto& r : shifted) {
        for (auto& v : r.ring) {
            v.lon += dlon;
            v.lat += dlat;
        }
    }
    FlowTable flows;
    flows.cells[{"R1", 8, DayKind::weekday}] = 1200;
    flows.cells[{"R2", 17, DayKind::weekday}] = 1000;
    TimeZone waw = TimeZone::named("Europe/Warsaw");

    std::vector<IncidentPoint> incidents = {
        at(16.99, 51.12, "2023-03-06T08:15:00+01:00"),
        at(17.03, 51.10, "2023-03-07T17:25:00+01:00"),
        at(25.0, 10.0, "2023-03-08T08:00:00+01:00"),
    };
    std::vector<IncidentPoint> shifted_incidents = incidents;
    for (auto& p : shifted_incidents) {
        p.location.lon += dlon;
        p.location.lat += dlat;
    }

    ImpactReport a = estimate_impact(incidents, regions, flows, waw);
    ImpactReport b = estimate_impact(shifted_incidents, shifted, flows, waw);
    CHECK(a.total_passengers == b.total_passengers);
    CHECK(a.per_region == b.per_region);
    CHECK(a.unmapped_incidents == b.unmapped_incidents);
    CHECK(a.distinct_incident_weekdays == b.distinct_incident_weekdays);
}

TEST_CASE("estimate_impact with no incidents is all zeros") {
    std::vector<MobilityRegion> regions = {square("R1", 0, 0, 1)};
    ImpactReport r = estimate_impact({}, regions, FlowTable{}, TimeZone::utc());
    CHECK(r.total_passengers == 0);
    CHECK(r.per_region.empty());
    CHECK(r.distinct_incident_weekdays == 0);
    CHECK(r.per_day_average == doctest::Approx(0.0));
}

TEST_CASE("frequency_stats keeps round day spans exact") {
    // Ten incidents over exactly 22.8 days.
    const int64_t start = parse_iso8601("2023-03-01T00:00:00Z");
    const int64_t span = static_cast<int64_t>(22.8 * 86400.0);  // 1969920 seconds
    std::vector<int64_t> ts;
    for (int i = 0; i < 10; ++i) ts.push_back(start + span * i / 9);
    ts.back() = start + span;
    ts.front() = start;

    FrequencyStats f = frequency_stats(ts);
    CHECK(f.incident_count == 10);
    CHECK(f.span_days == 22.8);            // bitwise: single division
    CHECK(f.days_per_incident == 2.28);    // bitwise: no compounding of rounding
}

TEST_CASE("frequency_stats handles unsorted input and singletons") {
    std::vector<int64_t> ts = {1678086900, 1678000000, 1678090000};
    FrequencyStats f = frequency_stats(ts);
    CHECK(f.incident_count == 3);
    CHECK(f.span_days == doctest::Approx((1678090000 - 1678000000) / 86400.0));

    FrequencyStats one = frequency_stats({1678086900});
    CHECK(one.incident_count == 1);
    CHECK(one.span_days == 0.0);
    CHECK(one.days_per_incident == 0.0);

    CHECK_THROWS_AS(frequency_stats({}), InputError);
}
