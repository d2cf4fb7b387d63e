#include "tim/gazetteer.hpp"

#include "tim/errors.hpp"
#include "tim/text.hpp"

namespace tim {

std::string to_string(ToponymKind k) {
    switch (k) {
        case ToponymKind::stop: return "stop";
        case ToponymKind::street: return "street";
        case ToponymKind::intersection: return "intersection";
    }
    return "stop";
}

ToponymKind toponym_kind_from_string(const std::string& s) {
    if (s == "stop") return ToponymKind::stop;
    if (s == "street") return ToponymKind::street;
    if (s == "intersection") return ToponymKind::intersection;
    throw InputError("unknown toponym kind: '" + s + "'");
}

std::string to_string(ToponymSource s) {
    switch (s) {
        case ToponymSource::gtfs: return "gtfs";
        case ToponymSource::osm: return "osm";
        case ToponymSource::manual: return "manual";
    }
    return "manual";
}

ToponymSource toponym_source_from_string(const std::string& s) {
    if (s == "gtfs") return ToponymSource::gtfs;
    if (s == "osm") return ToponymSource::osm;
    if (s == "manual") return ToponymSource::manual;
    throw InputError("unknown toponym source: '" + s + "'");
}

Gazetteer build_gazetteer(std::vector<Toponym> entries) {
    Gazetteer g;
    g.entries = std::move(entries);
    g.normalized.reserve(g.entries.size());
    for (size_t i = 0; i < g.entries.size(); ++i) {
        g.normalized.push_back(normalize_name(g.entries[i].name));
        g.index[g.normalized.back()].push_back(i);
    }
    return g;
}

}  // namespace tim
