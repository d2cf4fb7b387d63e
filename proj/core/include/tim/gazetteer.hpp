#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace tim {

enum class ToponymKind { stop, street, intersection };

std::string to_string(ToponymKind k);
ToponymKind toponym_kind_from_string(const std::string& s);

enum class ToponymSource { gtfs, osm, manual };

std::string to_string(ToponymSource s);
ToponymSource toponym_source_from_string(const std::string& s);

struct Toponym {
    std::string name;
    ToponymKind kind = ToponymKind::stop;
    double lat = 0.0;
    double lon = 0.0;
    ToponymSource source = ToponymSource::manual;
};

// Lookup-ready toponym collection. normalized[i] caches normalize_name(entries[i].name);
// the index maps each normalized form to every entry sharing it.
struct Gazetteer {
    std::vector<Toponym> entries;
    std::vector<std::string> normalized;
    std::unordered_map<std::string, std::vector<size_t>> index;

    size_t size() const { return entries.size(); }
};

Gazetteer build_gazetteer(std::vector<Toponym> entries);

}  // namespace tim
