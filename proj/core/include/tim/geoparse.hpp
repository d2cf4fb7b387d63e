#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tim/gazetteer.hpp"
#include "tim/post.hpp"

namespace tim {

inline constexpr double kDefaultMatchThreshold = 0.3;

struct TriggerLexicon {
    // Lowercase token sequences that announce a place name.
    std::vector<std::vector<std::string>> triggers;
    size_t max_span = 4;
};

TriggerLexicon default_trigger_lexicon();

// triggers.txt: one trigger per line (may be multi-token); '#' lines skipped.
TriggerLexicon load_triggers(const std::string& path, size_t max_span = 4);

// Levenshtein distance with unit costs over Unicode scalar values.
size_t edit_distance(std::string_view a, std::string_view b);

struct SpatialMention {
    std::vector<std::string> surface;
    size_t begin = 0;
    size_t end = 0;
    std::string trigger;
};

struct MatchResult {
    Toponym toponym;
    double score = 0.0;
    SpatialMention mention;
};

struct IncidentLocation {
    double lat = 0.0;
    double lon = 0.0;
    ToponymKind source_kind = ToponymKind::stop;
    double confidence = 0.0;
};

// After each trigger occurrence, the run of capitalized-or-digit-bearing
// tokens (up to max_span) yields one candidate per prefix, longest first.
std::vector<SpatialMention> detect_mentions(const std::string& text,
                                            const TriggerLexicon& lexicon);

// Normalized edit distance minimized over truncating 0..3 trailing characters
// of the entry; the truncation absorbs inflectional suffixes.
double toponym_score(const std::string& normalized_mention, const std::string& normalized_entry);

std::optional<MatchResult> match_toponym(const SpatialMention& mention, const Gazetteer& gaz,
                                         double threshold);

std::vector<IncidentLocation> geocode_post(const Post& post, const Gazetteer& gaz,
                                           const TriggerLexicon& lexicon, double threshold);

}  // namespace tim
