#include "tim/geoparse.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "tim/errors.hpp"
#include "tim/text.hpp"
#include "tim/unicode.hpp"

namespace tim {

TriggerLexicon default_trigger_lexicon() {
    TriggerLexicon lex;
    for (const char* t : {"ul", "al", "pl", "na", "przy", "skrzyżowanie", "skrzyżowaniu",
                          "pętla", "pętli"}) {
        lex.triggers.push_back({t});
    }
    return lex;
}

TriggerLexicon load_triggers(const std::string& path, size_t max_span) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open triggers file: " + path);
    TriggerLexicon lex;
    lex.max_span = max_span;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        lex.triggers.push_back(std::move(toks));
    }
    if (lex.triggers.empty()) {
        throw InputError(path + ": trigger lexicon is empty");
    }
    return lex;
}

namespace {

size_t levenshtein(const char32_t* a, size_t alen, const char32_t* b, size_t blen) {
    if (alen < blen) {
        std::swap(a, b);
        std::swap(alen, blen);
    }
    std::vector<size_t> prev(blen + 1), cur(blen + 1);
    for (size_t j = 0; j <= blen; ++j) prev[j] = j;
    for (size_t i = 1; i <= alen; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= blen; ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[blen];
}

}  // namespace

size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<char32_t> ca = utf8_decode(a);
    std::vector<char32_t> cb = utf8_decode(b);
    return levenshtein(ca.data(), ca.size(), cb.data(), cb.size());
}

std::vector<SpatialMention> detect_mentions(const std::string& text,
                                            const TriggerLexicon& lexicon) {
    std::vector<ScannedToken> tokens = scan_tokens(text);
    std::vector<SpatialMention> mentions;
    for (size_t i = 0; i < tokens.size(); ++i) {
        for (const auto& trigger : lexicon.triggers) {
            if (trigger.empty() || i + trigger.size() > tokens.size()) continue;
            bool hit = true;
            for (size_t k = 0; k < trigger.size(); ++k) {
                if (tokens[i + k].lower != trigger[k]) {
                    hit = false;
                    break;
                }
            }
            if (!hit) continue;
            size_t start = i + trigger.size();
            size_t run = 0;
            while (start + run < tokens.size() && run < lexicon.max_span &&
                   (tokens[start + run].capitalized || tokens[start + run].has_digit)) {
                ++run;
            }
            // Every prefix of the run is a candidate, longest first; matching
            // discards phrasings that swallow the next sentence's first word.
            for (size_t len = run; len >= 1; --len) {
                SpatialMention m;
                for (size_t k = 0; k < len; ++k) {
                    const auto& t = tokens[start + k];
                    m.surface.push_back(text.substr(t.begin, t.end - t.begin));
                }
                m.begin = tokens[start].begin;
                m.end = tokens[start + len - 1].end;
                for (size_t k = 0; k < trigger.size(); ++k) {
                    if (k) m.trigger += ' ';
                    m.trigger += trigger[k];
                }
                mentions.push_back(std::move(m));
            }
        }
    }
    return mentions;
}

double toponym_score(const std::string& normalized_mention, const std::string& normalized_entry) {
    std::vector<char32_t> mention = utf8_decode(normalized_mention);
    std::vector<char32_t> entry = utf8_decode(normalized_entry);
    double best = 1.0;
    bool scored = false;
    for (size_t t = 0; t <= 3; ++t) {
        // Truncation never consumes the whole entry.
        if (t > 0 && entry.size() < t + 1) break;
        const size_t elen = entry.size() - t;
        size_t d = levenshtein(mention.data(), mention.size(), entry.data(), elen);
        size_t denom = std::max(mention.size(), elen);
        double s = denom == 0 ? 0.0 : static_cast<double>(d) / static_cast<double>(denom);
        if (!scored || s < best) {
            best = s;
            scored = true;
        }
    }
    return scored ? best : 1.0;
}

namespace {

// Tie order for equal scores: stop beats intersection beats street.
int kind_priority(ToponymKind k) {
    switch (k) {
        case ToponymKind::stop: return 0;
        case ToponymKind::intersection: return 1;
        case ToponymKind::street: return 2;
    }
    return 2;
}

}  // namespace

std::optional<MatchResult> match_toponym(const SpatialMention& mention, const Gazetteer& gaz,
                                         double threshold) {
    if (gaz.entries.empty()) throw InputError("gazetteer is empty");
    std::string joined;
    for (size_t i = 0; i < mention.surface.size(); ++i) {
        if (i) joined += ' ';
        joined += mention.surface[i];
    }
    const std::string normalized = normalize_name(joined);

    bool found = false;
    size_t best_idx = 0;
    double best_score = 0.0;
    for (size_t i = 0; i < gaz.entries.size(); ++i) {
        double s = toponym_score(normalized, gaz.normalized[i]);
        if (!found) {
            found = true;
            best_idx = i;
            best_score = s;
            continue;
        }
        const auto& cand = gaz.entries[i];
        const auto& best = gaz.entries[best_idx];
        bool better = s < best_score ||
                      (s == best_score &&
                       std::make_pair(kind_priority(cand.kind), cand.name) <
                           std::make_pair(kind_priority(best.kind), best.name));
        if (better) {
            best_idx = i;
            best_score = s;
        }
    }
    if (!found || best_score > threshold) return std::nullopt;
    MatchResult r;
    r.toponym = gaz.entries[best_idx];
    r.score = best_score;
    r.mention = mention;
    return r;
}

std::vector<IncidentLocation> geocode_post(const Post& post, const Gazetteer& gaz,
                                           const TriggerLexicon& lexicon, double threshold) {
    std::vector<IncidentLocation> out;
    std::map<std::tuple<std::string, int, double, double>, size_t> seen;
    for (const auto& mention : detect_mentions(post.text, lexicon)) {
        std::optional<MatchResult> match = match_toponym(mention, gaz, threshold);
        if (!match) continue;
        const Toponym& top = match->toponym;
        auto key = std::make_tuple(top.name, kind_priority(top.kind), top.lat, top.lon);
        double confidence = 1.0 - match->score;
        auto [it, inserted] = seen.emplace(key, out.size());
        if (inserted) {
            out.push_back({top.lat, top.lon, top.kind, confidence});
        } else if (confidence > out[it->second].confidence) {
            out[it->second].confidence = confidence;
        }
    }
    return out;
}

}  // namespace tim
