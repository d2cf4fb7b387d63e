#include "tim/report.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tim/csv.hpp"
#include "tim/datetime.hpp"
#include "tim/errors.hpp"
#include "tim/ingest.hpp"
#include "tim/regions.hpp"

namespace fs = std::filesystem;

namespace tim {

using nlohmann::json;

const std::vector<std::string> kExcludedFromAnalysis = {"event", "renovation", "fix"};

std::string incident_record_to_json_line(const IncidentRecord& record) {
    json j;
    j["post_id"] = record.post_id;
    j["label"] = record.label;
    j["published_at"] = format_iso8601_utc(record.published_at);
    j["locations"] = json::array();
    for (const auto& loc : record.locations) {
        j["locations"].push_back({{"lat", loc.lat},
                                  {"lon", loc.lon},
                                  {"kind", to_string(loc.source_kind)},
                                  {"confidence", loc.confidence}});
    }
    j["lines"] = record.lines;
    j["region_id"] = record.region_id ? json(*record.region_id) : json(nullptr);
    j["interactions"] = {{"reactions_total", record.interactions.reactions_total},
                         {"comments_total", record.interactions.comments_total},
                         {"interactions", record.interactions.interactions},
                         {"reaction_breakdown", record.interactions.reaction_breakdown}};
    return j.dump();
}

IncidentRecord incident_record_from_json_line(const std::string& line, const std::string& file,
                                              size_t lineno) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw InputError(file, lineno, std::string("malformed JSON: ") + e.what());
    }
    IncidentRecord r;
    try {
        r.post_id = j.at("post_id").get<std::string>();
        r.label = j.at("label").get<std::string>();
        r.published_at = parse_iso8601(j.at("published_at").get<std::string>());
        for (const auto& loc : j.value("locations", json::array())) {
            IncidentLocation l;
            l.lat = loc.at("lat").get<double>();
            l.lon = loc.at("lon").get<double>();
            l.source_kind = toponym_kind_from_string(loc.at("kind").get<std::string>());
            l.confidence = loc.value("confidence", 0.0);
            r.locations.push_back(l);
        }
        if (j.contains("lines")) r.lines = j["lines"].get<std::vector<std::string>>();
        if (j.contains("region_id") && j["region_id"].is_string()) {
            r.region_id = j["region_id"].get<std::string>();
        }
        if (j.contains("interactions")) {
            const json& it = j["interactions"];
            r.interactions.post_id = r.post_id;
            r.interactions.reactions_total = it.value("reactions_total", int64_t(0));
            r.interactions.comments_total = it.value("comments_total", int64_t(0));
            r.interactions.interactions = it.value("interactions", int64_t(0));
            if (it.contains("reaction_breakdown")) {
                for (const auto& [kind, count] : it["reaction_breakdown"].items()) {
                    r.interactions.reaction_breakdown[kind] = count.get<int64_t>();
                }
            }
        }
    } catch (const json::exception& e) {
        throw InputError(file, lineno, std::string("bad incident record: ") + e.what());
    }
    if (r.post_id.empty()) throw InputError(file, lineno, "post_id must be non-empty");
    return r;
}

std::vector<IncidentRecord> load_incident_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open incidents file: " + path);
    std::vector<IncidentRecord> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        records.push_back(incident_record_from_json_line(line, path, lineno));
    }
    return records;
}

std::string classified_post_to_json_line(const Post& post, const std::string& label) {
    json j = json::parse(post_to_json_line(post));
    j["label"] = label;
    return j.dump();
}

std::vector<ClassifiedPost> load_classified_posts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open posts file: " + path);
    std::vector<ClassifiedPost> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ClassifiedPost cp;
        cp.post = parse_post_json_line(line, path, lineno);
        cp.label = "unknown";
        json j = json::parse(line, nullptr, false);
        if (j.is_object() && j.contains("label") && j["label"].is_string()) {
            cp.label = j["label"].get<std::string>();
        }
        out.push_back(std::move(cp));
    }
    return out;
}

std::string export_geojson(const std::vector<IncidentRecord>& records, size_t* skipped) {
    std::vector<const IncidentRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const IncidentRecord* a, const IncidentRecord* b) {
                  return a->post_id < b->post_id;
              });
    size_t skip_count = 0;
    json features = json::array();
    for (const IncidentRecord* r : sorted) {
        if (r->locations.empty()) {
            ++skip_count;
            continue;
        }
        const IncidentLocation& loc = r->locations.front();
        json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Point"},
                               {"coordinates", json::array({loc.lon, loc.lat})}};
        feature["properties"] = {
            {"post_id", r->post_id},
            {"label", r->label},
            {"interactions", r->interactions.interactions},
            {"lines", r->lines},
            {"region_id", r->region_id ? json(*r->region_id) : json(nullptr)}};
        features.push_back(std::move(feature));
    }
    if (skipped) *skipped = skip_count;
    json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    return doc.dump(2) + "\n";
}

namespace {

std::string distribution_csv(const std::map<std::string, int64_t>& counts) {
    std::ostringstream out;
    out << "# rows sorted by count desc, then label asc\n";
    write_csv_row(out, {"label", "count"});
    std::vector<std::pair<std::string, int64_t>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [label, count] : rows) {
        write_csv_row(out, {label, std::to_string(count)});
    }
    return out.str();
}

}  // namespace

std::string type_distribution_csv(const std::vector<IncidentRecord>& records) {
    std::map<std::string, int64_t> counts;
    for (const auto& r : records) counts[r.label] += 1;
    return distribution_csv(counts);
}

std::string line_counts_csv(const std::vector<LineMentionCount>& counts) {
    std::ostringstream out;
    out << "# rows sorted by post_count desc, then line_id asc\n";
    write_csv_row(out, {"line_id", "mode", "post_count"});
    for (const auto& c : counts) {
        write_csv_row(out, {c.line_id, to_string(c.mode), std::to_string(c.post_count)});
    }
    return out.str();
}

std::string sentiment_distribution_csv(
    const std::map<std::string, std::string>& comment_labels) {
    std::map<std::string, int64_t> counts;
    for (const auto& [_, label] : comment_labels) counts[label] += 1;
    return distribution_csv(counts);
}

std::string reaction_distribution_csv(
    const std::map<std::string, std::map<std::string, int64_t>>& table) {
    std::ostringstream out;
    out << "# rows sorted by label asc, then reaction asc\n";
    write_csv_row(out, {"label", "reaction", "count"});
    std::set<std::string> kinds;
    for (const auto& [_, row] : table) {
        for (const auto& [kind, _count] : row) kinds.insert(kind);
    }
    for (const auto& [label, row] : table) {
        for (const auto& kind : kinds) {
            auto it = row.find(kind);
            int64_t count = it == row.end() ? 0 : it->second;
            write_csv_row(out, {label, kind, std::to_string(count)});
        }
    }
    return out.str();
}

std::string impact_json(const ImpactReport& report, const FrequencyStats& freq) {
    json j;
    j["total_passengers"] = report.total_passengers;
    j["per_region"] = json::object();
    for (const auto& [region, passengers] : report.per_region) {
        j["per_region"][region] = passengers;
    }
    j["per_day_average"] = report.per_day_average;
    j["distinct_incident_weekdays"] = report.distinct_incident_weekdays;
    j["unmapped_incidents"] = report.unmapped_incidents;
    j["missing_flow_rows"] = report.missing_flow_rows;
    j["frequency"] = {{"incident_count", freq.incident_count},
                      {"span_days", freq.span_days},
                      {"days_per_incident", freq.days_per_incident}};
    return j.dump(2) + "\n";
}

namespace {

std::string trim_ws(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
        return v.substr(1, v.size() - 2);
    }
    return v;
}

uint64_t parse_config_uint(const std::string& v, const std::string& path, size_t lineno,
                           const std::string& key) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw InputError(path, lineno, "key '" + key + "' needs a non-negative integer");
    }
    return out;
}

double parse_config_double(const std::string& v, const std::string& path, size_t lineno,
                           const std::string& key) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw InputError(path, lineno, "key '" + key + "' needs a number");
    }
    return out;
}

bool parse_config_bool(const std::string& v, const std::string& path, size_t lineno,
                       const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw InputError(path, lineno, "key '" + key + "' needs true or false");
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open config file: " + path);
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) -> std::string {
        if (p.empty()) return p;
        fs::path fp(p);
        if (fp.is_absolute()) return fp.lexically_normal().string();
        return (base / fp).lexically_normal().string();
    };

    PipelineConfig cfg;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim_ws(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw InputError(path, lineno, "expected key = value");
        }
        const std::string key = trim_ws(s.substr(0, eq));
        const std::string value = unquote(trim_ws(s.substr(eq + 1)));
        if (key.empty()) throw InputError(path, lineno, "empty key");

        if (key == "posts") {
            cfg.posts_path = resolve(value);
        } else if (key == "hashtag") {
            cfg.hashtag = value;
        } else if (key == "incident_model") {
            cfg.incident_model_path = resolve(value);
        } else if (key == "incident_corpus") {
            cfg.incident_corpus_path = resolve(value);
        } else if (key == "sentiment_model") {
            cfg.sentiment_model_path = resolve(value);
        } else if (key == "sentiment_corpus") {
            cfg.sentiment_corpus_path = resolve(value);
        } else if (key == "gazetteer") {
            cfg.gazetteer_path = resolve(value);
        } else if (key == "stops") {
            cfg.stops_path = resolve(value);
        } else if (key == "triggers") {
            cfg.triggers_path = resolve(value);
        } else if (key == "lines") {
            cfg.lines_path = resolve(value);
        } else if (key == "regions") {
            cfg.regions_path = resolve(value);
        } else if (key == "flows") {
            cfg.flows_path = resolve(value);
        } else if (key == "out_dir") {
            cfg.out_dir = resolve(value);
        } else if (key == "threshold") {
            cfg.threshold = parse_config_double(value, path, lineno, key);
        } else if (key == "seed") {
            cfg.seed = parse_config_uint(value, path, lineno, key);
        } else if (key == "tz") {
            cfg.tz = value;
        } else if (key == "analysis_filter") {
            cfg.analysis_filter = parse_config_bool(value, path, lineno, key);
        } else if (key == "max_span") {
            cfg.max_span = parse_config_uint(value, path, lineno, key);
        } else if (key == "embedding_dim") {
            cfg.training.embedding_dim = parse_config_uint(value, path, lineno, key);
        } else if (key == "ngram_order") {
            cfg.training.ngram_order = parse_config_uint(value, path, lineno, key);
        } else if (key == "hash_buckets") {
            cfg.training.hash_buckets = parse_config_uint(value, path, lineno, key);
        } else if (key == "learning_rate") {
            cfg.training.learning_rate = parse_config_double(value, path, lineno, key);
        } else if (key == "epochs") {
            cfg.training.epochs = parse_config_uint(value, path, lineno, key);
        } else {
            throw InputError(path, lineno, "unknown config key '" + key + "'");
        }
    }

    if (cfg.posts_path.empty()) throw InputError(path + ": missing required key 'posts'");
    if (cfg.incident_model_path.empty() == cfg.incident_corpus_path.empty()) {
        throw InputError(path + ": exactly one of incident_model or incident_corpus required");
    }
    if (!cfg.sentiment_model_path.empty() && !cfg.sentiment_corpus_path.empty()) {
        throw InputError(path + ": at most one of sentiment_model or sentiment_corpus allowed");
    }
    if (cfg.gazetteer_path.empty() && cfg.stops_path.empty()) {
        throw InputError(path + ": at least one of gazetteer or stops required");
    }
    for (const auto& [key, value] :
         std::initializer_list<std::pair<const char*, const std::string*>>{
             {"lines", &cfg.lines_path},
             {"regions", &cfg.regions_path},
             {"flows", &cfg.flows_path},
             {"out_dir", &cfg.out_dir}}) {
        if (value->empty()) {
            throw InputError(path + ": missing required key '" + std::string(key) + "'");
        }
    }
    if (cfg.threshold < 0.0 || cfg.threshold > 1.0) {
        throw InputError(path + ": threshold must lie in [0, 1]");
    }
    if (cfg.max_span == 0) throw InputError(path + ": max_span must be positive");
    cfg.training.seed = cfg.seed;
    return cfg;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    PipelineResult result;
    fs::create_directories(cfg.out_dir);
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& bytes) {
        fs::path p = fs::path(cfg.out_dir) / name;
        written.push_back(p);
        std::ofstream out(p, std::ios::binary);
        if (!out) throw InputError("cannot write " + p.string());
        out << bytes;
        out.flush();
        if (!out) throw InputError("failed writing " + p.string());
        result.artifacts.push_back(p.string());
    };

    std::string stage = "ingest";
    try {
        // ingest
        std::optional<std::string> filter;
        if (!cfg.hashtag.empty()) filter = cfg.hashtag;
        std::vector<Post> posts = load_posts(cfg.posts_path, filter);
        result.posts_loaded = posts.size();

        std::vector<Toponym> toponyms;
        if (!cfg.gazetteer_path.empty()) toponyms = load_gazetteer_csv(cfg.gazetteer_path);
        if (!cfg.stops_path.empty()) {
            std::vector<Toponym> stops = load_gtfs_stops(cfg.stops_path);
            toponyms.insert(toponyms.end(), stops.begin(), stops.end());
        }
        Gazetteer gazetteer = build_gazetteer(std::move(toponyms));
        if (gazetteer.entries.empty()) throw InputError("gazetteer has no entries");

        TriggerLexicon lexicon = cfg.triggers_path.empty()
                                     ? default_trigger_lexicon()
                                     : load_triggers(cfg.triggers_path, cfg.max_span);
        lexicon.max_span = cfg.max_span;

        LineRegistry registry = load_line_registry(cfg.lines_path);
        auto [regions, flows] = load_regions_and_flows(cfg.regions_path, cfg.flows_path);
        TimeZone tz = TimeZone::named(cfg.tz);

        // classify
        stage = "classify";
        TextModel incident_model;
        if (!cfg.incident_model_path.empty()) {
            incident_model = load_model(cfg.incident_model_path);
            if (incident_model.label_set != kIncidentLabels) {
                throw InputError("incident model must carry the seven-class label set");
            }
        } else {
            std::vector<LabeledDoc> corpus = load_labeled_docs(cfg.incident_corpus_path);
            incident_model = train(corpus, kIncidentLabels, cfg.training);
            emit("incident.model.json", model_to_json(incident_model) + "\n");
        }
        std::vector<ClassifiedPost> classified;
        classified.reserve(posts.size());
        {
            std::ostringstream labeled;
            for (const auto& post : posts) {
                std::string label = predict(incident_model, post.text).label;
                labeled << classified_post_to_json_line(post, label) << '\n';
                classified.push_back({post, std::move(label)});
            }
            emit("labeled.jsonl", labeled.str());
        }

        // analysis filter
        stage = "filter";
        std::vector<ClassifiedPost> analysis;
        for (auto& cp : classified) {
            bool excluded = cfg.analysis_filter &&
                            std::find(kExcludedFromAnalysis.begin(), kExcludedFromAnalysis.end(),
                                      cp.label) != kExcludedFromAnalysis.end();
            if (!excluded) analysis.push_back(std::move(cp));
        }
        result.analysis_posts = analysis.size();

        // geoparse
        stage = "geoparse";
        std::vector<IncidentRecord> records;
        records.reserve(analysis.size());
        {
            std::ostringstream lines_out;
            for (const auto& cp : analysis) {
                IncidentRecord r;
                r.post_id = cp.post.id;
                r.label = cp.label;
                r.published_at = cp.post.published_at;
                r.locations = geocode_post(cp.post, gazetteer, lexicon, cfg.threshold);
                std::set<std::string> mentioned = extract_line_mentions(cp.post.text, registry);
                r.lines.assign(mentioned.begin(), mentioned.end());
                if (!r.locations.empty()) {
                    const MobilityRegion* region =
                        locate_region(regions, r.locations.front().lon, r.locations.front().lat);
                    if (region) r.region_id = region->region_id;
                    ++result.geocoded_posts;
                }
                r.interactions = interaction_summary(cp.post);
                lines_out << incident_record_to_json_line(r) << '\n';
                records.push_back(std::move(r));
            }
            emit("incidents.jsonl", lines_out.str());
        }

        // lines
        stage = "lines";
        std::vector<Post> analysis_posts;
        analysis_posts.reserve(analysis.size());
        for (const auto& cp : analysis) analysis_posts.push_back(cp.post);
        std::vector<LineMentionCount> counts = count_line_mentions(analysis_posts, registry);
        emit("line_counts.csv", line_counts_csv(counts));

        // impact
        stage = "impact";
        std::vector<IncidentPoint> incidents;
        std::vector<int64_t> incident_times;
        for (const auto& r : records) {
            if (r.locations.empty()) continue;
            incidents.push_back({r.locations.front(), r.published_at});
            incident_times.push_back(r.published_at);
        }
        result.impact = estimate_impact(incidents, regions, flows, tz);
        FrequencyStats freq;
        if (!incident_times.empty()) freq = frequency_stats(incident_times);
        emit("impact.json", impact_json(result.impact, freq));

        // engagement
        stage = "engagement";
        std::map<std::string, std::string> comment_labels;
        if (!cfg.sentiment_model_path.empty() || !cfg.sentiment_corpus_path.empty()) {
            TextModel sentiment_model;
            if (!cfg.sentiment_model_path.empty()) {
                sentiment_model = load_model(cfg.sentiment_model_path);
            } else {
                std::vector<LabeledDoc> corpus = load_labeled_docs(cfg.sentiment_corpus_path);
                sentiment_model = train(corpus, kSentimentLabels, cfg.training);
                emit("sentiment.model.json", model_to_json(sentiment_model) + "\n");
            }
            std::vector<Comment> comments;
            for (const auto& cp : analysis) {
                std::vector<Comment> kept = filter_comments(cp.post.comments);
                comments.insert(comments.end(), kept.begin(), kept.end());
            }
            comment_labels = sentiment_classify(sentiment_model, comments);
            result.comments_classified = comment_labels.size();
        }
        emit("sentiment_distribution.csv", sentiment_distribution_csv(comment_labels));

        std::vector<std::pair<std::string, const Post*>> labeled_posts;
        for (const auto& cp : analysis) labeled_posts.push_back({cp.label, &cp.post});
        emit("reaction_distribution.csv",
             reaction_distribution_csv(reaction_distribution(labeled_posts, kIncidentLabels)));

        // export
        stage = "export";
        std::string geojson = export_geojson(records, &result.skipped_records);
        emit("incidents.geojson", geojson);
        emit("type_distribution.csv", type_distribution_csv(records));
    } catch (const InputError& e) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw InputError("stage " + stage + ": " + e.what());
    } catch (const std::exception& e) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw std::runtime_error("stage " + stage + ": " + e.what());
    }
    return result;
}

}  // namespace tim
