#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tim/classifier.hpp"
#include "tim/engagement.hpp"
#include "tim/geoparse.hpp"
#include "tim/impact.hpp"
#include "tim/lines.hpp"
#include "tim/post.hpp"

namespace tim {

// Labels dropped from the analysis set after classification.
extern const std::vector<std::string> kExcludedFromAnalysis;

struct IncidentRecord {
    std::string post_id;
    std::string label;
    int64_t published_at = 0;
    std::vector<IncidentLocation> locations;
    std::vector<std::string> lines;  // sorted line ids
    std::optional<std::string> region_id;
    InteractionSummary interactions;
};

std::string incident_record_to_json_line(const IncidentRecord& record);
IncidentRecord incident_record_from_json_line(const std::string& line, const std::string& file,
                                              size_t lineno);
std::vector<IncidentRecord> load_incident_records(const std::string& path);

struct ClassifiedPost {
    Post post;
    std::string label;
};

std::string classified_post_to_json_line(const Post& post, const std::string& label);
// Posts with no label field come back labeled "unknown".
std::vector<ClassifiedPost> load_classified_posts(const std::string& path);

// One point Feature per record's first location, sorted by post_id; records
// without locations are skipped and counted.
std::string export_geojson(const std::vector<IncidentRecord>& records, size_t* skipped = nullptr);

std::string type_distribution_csv(const std::vector<IncidentRecord>& records);
std::string line_counts_csv(const std::vector<LineMentionCount>& counts);
std::string sentiment_distribution_csv(const std::map<std::string, std::string>& comment_labels);
std::string reaction_distribution_csv(
    const std::map<std::string, std::map<std::string, int64_t>>& table);
std::string impact_json(const ImpactReport& report, const FrequencyStats& freq);

struct PipelineConfig {
    std::string posts_path;
    std::string hashtag;
    std::string incident_model_path;
    std::string incident_corpus_path;
    std::string sentiment_model_path;
    std::string sentiment_corpus_path;
    std::string gazetteer_path;
    std::string stops_path;
    std::string triggers_path;
    std::string lines_path;
    std::string regions_path;
    std::string flows_path;
    std::string out_dir;
    double threshold = kDefaultMatchThreshold;
    uint64_t seed = 0;
    std::string tz = "Europe/Warsaw";
    bool analysis_filter = true;
    size_t max_span = 4;
    ClassifierConfig training;
};

// Flat key = value file; '#' lines are comments; relative paths resolve
// against the config file's directory.
PipelineConfig load_pipeline_config(const std::string& path);

struct PipelineResult {
    size_t posts_loaded = 0;
    size_t analysis_posts = 0;
    size_t geocoded_posts = 0;
    size_t skipped_records = 0;
    size_t comments_classified = 0;
    ImpactReport impact;
    std::vector<std::string> artifacts;
};

// Runs ingest, classify, filter, geoparse, lines, impact, engagement and
// export in order. A failing stage removes everything written this run and
// rethrows with the stage name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace tim
