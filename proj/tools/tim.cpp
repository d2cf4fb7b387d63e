#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tim/classifier.hpp"
#include "tim/csv.hpp"
#include "tim/datetime.hpp"
#include "tim/engagement.hpp"
#include "tim/errors.hpp"
#include "tim/geoparse.hpp"
#include "tim/impact.hpp"
#include "tim/ingest.hpp"
#include "tim/lines.hpp"
#include "tim/report.hpp"
#include "tim/synthetic.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tim::InputError("cannot write " + path);
    out << bytes;
    out.flush();
    if (!out) throw tim::InputError("failed writing " + path);
}

const std::vector<std::string>& label_set_by_name(const std::string& name) {
    if (name == "incident") return tim::kIncidentLabels;
    if (name == "sentiment") return tim::kSentimentLabels;
    throw tim::InputError("unknown label set '" + name + "' (expected incident or sentiment)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mine transit incident reports from operator social media posts"};
    app.set_version_flag("--version", "tim 0.1.0");
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string tz = "Europe/Warsaw";
    app.add_option("--seed", seed, "seed for anything randomized")->capture_default_str();
    app.add_option("--tz", tz, "IANA timezone for civil-time statistics")
        ->capture_default_str();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a classifier on a labeled corpus");
    train_cmd->fallthrough();
    std::string train_labels, train_in, train_model;
    tim::ClassifierConfig train_cfg;
    train_cmd->add_option("--labels", train_labels, "label set: incident or sentiment")
        ->required();
    train_cmd->add_option("--in", train_in, "labeled corpus (JSONL)")->required();
    train_cmd->add_option("--model", train_model, "output model path")->required();
    train_cmd->add_option("--dim", train_cfg.embedding_dim, "embedding dimension")
        ->capture_default_str();
    train_cmd->add_option("--ngram-order", train_cfg.ngram_order, "max n-gram order")
        ->capture_default_str();
    train_cmd->add_option("--hash-buckets", train_cfg.hash_buckets, "n-gram hash buckets")
        ->capture_default_str();
    train_cmd->add_option("--learning-rate", train_cfg.learning_rate, "initial learning rate")
        ->capture_default_str();
    train_cmd->add_option("--epochs", train_cfg.epochs, "training epochs")
        ->capture_default_str();
    train_cmd->callback([&] {
        train_cfg.seed = seed;
        std::vector<tim::LabeledDoc> corpus = tim::load_labeled_docs(train_in);
        tim::TrainStats stats;
        tim::TextModel model =
            tim::train(corpus, label_set_by_name(train_labels), train_cfg, &stats);
        if (stats.skipped_documents > 0) {
            std::cerr << "warning: " << stats.skipped_documents
                      << " documents yielded zero features and were skipped\n";
        }
        tim::save_model(model, train_model);
        std::cout << "trained on " << corpus.size() - stats.skipped_documents << " of "
                  << corpus.size() << " documents, vocab " << model.vocab_tokens.size() << ", "
                  << train_model << "\n";
    });

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "label posts with a trained model");
    classify_cmd->fallthrough();
    std::string classify_model, classify_in, classify_out;
    classify_cmd->add_option("--model", classify_model, "model file")->required();
    classify_cmd->add_option("--in", classify_in, "posts (JSONL)")->required();
    classify_cmd->add_option("--out", classify_out, "labeled posts (JSONL)")->required();
    classify_cmd->callback([&] {
        tim::TextModel model = tim::load_model(classify_model);
        std::vector<tim::Post> posts = tim::load_posts(classify_in);
        std::ostringstream out;
        std::map<std::string, size_t> counts;
        for (const auto& post : posts) {
            std::string label = tim::predict(model, post.text).label;
            counts[label] += 1;
            out << tim::classified_post_to_json_line(post, label) << '\n';
        }
        write_text_file(classify_out, out.str());
        std::cout << "classified " << posts.size() << " posts -> " << classify_out << "\n";
        for (const auto& [label, n] : counts) std::cout << "  " << label << ": " << n << "\n";
    });

    // geoparse
    auto* geoparse_cmd =
        app.add_subcommand("geoparse", "resolve spatial mentions against a gazetteer");
    geoparse_cmd->fallthrough();
    std::string geo_posts, geo_gazetteer, geo_stops, geo_triggers, geo_out;
    double geo_threshold = tim::kDefaultMatchThreshold;
    size_t geo_max_span = 4;
    geoparse_cmd->add_option("--posts", geo_posts, "labeled posts (JSONL)")->required();
    geoparse_cmd->add_option("--gazetteer", geo_gazetteer, "gazetteer CSV");
    geoparse_cmd->add_option("--stops", geo_stops, "GTFS stops.txt to merge in");
    geoparse_cmd->add_option("--triggers", geo_triggers, "trigger lexicon file");
    geoparse_cmd->add_option("--threshold", geo_threshold, "max normalized edit distance")
        ->capture_default_str();
    geoparse_cmd->add_option("--max-span", geo_max_span, "max tokens per mention")
        ->capture_default_str();
    geoparse_cmd->add_option("--out", geo_out, "incident records (JSONL)")->required();
    geoparse_cmd->callback([&] {
        if (geo_gazetteer.empty() && geo_stops.empty()) {
            throw tim::InputError("geoparse needs --gazetteer or --stops");
        }
        std::vector<tim::Toponym> toponyms;
        if (!geo_gazetteer.empty()) toponyms = tim::load_gazetteer_csv(geo_gazetteer);
        if (!geo_stops.empty()) {
            std::vector<tim::Toponym> stops = tim::load_gtfs_stops(geo_stops);
            toponyms.insert(toponyms.end(), stops.begin(), stops.end());
        }
        tim::Gazetteer gazetteer = tim::build_gazetteer(std::move(toponyms));
        tim::TriggerLexicon lexicon = geo_triggers.empty()
                                          ? tim::default_trigger_lexicon()
                                          : tim::load_triggers(geo_triggers, geo_max_span);
        lexicon.max_span = geo_max_span;

        std::vector<tim::ClassifiedPost> posts = tim::load_classified_posts(geo_posts);
        std::ostringstream out;
        size_t geocoded = 0;
        for (const auto& cp : posts) {
            tim::IncidentRecord r;
            r.post_id = cp.post.id;
            r.label = cp.label;
            r.published_at = cp.post.published_at;
            r.locations = tim::geocode_post(cp.post, gazetteer, lexicon, geo_threshold);
            r.interactions = tim::interaction_summary(cp.post);
            if (!r.locations.empty()) ++geocoded;
            out << tim::incident_record_to_json_line(r) << '\n';
        }
        write_text_file(geo_out, out.str());
        std::cout << "geocoded " << geocoded << " of " << posts.size() << " posts -> "
                  << geo_out << "\n";
    });

    // lines
    auto* lines_cmd = app.add_subcommand("lines", "count posts mentioning each transit line");
    lines_cmd->fallthrough();
    std::string lines_posts, lines_registry, lines_out;
    lines_cmd->add_option("--posts", lines_posts, "posts (JSONL)")->required();
    lines_cmd->add_option("--registry", lines_registry, "line registry CSV")->required();
    lines_cmd->add_option("--out", lines_out, "line counts CSV")->required();
    lines_cmd->callback([&] {
        std::vector<tim::Post> posts = tim::load_posts(lines_posts);
        tim::LineRegistry registry = tim::load_line_registry(lines_registry);
        std::vector<tim::LineMentionCount> counts = tim::count_line_mentions(posts, registry);
        write_text_file(lines_out, tim::line_counts_csv(counts));
        std::cout << counts.size() << " lines mentioned across " << posts.size()
                  << " posts -> " << lines_out << "\n";
    });

    // impact
    auto* impact_cmd =
        app.add_subcommand("impact", "estimate passenger impact from geocoded incidents");
    impact_cmd->fallthrough();
    std::string impact_in, impact_regions, impact_flows, impact_out;
    impact_cmd->add_option("--incidents", impact_in, "incident records (JSONL)")->required();
    impact_cmd->add_option("--regions", impact_regions, "mobility regions (GeoJSON)")
        ->required();
    impact_cmd->add_option("--flows", impact_flows, "passenger flows CSV")->required();
    impact_cmd->add_option("--out", impact_out, "impact report (JSON)")->required();
    impact_cmd->callback([&] {
        std::vector<tim::IncidentRecord> records = tim::load_incident_records(impact_in);
        auto [regions, flows] = tim::load_regions_and_flows(impact_regions, impact_flows);
        tim::TimeZone zone = tim::TimeZone::named(tz);
        std::vector<tim::IncidentPoint> incidents;
        std::vector<int64_t> times;
        for (const auto& r : records) {
            if (r.locations.empty()) continue;
            incidents.push_back({r.locations.front(), r.published_at});
            times.push_back(r.published_at);
        }
        tim::ImpactReport report = tim::estimate_impact(incidents, regions, flows, zone);
        tim::FrequencyStats freq;
        if (!times.empty()) freq = tim::frequency_stats(times);
        write_text_file(impact_out, tim::impact_json(report, freq));
        std::cout << "total passengers " << report.total_passengers << " over "
                  << report.distinct_incident_weekdays << " weekdays ("
                  << report.unmapped_incidents << " unmapped) -> " << impact_out << "\n";
    });

    // agreement
    auto* agreement_cmd =
        app.add_subcommand("agreement", "Cohen's kappa for every annotator pair");
    agreement_cmd->fallthrough();
    std::string agreement_in, agreement_out;
    agreement_cmd->add_option("--in", agreement_in, "annotations CSV")->required();
    agreement_cmd->add_option("--out", agreement_out, "kappa report (JSON)")->required();
    agreement_cmd->callback([&] {
        tim::AnnotationSet annotations = tim::load_annotations(agreement_in);
        std::vector<tim::AnnotatorPairAgreement> pairs = tim::pairwise_agreement(annotations);
        nlohmann::json j;
        j["pairs"] = nlohmann::json::array();
        for (const auto& p : pairs) {
            j["pairs"].push_back({{"annotator_a", p.annotator_a},
                                  {"annotator_b", p.annotator_b},
                                  {"items", p.items},
                                  {"kappa", p.result.kappa},
                                  {"observed_agreement", p.result.observed_agreement},
                                  {"expected_agreement", p.result.expected_agreement}});
        }
        write_text_file(agreement_out, j.dump(2) + "\n");
        std::cout << pairs.size() << " annotator pairs -> " << agreement_out << "\n";
        for (const auto& p : pairs) {
            std::cout << "  " << p.annotator_a << " vs " << p.annotator_b << ": kappa "
                      << p.result.kappa << " over " << p.items << " items\n";
        }
    });

    // sentiment
    auto* sentiment_cmd =
        app.add_subcommand("sentiment", "classify post comments with a sentiment model");
    sentiment_cmd->fallthrough();
    std::string sent_model, sent_posts, sent_out;
    sentiment_cmd->add_option("--model", sent_model, "sentiment model file")->required();
    sentiment_cmd->add_option("--posts", sent_posts, "posts (JSONL)")->required();
    sentiment_cmd->add_option("--out", sent_out, "per-comment labels CSV")->required();
    sentiment_cmd->callback([&] {
        tim::TextModel model = tim::load_model(sent_model);
        std::vector<tim::Post> posts = tim::load_posts(sent_posts);
        std::vector<std::vector<std::string>> rows;
        size_t total_comments = 0;
        for (const auto& post : posts) {
            total_comments += post.comments.size();
            std::vector<tim::Comment> kept = tim::filter_comments(post.comments);
            std::map<std::string, std::string> labels = tim::sentiment_classify(model, kept);
            for (const auto& c : kept) {
                rows.push_back({post.id, c.id, labels.at(c.id)});
            }
        }
        std::sort(rows.begin(), rows.end());
        std::ostringstream out;
        out << "# rows sorted by post_id, then comment_id\n";
        tim::write_csv_row(out, {"post_id", "comment_id", "label"});
        for (const auto& row : rows) tim::write_csv_row(out, row);
        write_text_file(sent_out, out.str());
        std::cout << "labeled " << rows.size() << " of " << total_comments << " comments -> "
                  << sent_out << "\n";
    });

    // run
    auto* run_cmd = app.add_subcommand("run", "run the whole pipeline from a config file");
    run_cmd->fallthrough();
    std::string run_config;
    run_cmd->add_option("--config", run_config, "pipeline config file")->required();
    run_cmd->callback([&] {
        tim::PipelineConfig cfg = tim::load_pipeline_config(run_config);
        tim::PipelineResult result = tim::run_pipeline(cfg);
        std::cout << "posts " << result.posts_loaded << ", analysis set "
                  << result.analysis_posts << ", geocoded " << result.geocoded_posts
                  << ", comments labeled " << result.comments_classified << "\n";
        std::cout << "impact: " << result.impact.total_passengers << " passengers over "
                  << result.impact.distinct_incident_weekdays << " weekdays, "
                  << result.impact.unmapped_incidents << " unmapped incidents\n";
        for (const auto& artifact : result.artifacts) std::cout << "  " << artifact << "\n";
    });

    // synth
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a labeled template corpus for training");
    synth_cmd->fallthrough();
    std::string synth_task, synth_out;
    size_t synth_per_class = 200;
    synth_cmd->add_option("--task", synth_task, "incident or sentiment")->required();
    synth_cmd->add_option("--per-class", synth_per_class, "documents per class")
        ->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "corpus output (JSONL)")->required();
    synth_cmd->callback([&] {
        std::vector<tim::LabeledDoc> docs;
        if (synth_task == "incident") {
            docs = tim::generate_incident_corpus(synth_per_class, seed);
        } else if (synth_task == "sentiment") {
            docs = tim::generate_sentiment_corpus(synth_per_class, seed);
        } else {
            throw tim::InputError("unknown task '" + synth_task +
                                  "' (expected incident or sentiment)");
        }
        tim::save_labeled_docs(docs, synth_out);
        std::cout << "wrote " << docs.size() << " documents -> " << synth_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const tim::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
