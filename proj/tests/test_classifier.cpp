#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tim/classifier.hpp"
#include "tim/errors.hpp"
#include "tim/text.hpp"

using namespace tim;
using testutil::TempDir;

namespace {

ClassifierConfig tiny_config() {
    ClassifierConfig c;
    c.embedding_dim = 8;
    c.ngram_order = 2;
    c.hash_buckets = 64;
    c.learning_rate = 0.5;
    c.epochs = 60;
    c.seed = 3;
    return c;
}

const std::vector<LabeledDoc> kSeparable = {
    {"awaria zwrotnicy tramwaj stoi", "malfunction"},
    {"zderzenie z samochodem na skrzyżowaniu", "accident"},
    {"awaria sieci tramwaj nie jedzie", "malfunction"},
    {"zderzenie dwóch aut blokuje tory", "accident"},
};

}  // namespace

TEST_CASE("featurize emits vocab rows and hashed n-gram rows in scan order") {
    std::unordered_map<std::string, size_t> vocab = {
        {"awaria", 0}, {"na", 1}, {"legnickiej", 2}};
    ClassifierConfig cfg;
    cfg.ngram_order = 2;
    cfg.hash_buckets = 64;

    auto rows = featurize({"awaria", "na", "legnickiej"}, vocab, cfg);
    size_t h1 = 3 + fnv1a64(std::string("awaria") + '\x1f' + "na") % 64;
    size_t h2 = 3 + fnv1a64(std::string("na") + '\x1f' + "legnickiej") % 64;
    CHECK(rows == std::vector<size_t>{0, h1, 1, h2, 2});
}

TEST_CASE("featurize skips unknown unigrams but still hashes their n-grams") {
    std::unordered_map<std::string, size_t> vocab = {{"awaria", 0}};
    ClassifierConfig cfg;
    cfg.ngram_order = 2;
    cfg.hash_buckets = 64;

    auto rows = featurize({"awaria", "xyz"}, vocab, cfg);
    size_t h = 1 + fnv1a64(std::string("awaria") + '\x1f' + "xyz") % 64;
    CHECK(rows == std::vector<size_t>{0, h});

    cfg.ngram_order = 1;
    CHECK(featurize({"awaria", "xyz"}, vocab, cfg) == std::vector<size_t>{0});
    CHECK(featurize({"xyz"}, vocab, cfg).empty());
}

TEST_CASE("featurize covers orders above two") {
    std::unordered_map<std::string, size_t> vocab;
    ClassifierConfig cfg;
    cfg.ngram_order = 3;
    cfg.hash_buckets = 1024;

    auto rows = featurize({"a", "b", "c"}, vocab, cfg);
    std::string ab = std::string("a") + '\x1f' + "b";
    std::string abc = ab + '\x1f' + "c";
    std::string bc = std::string("b") + '\x1f' + "c";
    CHECK(rows == std::vector<size_t>{fnv1a64(ab) % 1024, fnv1a64(abc) % 1024,
                                      fnv1a64(bc) % 1024});
}

TEST_CASE("fnv1a64 reference values") {
    // Published FNV-1a test vectors.
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 12638187200555641996ULL);
    CHECK(fnv1a64("foobar") == 9625390261332436968ULL);
}

TEST_CASE("training is bitwise deterministic for a fixed corpus and config") {
    auto cfg = tiny_config();
    TextModel a = train(kSeparable, kIncidentLabels, cfg);
    TextModel b = train(kSeparable, kIncidentLabels, cfg);
    CHECK(model_to_json(a) == model_to_json(b));

    cfg.seed = 4;
    TextModel c = train(kSeparable, kIncidentLabels, cfg);
    CHECK(model_to_json(a) != model_to_json(c));
}

TEST_CASE("a separable corpus is learned exactly") {
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    CHECK(predict(m, "awaria zwrotnicy tramwaj stoi").label == "malfunction");
    CHECK(predict(m, "zderzenie z samochodem na skrzyżowaniu").label == "accident");

    EvalResult eval = evaluate(m, kSeparable);
    CHECK(eval.accuracy == doctest::Approx(1.0));
    size_t mal = m.label_index("malfunction");
    size_t acc = m.label_index("accident");
    CHECK(eval.confusion[mal][mal] == 2);
    CHECK(eval.confusion[acc][acc] == 2);
    CHECK(eval.confusion[mal][acc] == 0);
}

TEST_CASE("prediction probabilities form a probability simplex") {
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    for (const char* text : {"awaria zwrotnicy", "zderzenie", "tramwaj stoi na torach",
                             "zupełnie nowe słowa bez pokrycia", "a b c d e"}) {
        Prediction p = predict(m, text);
        double sum = 0.0;
        for (double v : p.probs) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("unigram models ignore token order") {
    auto cfg = tiny_config();
    cfg.ngram_order = 1;
    TextModel m = train(kSeparable, kIncidentLabels, cfg);
    Prediction p = predict(m, "awaria zwrotnicy tramwaj");
    Prediction q = predict(m, "tramwaj zwrotnicy awaria");
    REQUIRE(p.probs.size() == q.probs.size());
    for (size_t i = 0; i < p.probs.size(); ++i) {
        CHECK(p.probs[i] == doctest::Approx(q.probs[i]).epsilon(1e-12));
    }
}

TEST_CASE("zero-feature input predicts the uniform fallback") {
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    Prediction p = predict(m, "!!! ---");
    CHECK(p.no_features);
    CHECK(p.label == m.label_set.front());
    for (double v : p.probs) {
        CHECK(v == doctest::Approx(1.0 / static_cast<double>(m.label_set.size())));
    }
}

TEST_CASE("zero-feature training documents are skipped and counted") {
    auto docs = kSeparable;
    docs.push_back({"...", "unknown"});
    TrainStats stats;
    TextModel m = train(docs, kIncidentLabels, tiny_config(), &stats);
    CHECK(stats.skipped_documents == 1);
    CHECK(predict(m, "awaria zwrotnicy tramwaj stoi").label == "malfunction");

    std::vector<LabeledDoc> hopeless = {{"...", "unknown"}, {"!!!", "unknown"}};
    CHECK_THROWS_AS(train(hopeless, kIncidentLabels, tiny_config()), InputError);
}

TEST_CASE("training rejects bad labels and bad configs") {
    std::vector<LabeledDoc> docs = {{"tekst", "nosuchlabel"}};
    CHECK_THROWS_AS(train(docs, kIncidentLabels, tiny_config()), InputError);

    auto cfg = tiny_config();
    cfg.embedding_dim = 0;
    CHECK_THROWS_AS(train(kSeparable, kIncidentLabels, cfg), InputError);
    cfg = tiny_config();
    cfg.epochs = 0;
    CHECK_THROWS_AS(train(kSeparable, kIncidentLabels, cfg), InputError);
    cfg = tiny_config();
    cfg.learning_rate = -0.1;
    CHECK_THROWS_AS(train(kSeparable, kIncidentLabels, cfg), InputError);

    CHECK_THROWS_AS(train({}, kIncidentLabels, tiny_config()), InputError);
}

TEST_CASE("analytic output gradient matches central finite differences") {
    std::vector<LabeledDoc> docs = {
        {"awaria zwrotnicy na pętli", "malfunction"},
        {"zderzenie tramwaju z autem", "accident"},
        {"utrudnienia w kursowaniu", "unknown"},
    };
    ClassifierConfig cfg;
    cfg.embedding_dim = 6;
    cfg.ngram_order = 2;
    cfg.hash_buckets = 32;
    cfg.learning_rate = 0.2;
    cfg.epochs = 3;
    cfg.seed = 9;
    TextModel m = train(docs, kIncidentLabels, cfg);

    Matrix analytic = output_weight_gradient(m, docs);
    const double eps = 1e-4;
    for (size_t r = 0; r < m.output_weights.rows; ++r) {
        for (size_t c = 0; c < m.output_weights.cols; ++c) {
            double saved = m.output_weights.at(r, c);
            m.output_weights.at(r, c) = saved + eps;
            double up = corpus_loss(m, docs);
            m.output_weights.at(r, c) = saved - eps;
            double down = corpus_loss(m, docs);
            m.output_weights.at(r, c) = saved;
            double numeric = (up - down) / (2.0 * eps);
            double denom = std::max({1.0, std::fabs(numeric), std::fabs(analytic.at(r, c))});
            CHECK(std::fabs(analytic.at(r, c) - numeric) / denom <= 1e-4);
        }
    }
}

TEST_CASE("argmax is stable under uniform score shifts") {
    // Softmax normalizes shifted scores to the same distribution; the reported
    // label must match a direct argmax over unnormalized scores.
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    Prediction p = predict(m, "awaria sieci tramwaj nie jedzie");
    size_t best = 0;
    for (size_t k = 1; k < p.probs.size(); ++k) {
        if (p.probs[k] > p.probs[best]) best = k;
    }
    CHECK(m.label_set[best] == p.label);
    CHECK(p.probs[m.label_index("malfunction")] > 0.5);
}

TEST_CASE("model JSON round-trips bit-exactly") {
    TempDir dir;
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    std::string path = dir.file("model.json");
    save_model(m, path);
    TextModel r = load_model(path);

    CHECK(model_to_json(r) == model_to_json(m));
    for (const char* text : {"awaria zwrotnicy", "zderzenie aut", "nowy tekst"}) {
        Prediction a = predict(m, text);
        Prediction b = predict(r, text);
        CHECK(a.label == b.label);
        REQUIRE(a.probs.size() == b.probs.size());
        for (size_t i = 0; i < a.probs.size(); ++i) {
            CHECK(a.probs[i] == b.probs[i]);  // bitwise, not approximate
        }
    }
}

TEST_CASE("model JSON validation rejects tampering") {
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    std::string good = model_to_json(m);

    std::string bad_version = good;
    auto pos = bad_version.find("\"version\":1");
    REQUIRE(pos != std::string::npos);
    bad_version.replace(pos, 11, "\"version\":2");
    CHECK_THROWS_AS(model_from_json(bad_version, "mem"), InputError);

    CHECK_THROWS_AS(model_from_json("{}", "mem"), InputError);
    CHECK_THROWS_AS(model_from_json("not json", "mem"), InputError);
}

TEST_CASE("labeled corpus JSONL round-trips") {
    TempDir dir;
    std::string path = dir.file("docs.jsonl");
    std::vector<LabeledDoc> docs = {{"awaria na pętli", "malfunction"},
                                    {"mecz przy stadionie", "event"}};
    save_labeled_docs(docs, path);
    auto loaded = load_labeled_docs(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].text == docs[0].text);
    CHECK(loaded[0].label == docs[0].label);
    CHECK(loaded[1].label == "event");

    testutil::write_file(path, "{\"text\":\"a\"}\n");
    CHECK_THROWS_AS(load_labeled_docs(path), InputError);
}

TEST_CASE("label_index rejects labels outside the set") {
    TextModel m = train(kSeparable, kIncidentLabels, tiny_config());
    CHECK(m.label_index("accident") == 0);
    CHECK_THROWS_AS(m.label_index("sabotage"), InputError);
}
