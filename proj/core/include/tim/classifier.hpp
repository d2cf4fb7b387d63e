#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tim {

struct LabeledDoc {
    std::string text;
    std::string label;
};

struct ClassifierConfig {
    size_t embedding_dim = 32;
    size_t ngram_order = 2;
    size_t hash_buckets = 1u << 18;
    double learning_rate = 0.1;
    size_t epochs = 10;
    uint64_t seed = 0;
};

struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(size_t r, size_t c) { return data[r * cols + c]; }
    double at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Linear classifier over averaged embeddings of vocab tokens and hashed
// n-grams. Row layout: rows [0, vocab) hold vocab tokens in first-encounter
// order, rows [vocab, vocab + hash_buckets) hold the n-gram hash space.
struct TextModel {
    ClassifierConfig config;
    std::vector<std::string> label_set;
    std::vector<std::string> vocab_tokens;
    std::unordered_map<std::string, size_t> vocab;
    Matrix input_embeddings;
    Matrix output_weights;

    size_t label_index(const std::string& label) const;
};

struct TrainStats {
    size_t skipped_documents = 0;
};

struct Prediction {
    std::string label;
    std::vector<double> probs;
    bool no_features = false;
};

struct EvalResult {
    double accuracy = 0.0;
    // confusion[true_label][predicted_label]
    std::vector<std::vector<int64_t>> confusion;
};

extern const std::vector<std::string> kIncidentLabels;
extern const std::vector<std::string> kSentimentLabels;

// Feature rows for a token sequence: one vocab row per known token plus one
// hashed row per n-gram of order 2..ngram_order, emitted in token order.
// Unknown tokens contribute no unigram row; n-grams hash regardless of vocab.
std::vector<size_t> featurize(const std::vector<std::string>& tokens,
                              const std::unordered_map<std::string, size_t>& vocab,
                              const ClassifierConfig& config);

// Deterministic for a fixed (corpus order, config). Documents yielding zero
// features are skipped and counted in stats.
TextModel train(const std::vector<LabeledDoc>& corpus, const std::vector<std::string>& label_set,
                const ClassifierConfig& config, TrainStats* stats = nullptr);

Prediction predict(const TextModel& model, const std::string& text);

EvalResult evaluate(const TextModel& model, const std::vector<LabeledDoc>& test);

// Summed softmax cross-entropy over the corpus; zero-feature docs contribute 0.
double corpus_loss(const TextModel& model, const std::vector<LabeledDoc>& docs);

// Analytic d(corpus_loss)/d(output_weights), same shape as output_weights.
Matrix output_weight_gradient(const TextModel& model, const std::vector<LabeledDoc>& docs);

std::string model_to_json(const TextModel& model);
TextModel model_from_json(const std::string& text, const std::string& context);

void save_model(const TextModel& model, const std::string& path);
TextModel load_model(const std::string& path);

// JSONL corpus: one {"text": ..., "label": ...} object per line.
std::vector<LabeledDoc> load_labeled_docs(const std::string& path);
void save_labeled_docs(const std::vector<LabeledDoc>& docs, const std::string& path);

uint64_t fnv1a64(std::string_view bytes);

}  // namespace tim
