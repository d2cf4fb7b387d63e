#include "tim/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tim/errors.hpp"
#include "tim/text.hpp"

namespace tim {

using nlohmann::json;

const std::vector<std::string> kIncidentLabels = {
    "accident", "event", "fix", "incident", "malfunction", "renovation", "unknown"};
const std::vector<std::string> kSentimentLabels = {"positive", "neutral", "negative"};

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

size_t TextModel::label_index(const std::string& label) const {
    for (size_t i = 0; i < label_set.size(); ++i) {
        if (label_set[i] == label) return i;
    }
    throw InputError("label '" + label + "' is not in the model's label set");
}

std::vector<size_t> featurize(const std::vector<std::string>& tokens,
                              const std::unordered_map<std::string, size_t>& vocab,
                              const ClassifierConfig& config) {
    std::vector<size_t> features;
    const size_t offset = vocab.size();
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (auto it = vocab.find(tokens[i]); it != vocab.end()) {
            features.push_back(it->second);
        }
        std::string gram = tokens[i];
        for (size_t n = 2; n <= config.ngram_order && i + n <= tokens.size(); ++n) {
            gram.push_back('\x1f');
            gram += tokens[i + n - 1];
            features.push_back(offset + fnv1a64(gram) % config.hash_buckets);
        }
    }
    return features;
}

namespace {

void validate_config(const ClassifierConfig& c) {
    if (c.embedding_dim == 0) throw InputError("embedding_dim must be positive");
    if (c.ngram_order == 0) throw InputError("ngram_order must be at least 1");
    if (c.hash_buckets == 0) throw InputError("hash_buckets must be positive");
    if (!(c.learning_rate > 0.0)) throw InputError("learning_rate must be positive");
    if (c.epochs == 0) throw InputError("epochs must be positive");
}

std::vector<double> mean_embedding(const TextModel& m, const std::vector<size_t>& features) {
    std::vector<double> h(m.config.embedding_dim, 0.0);
    for (size_t r : features) {
        for (size_t c = 0; c < h.size(); ++c) h[c] += m.input_embeddings.at(r, c);
    }
    for (double& v : h) v /= static_cast<double>(features.size());
    return h;
}

std::vector<double> softmax_scores(const TextModel& m, const std::vector<double>& h) {
    std::vector<double> scores(m.label_set.size(), 0.0);
    for (size_t k = 0; k < scores.size(); ++k) {
        for (size_t c = 0; c < h.size(); ++c) scores[k] += m.output_weights.at(k, c) * h[c];
    }
    double mx = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (double& s : scores) {
        s = std::exp(s - mx);
        sum += s;
    }
    for (double& s : scores) s /= sum;
    return scores;
}

// Raw mt19937_64 bits mapped to [0, 1); avoids std::uniform_real_distribution,
// whose output is not pinned by the standard.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TextModel train(const std::vector<LabeledDoc>& corpus, const std::vector<std::string>& label_set,
                const ClassifierConfig& config, TrainStats* stats) {
    validate_config(config);
    if (corpus.empty()) throw InputError("training corpus is empty");
    if (label_set.empty()) throw InputError("label set is empty");

    TextModel m;
    m.config = config;
    m.label_set = label_set;

    std::vector<size_t> label_idx(corpus.size());
    for (size_t d = 0; d < corpus.size(); ++d) {
        label_idx[d] = m.label_index(corpus[d].label);
    }

    // Vocab rows in first-encounter order across the corpus.
    std::vector<std::vector<std::string>> doc_tokens(corpus.size());
    for (size_t d = 0; d < corpus.size(); ++d) {
        doc_tokens[d] = tokenize(corpus[d].text);
        for (const auto& tok : doc_tokens[d]) {
            if (m.vocab.emplace(tok, m.vocab_tokens.size()).second) {
                m.vocab_tokens.push_back(tok);
            }
        }
    }

    std::vector<std::vector<size_t>> doc_features(corpus.size());
    size_t skipped = 0;
    for (size_t d = 0; d < corpus.size(); ++d) {
        doc_features[d] = featurize(doc_tokens[d], m.vocab, config);
        if (doc_features[d].empty()) ++skipped;
    }
    if (stats) stats->skipped_documents = skipped;
    if (skipped == corpus.size()) {
        throw InputError("every training document yielded zero features");
    }

    const size_t dim = config.embedding_dim;
    m.input_embeddings = Matrix(m.vocab_tokens.size() + config.hash_buckets, dim);
    m.output_weights = Matrix(label_set.size(), dim);

    // Row-major draw order is part of the determinism contract.
    std::mt19937_64 rng(config.seed);
    const double scale = 1.0 / static_cast<double>(dim);
    for (double& v : m.input_embeddings.data) {
        v = (2.0 * unit_uniform(rng) - 1.0) * scale;
    }

    const double total_updates = static_cast<double>(config.epochs * corpus.size());
    std::vector<double> grad_h(dim);
    size_t t = 0;
    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (size_t d = 0; d < corpus.size(); ++d, ++t) {
            // The decay step consumes a slot even for skipped documents.
            const double lr =
                config.learning_rate * (1.0 - static_cast<double>(t) / total_updates);
            const auto& features = doc_features[d];
            if (features.empty()) continue;

            std::vector<double> h = mean_embedding(m, features);
            std::vector<double> probs = softmax_scores(m, h);

            std::fill(grad_h.begin(), grad_h.end(), 0.0);
            for (size_t k = 0; k < m.label_set.size(); ++k) {
                const double g = probs[k] - (k == label_idx[d] ? 1.0 : 0.0);
                for (size_t c = 0; c < dim; ++c) {
                    grad_h[c] += g * m.output_weights.at(k, c);
                    m.output_weights.at(k, c) -= lr * g * h[c];
                }
            }
            const double inv_n = 1.0 / static_cast<double>(features.size());
            for (size_t r : features) {
                for (size_t c = 0; c < dim; ++c) {
                    m.input_embeddings.at(r, c) -= lr * grad_h[c] * inv_n;
                }
            }
        }
    }
    return m;
}

Prediction predict(const TextModel& model, const std::string& text) {
    Prediction p;
    std::vector<size_t> features = featurize(tokenize(text), model.vocab, model.config);
    if (features.empty()) {
        p.no_features = true;
        p.probs.assign(model.label_set.size(), 1.0 / static_cast<double>(model.label_set.size()));
        p.label = model.label_set.front();
        return p;
    }
    p.probs = softmax_scores(model, mean_embedding(model, features));
    size_t best = 0;
    for (size_t k = 1; k < p.probs.size(); ++k) {
        if (p.probs[k] > p.probs[best]) best = k;
    }
    p.label = model.label_set[best];
    return p;
}

EvalResult evaluate(const TextModel& model, const std::vector<LabeledDoc>& test) {
    if (test.empty()) throw InputError("evaluation set is empty");
    EvalResult r;
    const size_t k = model.label_set.size();
    r.confusion.assign(k, std::vector<int64_t>(k, 0));
    int64_t correct = 0;
    for (const auto& doc : test) {
        size_t truth = model.label_index(doc.label);
        size_t pred = model.label_index(predict(model, doc.text).label);
        r.confusion[truth][pred] += 1;
        if (truth == pred) ++correct;
    }
    r.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    return r;
}

double corpus_loss(const TextModel& model, const std::vector<LabeledDoc>& docs) {
    double loss = 0.0;
    for (const auto& doc : docs) {
        size_t y = model.label_index(doc.label);
        std::vector<size_t> features = featurize(tokenize(doc.text), model.vocab, model.config);
        if (features.empty()) continue;
        std::vector<double> probs = softmax_scores(model, mean_embedding(model, features));
        loss -= std::log(probs[y]);
    }
    return loss;
}

Matrix output_weight_gradient(const TextModel& model, const std::vector<LabeledDoc>& docs) {
    Matrix grad(model.output_weights.rows, model.output_weights.cols);
    for (const auto& doc : docs) {
        size_t y = model.label_index(doc.label);
        std::vector<size_t> features = featurize(tokenize(doc.text), model.vocab, model.config);
        if (features.empty()) continue;
        std::vector<double> h = mean_embedding(model, features);
        std::vector<double> probs = softmax_scores(model, h);
        for (size_t k = 0; k < grad.rows; ++k) {
            const double g = probs[k] - (k == y ? 1.0 : 0.0);
            for (size_t c = 0; c < grad.cols; ++c) grad.at(k, c) += g * h[c];
        }
    }
    return grad;
}

namespace {

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j, const std::string& context, const std::string& name) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw InputError(context + ": matrix '" + name + "' must have rows, cols and data");
    }
    Matrix m;
    m.rows = j["rows"].get<size_t>();
    m.cols = j["cols"].get<size_t>();
    m.data = j["data"].get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) {
        throw InputError(context + ": matrix '" + name + "' data size does not match rows*cols");
    }
    return m;
}

}  // namespace

std::string model_to_json(const TextModel& model) {
    json j;
    j["version"] = 1;
    j["config"] = {{"embedding_dim", model.config.embedding_dim},
                   {"ngram_order", model.config.ngram_order},
                   {"hash_buckets", model.config.hash_buckets},
                   {"learning_rate", model.config.learning_rate},
                   {"epochs", model.config.epochs},
                   {"seed", model.config.seed}};
    j["label_set"] = model.label_set;
    json vocab = json::object();
    for (const auto& [tok, row] : model.vocab) vocab[tok] = row;
    j["vocab"] = vocab;
    j["input_embeddings"] = matrix_to_json(model.input_embeddings);
    j["output_weights"] = matrix_to_json(model.output_weights);
    return j.dump();
}

TextModel model_from_json(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(context + ": malformed JSON: " + e.what());
    }
    if (j.value("version", 0) != 1) {
        throw InputError(context + ": unsupported model version (expected 1)");
    }
    TextModel m;
    const json& c = j.at("config");
    m.config.embedding_dim = c.at("embedding_dim").get<size_t>();
    m.config.ngram_order = c.at("ngram_order").get<size_t>();
    m.config.hash_buckets = c.at("hash_buckets").get<size_t>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.epochs = c.at("epochs").get<size_t>();
    m.config.seed = c.at("seed").get<uint64_t>();
    validate_config(m.config);

    m.label_set = j.at("label_set").get<std::vector<std::string>>();
    if (m.label_set.empty()) throw InputError(context + ": empty label set");

    const json& vocab = j.at("vocab");
    m.vocab_tokens.assign(vocab.size(), "");
    for (const auto& [tok, row] : vocab.items()) {
        size_t r = row.get<size_t>();
        if (r >= m.vocab_tokens.size() || !m.vocab_tokens[r].empty()) {
            throw InputError(context + ": vocab rows must be a permutation of 0..n-1");
        }
        m.vocab_tokens[r] = tok;
        m.vocab.emplace(tok, r);
    }

    m.input_embeddings = matrix_from_json(j.at("input_embeddings"), context, "input_embeddings");
    m.output_weights = matrix_from_json(j.at("output_weights"), context, "output_weights");
    if (m.input_embeddings.rows != m.vocab.size() + m.config.hash_buckets ||
        m.input_embeddings.cols != m.config.embedding_dim) {
        throw InputError(context + ": input_embeddings shape does not match config and vocab");
    }
    if (m.output_weights.rows != m.label_set.size() ||
        m.output_weights.cols != m.config.embedding_dim) {
        throw InputError(context + ": output_weights shape does not match label set and config");
    }
    return m;
}

void save_model(const TextModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write model file: " + path);
    out << model_to_json(model) << '\n';
    if (!out) throw InputError("failed writing model file: " + path);
}

TextModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str(), path);
}

std::vector<LabeledDoc> load_labeled_docs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open corpus file: " + path);
    std::vector<LabeledDoc> docs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError(path, lineno, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("text") || !j.contains("label") ||
            !j["text"].is_string() || !j["label"].is_string()) {
            throw InputError(path, lineno, "expected {\"text\": ..., \"label\": ...}");
        }
        docs.push_back({j["text"].get<std::string>(), j["label"].get<std::string>()});
    }
    return docs;
}

void save_labeled_docs(const std::vector<LabeledDoc>& docs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write corpus file: " + path);
    for (const auto& d : docs) {
        out << json{{"text", d.text}, {"label", d.label}}.dump() << '\n';
    }
    if (!out) throw InputError("failed writing corpus file: " + path);
}

}  // namespace tim
