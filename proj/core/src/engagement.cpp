#include "tim/engagement.hpp"

#include <algorithm>

#include "tim/csv.hpp"
#include "tim/errors.hpp"
#include "tim/text.hpp"
#include "tim/unicode.hpp"

namespace tim {

std::string strip_emoji(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : utf8_decode(text)) {
        if (!is_emoji(cp)) utf8_append(out, cp);
    }
    return out;
}

namespace {

bool passes_filter(const Comment& c) {
    return tokenize(strip_emoji(c.text)).size() >= 4;
}

}  // namespace

std::vector<Comment> filter_comments(const std::vector<Comment>& comments) {
    std::vector<Comment> kept;
    for (const auto& c : comments) {
        if (passes_filter(c)) kept.push_back(c);
    }
    return kept;
}

std::map<std::string, std::string> sentiment_classify(const TextModel& model,
                                                      const std::vector<Comment>& comments) {
    if (model.label_set != kSentimentLabels) {
        throw InputError("sentiment model must carry the label set positive, neutral, negative");
    }
    std::map<std::string, std::string> labels;
    for (const auto& c : comments) {
        if (!passes_filter(c)) {
            throw InputError("comment '" + c.id + "' does not satisfy the comment filter");
        }
        labels[c.id] = predict(model, c.text).label;
    }
    return labels;
}

AgreementResult cohen_kappa(const std::vector<std::string>& labels_a,
                            const std::vector<std::string>& labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw InputError("annotator label lists differ in length (" +
                         std::to_string(labels_a.size()) + " vs " +
                         std::to_string(labels_b.size()) + ")");
    }
    if (labels_a.empty()) throw InputError("cohen_kappa requires at least one item");

    const double n = static_cast<double>(labels_a.size());
    std::map<std::string, int64_t> count_a, count_b;
    int64_t equal = 0;
    for (size_t i = 0; i < labels_a.size(); ++i) {
        count_a[labels_a[i]] += 1;
        count_b[labels_b[i]] += 1;
        if (labels_a[i] == labels_b[i]) ++equal;
    }
    AgreementResult r;
    r.observed_agreement = static_cast<double>(equal) / n;
    for (const auto& [label, ca] : count_a) {
        auto it = count_b.find(label);
        if (it == count_b.end()) continue;
        r.expected_agreement += (static_cast<double>(ca) / n) *
                                (static_cast<double>(it->second) / n);
    }
    if (r.expected_agreement >= 1.0) {
        r.kappa = 1.0;
    } else {
        r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
    }
    return r;
}

InteractionSummary interaction_summary(const Post& post) {
    InteractionSummary s;
    s.post_id = post.id;
    for (const auto& [kind, count] : post.reactions) {
        s.reaction_breakdown[kind] = count;
        s.reactions_total += count;
    }
    s.comments_total = static_cast<int64_t>(post.comments.size());
    s.interactions = s.reactions_total + s.comments_total;
    return s;
}

std::map<std::string, std::map<std::string, int64_t>> reaction_distribution(
    const std::vector<std::pair<std::string, const Post*>>& labeled_posts,
    const std::vector<std::string>& label_set) {
    std::map<std::string, std::map<std::string, int64_t>> table;
    for (const auto& label : label_set) table[label];
    for (const auto& [label, post] : labeled_posts) {
        auto it = table.find(label);
        if (it == table.end()) {
            throw InputError("post '" + post->id + "' carries label '" + label +
                             "' outside the declared label set");
        }
        for (const auto& [kind, count] : post->reactions) it->second[kind] += count;
    }
    return table;
}

AnnotationSet load_annotations(const std::string& path) {
    CsvTable t = read_csv_file(path);
    int c_item = t.column("item_id");
    int c_annotator = t.column("annotator_id");
    int c_label = t.column("label");
    if (c_item < 0) throw InputError(path + ": missing required column 'item_id'");
    if (c_annotator < 0) throw InputError(path + ": missing required column 'annotator_id'");
    if (c_label < 0) throw InputError(path + ": missing required column 'label'");

    AnnotationSet set;
    for (const auto& row : t.rows) {
        const std::string& item = row.fields.at(c_item);
        const std::string& annotator = row.fields.at(c_annotator);
        const std::string& label = row.fields.at(c_label);
        if (item.empty() || annotator.empty() || label.empty()) {
            throw InputError(path, row.line, "item_id, annotator_id and label must be non-empty");
        }
        auto [it, inserted] = set.by_annotator[annotator].emplace(item, label);
        if (!inserted) {
            throw InputError(path, row.line, "annotator '" + annotator +
                             "' labels item '" + item + "' twice");
        }
    }
    return set;
}

std::vector<AnnotatorPairAgreement> pairwise_agreement(const AnnotationSet& annotations) {
    std::vector<std::string> annotators;
    for (const auto& [name, _] : annotations.by_annotator) annotators.push_back(name);

    std::vector<AnnotatorPairAgreement> out;
    for (size_t i = 0; i < annotators.size(); ++i) {
        for (size_t j = i + 1; j < annotators.size(); ++j) {
            const auto& items_a = annotations.by_annotator.at(annotators[i]);
            const auto& items_b = annotations.by_annotator.at(annotators[j]);
            std::vector<std::string> a, b;
            for (const auto& [item, label] : items_a) {
                auto it = items_b.find(item);
                if (it == items_b.end()) continue;
                a.push_back(label);
                b.push_back(it->second);
            }
            if (a.empty()) continue;
            AnnotatorPairAgreement pair;
            pair.annotator_a = annotators[i];
            pair.annotator_b = annotators[j];
            pair.items = static_cast<int64_t>(a.size());
            pair.result = cohen_kappa(a, b);
            out.push_back(std::move(pair));
        }
    }
    return out;
}

}  // namespace tim
