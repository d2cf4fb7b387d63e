#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tim/classifier.hpp"
#include "tim/post.hpp"

namespace tim {

// Text with emoji codepoints removed; other characters untouched.
std::string strip_emoji(const std::string& text);

// Keeps comments that still carry at least four word tokens once emoji are
// removed; emoji-only and near-empty comments drop out.
std::vector<Comment> filter_comments(const std::vector<Comment>& comments);

// Predicts a sentiment label per comment. Every comment must already satisfy
// the filter rule; the model's label set must be exactly the sentiment one.
std::map<std::string, std::string> sentiment_classify(const TextModel& model,
                                                      const std::vector<Comment>& comments);

struct AgreementResult {
    double kappa = 0.0;
    double observed_agreement = 0.0;
    double expected_agreement = 0.0;
};

// Cohen's kappa over two equal-length label sequences. Degenerate case of
// both annotators constant and identical yields kappa 1.
AgreementResult cohen_kappa(const std::vector<std::string>& labels_a,
                            const std::vector<std::string>& labels_b);

struct InteractionSummary {
    std::string post_id;
    int64_t reactions_total = 0;
    int64_t comments_total = 0;
    int64_t interactions = 0;
    std::map<std::string, int64_t> reaction_breakdown;
};

InteractionSummary interaction_summary(const Post& post);

// Column sums of reaction maps per label. Every label in label_set gets an
// entry, even with no posts.
std::map<std::string, std::map<std::string, int64_t>> reaction_distribution(
    const std::vector<std::pair<std::string, const Post*>>& labeled_posts,
    const std::vector<std::string>& label_set);

struct AnnotationSet {
    // annotator → item → label; item ids shared across annotators.
    std::map<std::string, std::map<std::string, std::string>> by_annotator;
};

// annotations.csv with columns item_id, annotator_id, label.
AnnotationSet load_annotations(const std::string& path);

struct AnnotatorPairAgreement {
    std::string annotator_a;
    std::string annotator_b;
    int64_t items = 0;
    AgreementResult result;
};

// Kappa for every annotator pair sharing at least one item, pairs in
// lexicographic order.
std::vector<AnnotatorPairAgreement> pairwise_agreement(const AnnotationSet& annotations);

}  // namespace tim
