#pragma once

#include <cstdint>
#include <vector>

#include "tim/classifier.hpp"

namespace tim {

// Labeled template corpora for the two classification tasks. Generation is
// deterministic for a fixed (per_class, seed); classes are interleaved so any
// prefix stays roughly balanced.
std::vector<LabeledDoc> generate_incident_corpus(size_t per_class, uint64_t seed);
std::vector<LabeledDoc> generate_sentiment_corpus(size_t per_class, uint64_t seed);

}  // namespace tim
