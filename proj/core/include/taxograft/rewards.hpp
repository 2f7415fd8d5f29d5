#pragma once

#include <string>
#include <string_view>

#include "taxograft/embedding.hpp"

namespace taxograft {

/// The five reward components for one (predicted, true) hypernym pair and
/// their sum. total is always in [-2, 7]; an exact match scores the full 7.
struct RewardBreakdown {
    double label_reliability = 0.0;    // {0, 1}
    double semantic_consistency = 0.0; // [-1, 1]
    double length_conformity = 0.0;    // [-1, 0]
    double token_overlap = 0.0;        // [0, 1]
    double fuzzy_edit = 0.0;           // the four fuzzy ratios, each [0, 1]
    double fuzzy_partial = 0.0;
    double fuzzy_token_sort = 0.0;
    double fuzzy_token_set = 0.0;
    double fuzzy_total = 0.0;          // sum of the four, [0, 4]
    double total = 0.0;
};

/// 1 iff the normalized strings are equal. Inputs are expected normalized.
int label_reliability(std::string_view predicted, std::string_view truth);

/// Cosine similarity of the two surface-name embeddings.
double semantic_consistency(EmbeddingProvider& provider, const std::string& predicted,
                            const std::string& truth);

/// 0 for equal character lengths, otherwise -|L1 - L2| / (L1 + L2).
double length_conformity(std::string_view predicted, std::string_view truth);

/// Jaccard overlap of the token sets; 0 when the intersection is empty.
double token_count_consistency(std::string_view predicted, std::string_view truth);

/// All five components on the normalized pair. Provider errors propagate.
RewardBreakdown total_reward(EmbeddingProvider& provider, std::string_view predicted,
                             std::string_view truth);

}  // namespace taxograft
