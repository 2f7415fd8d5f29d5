#pragma once

#include <utility>
#include <vector>

#include "taxograft/taxonomy.hpp"

namespace taxograft {

using PredictionPair = std::pair<TermId, TermId>;  // (predicted, truth)

/// Hit@1: fraction of exact matches. Throws std::invalid_argument on an
/// empty list.
double accuracy(const std::vector<PredictionPair>& pairs);

/// Wu & Palmer similarity: 2 * depth(LCA) / (depth(predicted) + depth(truth))
/// over the seed taxonomy tree. Always in (0, 1]; exactly 1 iff equal.
double wu_palmer(const Taxonomy& t, TermId predicted, TermId truth);

double wu_palmer_mean(const Taxonomy& t, const std::vector<PredictionPair>& pairs);

}  // namespace taxograft
