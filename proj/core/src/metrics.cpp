#include "taxograft/metrics.hpp"

#include <stdexcept>

namespace taxograft {

double accuracy(const std::vector<PredictionPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("accuracy over an empty list");
    std::size_t hits = 0;
    for (const auto& [predicted, truth] : pairs) {
        if (predicted == truth) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double wu_palmer(const Taxonomy& t, TermId predicted, TermId truth) {
    TermId lca = t.lowest_common_ancestor(predicted, truth);
    return 2.0 * t.depth(lca) / static_cast<double>(t.depth(predicted) + t.depth(truth));
}

double wu_palmer_mean(const Taxonomy& t, const std::vector<PredictionPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("wu_palmer_mean over an empty list");
    double sum = 0.0;
    for (const auto& [predicted, truth] : pairs) {
        sum += wu_palmer(t, predicted, truth);
    }
    return sum / static_cast<double>(pairs.size());
}

}  // namespace taxograft
