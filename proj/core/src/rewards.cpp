#include "taxograft/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "taxograft/fuzzy.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

int label_reliability(std::string_view predicted, std::string_view truth) {
    return predicted == truth ? 1 : 0;
}

double semantic_consistency(EmbeddingProvider& provider, const std::string& predicted,
                            const std::string& truth) {
    return cosine_similarity(provider.embed(predicted), provider.embed(truth));
}

double length_conformity(std::string_view predicted, std::string_view truth) {
    const auto l1 = static_cast<double>(predicted.size());
    const auto l2 = static_cast<double>(truth.size());
    if (l1 == l2) return 0.0;
    return -std::abs(l1 - l2) / (l1 + l2);
}

double token_count_consistency(std::string_view predicted, std::string_view truth) {
    std::set<std::string> s1, s2;
    for (auto& t : tokenize(predicted)) s1.insert(std::move(t));
    for (auto& t : tokenize(truth)) s2.insert(std::move(t));
    std::vector<std::string> common;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                          std::back_inserter(common));
    if (common.empty()) return 0.0;
    const std::size_t unions = s1.size() + s2.size() - common.size();
    return static_cast<double>(common.size()) / static_cast<double>(unions);
}

RewardBreakdown total_reward(EmbeddingProvider& provider, std::string_view predicted,
                             std::string_view truth) {
    const std::string p = normalize_surface(predicted);
    const std::string t = normalize_surface(truth);

    RewardBreakdown r;
    r.label_reliability = label_reliability(p, t);
    r.semantic_consistency = semantic_consistency(provider, p, t);
    r.length_conformity = length_conformity(p, t);
    r.token_overlap = token_count_consistency(p, t);
    r.fuzzy_edit = edit_distance_ratio(p, t);
    r.fuzzy_partial = partial_edit_distance_ratio(p, t);
    r.fuzzy_token_sort = token_sort_ratio(p, t);
    r.fuzzy_token_set = token_set_ratio(p, t);
    r.fuzzy_total = r.fuzzy_edit + r.fuzzy_partial + r.fuzzy_token_sort + r.fuzzy_token_set;
    r.total = r.label_reliability + r.semantic_consistency + r.length_conformity +
              r.token_overlap + r.fuzzy_total;
    return r;
}

}  // namespace taxograft
