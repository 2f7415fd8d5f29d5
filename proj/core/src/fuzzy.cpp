#include "taxograft/fuzzy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "taxograft/text.hpp"

namespace taxograft {

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t cur = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = cur;
        }
    }
    return row[b.size()];
}

double edit_distance_ratio(std::string_view a, std::string_view b) {
    const std::size_t total = a.size() + b.size();
    if (total == 0) return 1.0;
    return static_cast<double>(total - levenshtein_distance(a, b)) / static_cast<double>(total);
}

namespace {

/// Best ratio between `shorter` and any window of `longer` no longer than
/// it. One DP sweep per start position scores every window length at once:
/// after row l the final column holds lev(longer[start, start+l), shorter).
double best_window_ratio(std::string_view longer, std::string_view shorter) {
    const std::size_t s = shorter.size();
    double best = 0.0;
    std::vector<std::size_t> row(s + 1);
    for (std::size_t start = 0; start < longer.size(); ++start) {
        const std::size_t max_len = std::min(s, longer.size() - start);
        for (std::size_t j = 0; j <= s; ++j) row[j] = j;
        for (std::size_t l = 1; l <= max_len; ++l) {
            std::size_t diag = row[0];
            row[0] = l;
            for (std::size_t j = 1; j <= s; ++j) {
                std::size_t cur = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                                   diag + (longer[start + l - 1] == shorter[j - 1] ? 0 : 1)});
                diag = cur;
            }
            double ratio = static_cast<double>(l + s - row[s]) / static_cast<double>(l + s);
            best = std::max(best, ratio);
        }
    }
    return best;
}

}  // namespace

double partial_edit_distance_ratio(std::string_view a, std::string_view b) {
    std::string_view longer = a.size() >= b.size() ? a : b;
    std::string_view shorter = a.size() >= b.size() ? b : a;
    if (shorter.empty()) return longer.empty() ? 1.0 : 0.0;
    if (a.size() == b.size()) {
        // either string may play the window source; take both so the ratio
        // stays symmetric
        return std::max(best_window_ratio(a, b), best_window_ratio(b, a));
    }
    return best_window_ratio(longer, shorter);
}

namespace {

std::string sorted_join(std::vector<std::string> tokens) {
    std::sort(tokens.begin(), tokens.end());
    return join(tokens, " ");
}

}  // namespace

double token_sort_ratio(std::string_view a, std::string_view b) {
    return edit_distance_ratio(sorted_join(tokenize(a)), sorted_join(tokenize(b)));
}

double token_set_ratio(std::string_view a, std::string_view b) {
    std::set<std::string> sa, sb;
    for (auto& t : tokenize(a)) sa.insert(std::move(t));
    for (auto& t : tokenize(b)) sb.insert(std::move(t));
    if (sa.empty() || sb.empty()) return sa.empty() == sb.empty() ? 1.0 : 0.0;

    std::vector<std::string> common, only_a, only_b;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));

    const std::string t0 = join(common, " ");
    auto merge = [&common](const std::vector<std::string>& rest) {
        std::vector<std::string> all = common;
        all.insert(all.end(), rest.begin(), rest.end());
        return join(all, " ");
    };
    const std::string t1 = merge(only_a);
    const std::string t2 = merge(only_b);
    return std::max({edit_distance_ratio(t0, t1), edit_distance_ratio(t0, t2),
                     edit_distance_ratio(t1, t2)});
}

double fuzzy_label_matching(std::string_view a, std::string_view b) {
    return edit_distance_ratio(a, b) + partial_edit_distance_ratio(a, b) +
           token_sort_ratio(a, b) + token_set_ratio(a, b);
}

}  // namespace taxograft
