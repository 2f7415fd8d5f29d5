#pragma once

#include <cstddef>
#include <string_view>

namespace taxograft {

/// Unit-cost edit distance (insert, delete, substitute all cost 1).
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

/// (|a| + |b| - lev(a, b)) / (|a| + |b|); 1.0 when both strings are empty.
double edit_distance_ratio(std::string_view a, std::string_view b);

/// Best edit_distance_ratio between the shorter string and any contiguous
/// substring of the longer one no longer than the shorter.
double partial_edit_distance_ratio(std::string_view a, std::string_view b);

/// edit_distance_ratio of the two strings after tokenizing, sorting the
/// tokens lexicographically and re-joining with single spaces.
double token_sort_ratio(std::string_view a, std::string_view b);

/// Builds t0 = sorted token intersection, t1 = t0 + sorted(A - B),
/// t2 = t0 + sorted(B - A) (space-joined, trimmed) and returns the best
/// edit_distance_ratio among the pairs (t0,t1), (t0,t2), (t1,t2).
/// Zero when exactly one side has no tokens.
double token_set_ratio(std::string_view a, std::string_view b);

inline constexpr double kFuzzyMaxTotal = 4.0;

/// Sum of the four ratios above, in [0, 4].
double fuzzy_label_matching(std::string_view a, std::string_view b);

}  // namespace taxograft
