#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace taxograft {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Canonical surface-name form: trimmed, lowercased, runs of whitespace
/// collapsed to single spaces.
std::string normalize_surface(std::string_view s);

/// Shared token split used by BM25, the token-level rewards and the mock
/// embedder: lowercase, split on whitespace and hyphens, drop empties.
std::vector<std::string> tokenize(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Filesystem-safe name: lowercase alphanumerics, everything else collapsed
/// to single dashes.
std::string slugify(std::string_view s);

/// FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view s);

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

}  // namespace taxograft
