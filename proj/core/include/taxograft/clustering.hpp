#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "taxograft/embedding.hpp"
#include "taxograft/taxonomy.hpp"

namespace taxograft {

/// Partition of the anchor terms into m clusters with mean-vector centroids.
/// Clusters are ordered by their smallest member id; members are sorted.
struct ClusterModel {
    std::vector<std::vector<TermId>> clusters;
    std::vector<EmbeddingVector> centroids;

    std::size_t cluster_count() const { return clusters.size(); }
    std::optional<std::size_t> cluster_of(TermId id) const;
    std::size_t total_members() const;

    std::unordered_map<TermId, std::size_t> membership;
};

/// Agglomerative clustering with average linkage on cosine distance, cut at
/// m clusters. Ties merge the lexicographically smallest pair of cluster
/// ids, so the partition is independent of input order.
/// Throws std::invalid_argument unless 2 <= m <= |vectors|.
ClusterModel cluster_terms(std::vector<std::pair<TermId, EmbeddingVector>> vectors,
                           std::size_t m);

/// Index of the centroid most cosine-similar to v; ties break toward the
/// lowest index. Throws std::invalid_argument on empty model or dimension
/// mismatch.
std::size_t nearest_cluster(const ClusterModel& model, const EmbeddingVector& v);

/// max(2, round(sqrt(n))) — the default cluster count for n anchor terms.
std::size_t default_cluster_count(std::size_t n);

}  // namespace taxograft
