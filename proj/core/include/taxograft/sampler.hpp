#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "taxograft/bm25.hpp"
#include "taxograft/clustering.hpp"
#include "taxograft/embedding.hpp"
#include "taxograft/taxonomy.hpp"

namespace taxograft {

/// Demonstration pools for one query: S_g drawn round-robin from the
/// clusters outside the query's own, S_l the query's cluster sorted by
/// descending BM25 relevance of definitions.
struct SamplePools {
    std::vector<TermId> global;
    std::vector<TermId> local;
};

/// Heterogeneity selection: clusters carry draw counters; each of the q
/// draws takes a random unused node from a minimum-count cluster (counter
/// ties and the node both chosen uniformly at random). Draws are without
/// replacement; an exhausted cluster leaves the rotation. Per-cluster counts
/// therefore differ by at most one until exhaustion.
/// Throws StructuralError when no cluster is eligible and
/// std::invalid_argument when q exceeds the eligible node count.
std::vector<TermId> diverse_global_samples_excluding(const ClusterModel& model,
                                                     std::optional<std::size_t> excluded_cluster,
                                                     std::size_t q, std::uint64_t seed);

/// Same, excluding the cluster that contains `query` (the query must be a
/// clustered member).
std::vector<TermId> diverse_global_samples(const ClusterModel& model, TermId query,
                                           std::size_t q, std::uint64_t seed);

/// Members of cluster `cluster_index` minus the query itself, ranked by
/// descending BM25 score of their definitions against the query definition
/// (corpus = the cluster's definitions); ties break lexicographically on the
/// surface name. Empty result when the cluster holds only the query.
std::vector<TermId> sorted_local_samples_in_cluster(const ClusterModel& model,
                                                    const Taxonomy& taxonomy,
                                                    std::size_t cluster_index,
                                                    const TermRecord& query,
                                                    Bm25Params params = {});

/// Locates the query's cluster (own membership when the query is an anchor,
/// otherwise the centroid nearest to its embedded definition) and ranks it.
std::vector<TermId> sorted_local_samples(const ClusterModel& model, const Taxonomy& taxonomy,
                                         EmbeddingProvider& provider, const TermRecord& query,
                                         Bm25Params params = {});

/// Cluster index used for both pools: membership by surface when the query
/// is an anchor, else nearest centroid by embedded definition.
std::size_t locate_query_cluster(const ClusterModel& model, const Taxonomy& taxonomy,
                                 EmbeddingProvider& provider, const TermRecord& query);

}  // namespace taxograft
