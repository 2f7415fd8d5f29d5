#include "taxograft/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include "taxograft/errors.hpp"
#include "taxograft/rng.hpp"

namespace taxograft {

std::vector<TermId> diverse_global_samples_excluding(const ClusterModel& model,
                                                     std::optional<std::size_t> excluded_cluster,
                                                     std::size_t q, std::uint64_t seed) {
    struct Pool {
        std::size_t count = 0;
        std::vector<TermId> unused;
    };
    std::vector<Pool> pools;
    std::size_t available = 0;
    for (std::size_t c = 0; c < model.cluster_count(); ++c) {
        if (excluded_cluster && *excluded_cluster == c) continue;
        pools.push_back(Pool{0, model.clusters[c]});
        available += model.clusters[c].size();
    }
    if (pools.empty()) {
        throw StructuralError("every cluster contains the query; no global pool exists");
    }
    if (q > available) {
        throw std::invalid_argument("requested " + std::to_string(q) +
                                    " global samples but only " + std::to_string(available) +
                                    " nodes are eligible");
    }

    std::mt19937_64 rng(seed);
    std::vector<TermId> out;
    out.reserve(q);
    std::vector<std::size_t> minimal;
    while (out.size() < q) {
        std::size_t min_count = SIZE_MAX;
        for (const auto& p : pools) {
            if (!p.unused.empty()) min_count = std::min(min_count, p.count);
        }
        minimal.clear();
        for (std::size_t i = 0; i < pools.size(); ++i) {
            if (!pools[i].unused.empty() && pools[i].count == min_count) minimal.push_back(i);
        }
        Pool& chosen = pools[minimal[uniform_index(rng, minimal.size())]];
        std::size_t pick = uniform_index(rng, chosen.unused.size());
        out.push_back(chosen.unused[pick]);
        chosen.unused.erase(chosen.unused.begin() + static_cast<std::ptrdiff_t>(pick));
        ++chosen.count;
    }
    return out;
}

std::vector<TermId> diverse_global_samples(const ClusterModel& model, TermId query,
                                           std::size_t q, std::uint64_t seed) {
    auto cluster = model.cluster_of(query);
    if (!cluster) {
        throw std::invalid_argument("query term " + std::to_string(query) +
                                    " is not a clustered anchor");
    }
    return diverse_global_samples_excluding(model, cluster, q, seed);
}

std::vector<TermId> sorted_local_samples_in_cluster(const ClusterModel& model,
                                                    const Taxonomy& taxonomy,
                                                    std::size_t cluster_index,
                                                    const TermRecord& query, Bm25Params params) {
    if (cluster_index >= model.cluster_count()) {
        throw std::invalid_argument("cluster index out of range");
    }
    std::vector<TermId> members;
    for (TermId id : model.clusters[cluster_index]) {
        if (taxonomy.record(id).surface != query.surface) members.push_back(id);
    }
    if (members.empty()) return {};

    std::vector<std::string> corpus;
    corpus.reserve(members.size());
    for (TermId id : members) corpus.push_back(taxonomy.record(id).definition);
    Bm25Index index(corpus, params);

    std::vector<std::pair<double, TermId>> scored;
    scored.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        scored.emplace_back(index.score(query.definition, corpus[i]), members[i]);
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return taxonomy.record(a.second).surface < taxonomy.record(b.second).surface;
    });

    std::vector<TermId> out;
    out.reserve(scored.size());
    for (const auto& [score, id] : scored) out.push_back(id);
    return out;
}

std::size_t locate_query_cluster(const ClusterModel& model, const Taxonomy& taxonomy,
                                 EmbeddingProvider& provider, const TermRecord& query) {
    if (auto id = taxonomy.find(query.surface)) {
        if (auto cluster = model.cluster_of(*id)) return *cluster;
    }
    return nearest_cluster(model, provider.embed(query.definition));
}

std::vector<TermId> sorted_local_samples(const ClusterModel& model, const Taxonomy& taxonomy,
                                         EmbeddingProvider& provider, const TermRecord& query,
                                         Bm25Params params) {
    std::size_t cluster = locate_query_cluster(model, taxonomy, provider, query);
    return sorted_local_samples_in_cluster(model, taxonomy, cluster, query, params);
}

}  // namespace taxograft
