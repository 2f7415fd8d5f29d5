#include "taxograft/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace taxograft {

std::optional<std::size_t> ClusterModel::cluster_of(TermId id) const {
    auto it = membership.find(id);
    if (it == membership.end()) return std::nullopt;
    return it->second;
}

std::size_t ClusterModel::total_members() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.size();
    return n;
}

ClusterModel cluster_terms(std::vector<std::pair<TermId, EmbeddingVector>> vectors,
                           std::size_t m) {
    const std::size_t n = vectors.size();
    if (m < 2 || m > n) {
        throw std::invalid_argument("cluster count " + std::to_string(m) +
                                    " out of range [2, " + std::to_string(n) + "]");
    }
    std::sort(vectors.begin(), vectors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < n; ++i) {
        if (vectors[i].first == vectors[i - 1].first) {
            throw std::invalid_argument("duplicate term id in clustering input");
        }
        if (vectors[i].second.size() != vectors[0].second.size()) {
            throw std::invalid_argument("clustering input mixes vector dimensions");
        }
    }

    // Average linkage via the Lance--Williams update on a dense matrix.
    // Active cluster i is keyed by its smallest member id for tie-breaking.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = 1.0 - cosine_similarity(vectors[i].second, vectors[j].second);
            dist[i][j] = dist[j][i] = d;
        }
    }
    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1);
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {i};

    std::size_t remaining = n;
    while (remaining > m) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (!found || dist[i][j] < best) {
                    best = dist[i][j];
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        // Merge bj into bi; slot index equals smallest member position, so
        // scanning i<j in order realizes the lexicographic tie-break.
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            dist[bi][k] = dist[k][bi] =
                (static_cast<double>(size[bi]) * dist[bi][k] +
                 static_cast<double>(size[bj]) * dist[bj][k]) /
                static_cast<double>(size[bi] + size[bj]);
        }
        members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
        size[bi] += size[bj];
        active[bj] = false;
        --remaining;
    }

    ClusterModel model;
    const std::size_t dim = vectors[0].second.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        std::vector<TermId> ids;
        EmbeddingVector centroid(dim, 0.0);
        for (std::size_t pos : members[i]) {
            ids.push_back(vectors[pos].first);
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += vectors[pos].second[d];
        }
        for (auto& x : centroid) x /= static_cast<double>(ids.size());
        std::sort(ids.begin(), ids.end());
        model.clusters.push_back(std::move(ids));
        model.centroids.push_back(std::move(centroid));
    }
    // Slots are already ordered by smallest member position == smallest id.
    for (std::size_t c = 0; c < model.clusters.size(); ++c) {
        for (TermId id : model.clusters[c]) model.membership.emplace(id, c);
    }
    return model;
}

std::size_t nearest_cluster(const ClusterModel& model, const EmbeddingVector& v) {
    if (model.clusters.empty()) throw std::invalid_argument("empty cluster model");
    std::size_t best = 0;
    double best_sim = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.centroids.size(); ++i) {
        double sim = cosine_similarity(model.centroids[i], v);
        if (sim > best_sim) {
            best_sim = sim;
            best = i;
        }
    }
    return best;
}

std::size_t default_cluster_count(std::size_t n) {
    auto m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return std::max<std::size_t>(2, m);
}

}  // namespace taxograft
