#include <random>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "taxograft/clustering.hpp"
#include "taxograft/rng.hpp"

namespace {

std::vector<std::pair<taxograft::TermId, taxograft::EmbeddingVector>> random_vectors(
    std::size_t n, std::size_t dim) {
    std::mt19937_64 rng(8);
    std::vector<std::pair<taxograft::TermId, taxograft::EmbeddingVector>> out;
    for (std::size_t i = 0; i < n; ++i) {
        taxograft::EmbeddingVector v(dim);
        for (auto& x : v) x = taxograft::uniform_real(rng, -1.0, 1.0);
        out.emplace_back(static_cast<taxograft::TermId>(i), std::move(v));
    }
    return out;
}

void BM_AgglomerativeClustering(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto input = random_vectors(n, 32);
    const std::size_t m = taxograft::default_cluster_count(n);
    for (auto _ : state) {
        auto model = taxograft::cluster_terms(input, m);
        benchmark::DoNotOptimize(model.cluster_count());
    }
}
BENCHMARK(BM_AgglomerativeClustering)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_NearestCluster(benchmark::State& state) {
    auto input = random_vectors(256, 32);
    auto model = taxograft::cluster_terms(input, 16);
    auto probe = input[13].second;
    for (auto _ : state) {
        benchmark::DoNotOptimize(taxograft::nearest_cluster(model, probe));
    }
}
BENCHMARK(BM_NearestCluster);

}  // namespace
