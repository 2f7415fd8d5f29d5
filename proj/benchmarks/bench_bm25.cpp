#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "taxograft/bm25.hpp"
#include "taxograft/rng.hpp"

namespace {

std::vector<std::string> synthetic_corpus(std::size_t docs, std::size_t words_per_doc) {
    static const char* vocab[] = {"water",  "soil",   "air",    "waste",   "forest",
                                  "energy", "law",    "policy", "species", "pollution",
                                  "marine", "mineral"};
    std::mt19937_64 rng(3);
    std::vector<std::string> corpus;
    for (std::size_t d = 0; d < docs; ++d) {
        std::string doc;
        for (std::size_t w = 0; w < words_per_doc; ++w) {
            if (w > 0) doc += ' ';
            doc += vocab[taxograft::uniform_index(rng, 12)];
        }
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

void BM_Bm25Build(benchmark::State& state) {
    auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 24);
    for (auto _ : state) {
        taxograft::Bm25Index index(corpus);
        benchmark::DoNotOptimize(index.avg_doc_length());
    }
}
BENCHMARK(BM_Bm25Build)->Arg(64)->Arg(512);

void BM_Bm25Score(benchmark::State& state) {
    auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 24);
    taxograft::Bm25Index index(corpus);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.score("water pollution policy", corpus[i % corpus.size()]));
        ++i;
    }
}
BENCHMARK(BM_Bm25Score)->Arg(64)->Arg(512);

}  // namespace
