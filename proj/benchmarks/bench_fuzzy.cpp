#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "taxograft/fuzzy.hpp"
#include "taxograft/rng.hpp"

namespace {

std::vector<std::string> random_phrases(std::size_t n, std::size_t max_len) {
    static const char alphabet[] = "abcdefghij klmnop-qrst";
    std::mt19937_64 rng(12);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s;
        const std::size_t len = 3 + taxograft::uniform_index(rng, max_len);
        for (std::size_t j = 0; j < len; ++j) {
            s.push_back(alphabet[taxograft::uniform_index(rng, sizeof(alphabet) - 1)]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

void BM_Levenshtein(benchmark::State& state) {
    auto phrases = random_phrases(64, static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            taxograft::levenshtein_distance(phrases[i % 64], phrases[(i + 7) % 64]));
        ++i;
    }
}
BENCHMARK(BM_Levenshtein)->Arg(16)->Arg(64);

void BM_FuzzyLabelMatching(benchmark::State& state) {
    auto phrases = random_phrases(64, static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            taxograft::fuzzy_label_matching(phrases[i % 64], phrases[(i + 7) % 64]));
        ++i;
    }
}
BENCHMARK(BM_FuzzyLabelMatching)->Arg(16)->Arg(64);

void BM_PartialRatioVitaminPair(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            taxograft::partial_edit_distance_ratio("b complex vitamin", "vitamin b"));
    }
}
BENCHMARK(BM_PartialRatioVitaminPair);

}  // namespace
