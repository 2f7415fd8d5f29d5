#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taxograft/bm25.hpp"
#include "taxograft/clustering.hpp"
#include "taxograft/embedding.hpp"
#include "taxograft/generation.hpp"
#include "taxograft/prompt.hpp"
#include "taxograft/sampler.hpp"
#include "taxograft/taxonomy.hpp"

namespace taxograft {

struct PipelineOptions {
    std::size_t m = 0;  // cluster count; 0 selects max(2, round(sqrt(anchors)))
    std::size_t k = 5;  // demonstrations per prompt
    std::size_t q = 0;  // global draws; 0 means q = k
    bool use_global = true;
    bool use_local = true;
    Bm25Params bm25;
    GenerationConfig generation;
    std::uint64_t seed = 0;
    std::size_t concurrency = 4;  // bounded in-flight queries
};

struct InferenceResult {
    TermRecord query;
    std::string prompt_text;
    ParsedCompletion parsed;
    std::optional<TermId> resolved;  // id in the seed taxonomy
    std::chrono::microseconds latency{0};
    int attempt_count = 1;
    std::optional<std::string> error;  // per-query failure, batch continues
};

/// Clusters the seed anchors on their embedded definitions. The root is left
/// out: it has no hypernym, so it can never serve as a demonstration.
ClusterModel build_cluster_model(const Taxonomy& seed, EmbeddingProvider& provider,
                                 std::size_t m = 0);

/// Global and local pools for one query, honoring the use_global/use_local
/// toggles. The per-query RNG seed is derived from (options.seed, surface),
/// so results do not depend on batch order or concurrency width.
SamplePools build_pools(const Taxonomy& seed, const ClusterModel& model,
                        EmbeddingProvider& provider, const TermRecord& query,
                        const PipelineOptions& options);

/// Per query: build pools, build and render the prompt, generate, parse,
/// resolve. Queries run independently under options.concurrency threads;
/// failures are recorded in the result and never abort the batch.
std::vector<InferenceResult> run_expansion(const Taxonomy& seed,
                                           const std::vector<TermRecord>& queries,
                                           const PipelineOptions& options,
                                           EmbeddingProvider& provider,
                                           InferenceBackend& backend);

struct EvaluationReport {
    std::size_t query_count = 0;
    double accuracy = 0.0;                 // unresolved predictions count as wrong
    std::optional<double> wu_palmer_mean;  // over resolved pairs; absent if none
    std::size_t unresolved_count = 0;
    std::size_t augmentation_count = 0;    // discarded pairs, reported only
};

/// gold[i] is the true parent (seed-taxonomy id) of results[i]. Throws
/// std::invalid_argument on a length mismatch.
EvaluationReport run_evaluation(const Taxonomy& seed, const std::vector<InferenceResult>& results,
                                const std::vector<TermId>& gold);

/// One JSON record per line:
/// {"term", "prediction", "resolved", "parent_gold", "wu_palmer", "augmentations"}.
void write_predictions_jsonl(std::ostream& out, const Taxonomy& seed,
                             const std::vector<InferenceResult>& results,
                             const std::vector<TermId>& gold);

std::string to_json_string(const EvaluationReport& report);

}  // namespace taxograft
