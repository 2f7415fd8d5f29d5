#include "taxograft/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "taxograft/errors.hpp"
#include "taxograft/metrics.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

ClusterModel build_cluster_model(const Taxonomy& seed, EmbeddingProvider& provider,
                                 std::size_t m) {
    std::vector<std::string> definitions;
    std::vector<TermId> ids;
    for (const auto& rec : seed.records()) {
        if (rec.id == seed.root()) continue;
        ids.push_back(rec.id);
        definitions.push_back(rec.definition);
    }
    if (ids.size() < 2) {
        throw StructuralError("clustering needs at least two non-root anchors");
    }
    auto vectors = provider.embed_batch(definitions);
    std::vector<std::pair<TermId, EmbeddingVector>> input;
    input.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) input.emplace_back(ids[i], std::move(vectors[i]));
    if (m == 0) m = default_cluster_count(ids.size());
    m = std::min(m, ids.size());
    return cluster_terms(std::move(input), m);
}

SamplePools build_pools(const Taxonomy& seed, const ClusterModel& model,
                        EmbeddingProvider& provider, const TermRecord& query,
                        const PipelineOptions& options) {
    SamplePools pools;
    const std::size_t query_cluster = locate_query_cluster(model, seed, provider, query);
    if (options.use_local) {
        pools.local =
            sorted_local_samples_in_cluster(model, seed, query_cluster, query, options.bm25);
    }
    if (options.use_global) {
        std::size_t q = options.q == 0 ? options.k : options.q;
        const std::size_t eligible = model.total_members() - model.clusters[query_cluster].size();
        q = std::min(q, eligible);
        if (q > 0) {
            const std::uint64_t seed_q = hash_combine(options.seed, fnv1a64(query.surface));
            pools.global = diverse_global_samples_excluding(model, query_cluster, q, seed_q);
        }
    }
    return pools;
}

namespace {

InferenceResult process_query(const Taxonomy& seed, const ClusterModel& model,
                              EmbeddingProvider& provider, InferenceBackend& backend,
                              const PipelineOptions& options, const TermRecord& query) {
    InferenceResult result;
    result.query = query;
    const auto start = std::chrono::steady_clock::now();
    try {
        SamplePools pools = build_pools(seed, model, provider, query, options);
        const std::size_t k = std::min(options.k, pools.global.size() + pools.local.size());
        Prompt prompt = build_prompt(pools, seed, query, k);
        result.prompt_text = render_prompt(prompt);

        BackendResponse response = backend.generate(result.prompt_text, options.generation);
        result.attempt_count = response.attempts;
        result.parsed = parse_completion(response.text, prompt.anchors);
        if (result.parsed.resolved_anchor) {
            result.resolved = seed.find(*result.parsed.resolved_anchor);
        }
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    result.latency = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
}

}  // namespace

std::vector<InferenceResult> run_expansion(const Taxonomy& seed,
                                           const std::vector<TermRecord>& queries,
                                           const PipelineOptions& options,
                                           EmbeddingProvider& provider,
                                           InferenceBackend& backend) {
    ClusterModel model = build_cluster_model(seed, provider, options.m);
    std::vector<InferenceResult> results(queries.size());

    const std::size_t width =
        std::max<std::size_t>(1, std::min(options.concurrency, queries.size()));
    if (width == 1) {
        for (std::size_t i = 0; i < queries.size(); ++i) {
            results[i] = process_query(seed, model, provider, backend, options, queries[i]);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= queries.size()) return;
            results[i] = process_query(seed, model, provider, backend, options, queries[i]);
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(width);
    for (std::size_t w = 0; w < width; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return results;
}

EvaluationReport run_evaluation(const Taxonomy& seed, const std::vector<InferenceResult>& results,
                                const std::vector<TermId>& gold) {
    if (results.size() != gold.size()) {
        throw std::invalid_argument("results and gold parents must align");
    }
    if (results.empty()) throw std::invalid_argument("nothing to evaluate");

    EvaluationReport report;
    report.query_count = results.size();
    std::size_t hits = 0;
    double wu_sum = 0.0;
    std::size_t wu_count = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        report.augmentation_count += results[i].parsed.augmentations.size();
        if (!results[i].resolved) {
            ++report.unresolved_count;
            continue;
        }
        if (*results[i].resolved == gold[i]) ++hits;
        wu_sum += wu_palmer(seed, *results[i].resolved, gold[i]);
        ++wu_count;
    }
    report.accuracy = static_cast<double>(hits) / static_cast<double>(results.size());
    if (wu_count > 0) report.wu_palmer_mean = wu_sum / static_cast<double>(wu_count);
    return report;
}

void write_predictions_jsonl(std::ostream& out, const Taxonomy& seed,
                             const std::vector<InferenceResult>& results,
                             const std::vector<TermId>& gold) {
    if (results.size() != gold.size()) {
        throw std::invalid_argument("results and gold parents must align");
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        nlohmann::json rec{{"term", r.query.surface},
                           {"prediction", r.parsed.prediction},
                           {"resolved", nullptr},
                           {"parent_gold", seed.record(gold[i]).surface},
                           {"wu_palmer", nullptr},
                           {"augmentations", nlohmann::json::array()}};
        if (r.resolved) {
            rec["resolved"] = seed.record(*r.resolved).surface;
            rec["wu_palmer"] = wu_palmer(seed, *r.resolved, gold[i]);
        }
        for (const auto& aug : r.parsed.augmentations) {
            rec["augmentations"].push_back({{"hypernym", aug.hypernym}, {"hyponym", aug.hyponym}});
        }
        if (r.error) rec["error"] = *r.error;
        out << rec.dump() << '\n';
    }
}

std::string to_json_string(const EvaluationReport& report) {
    nlohmann::json j{{"queries", report.query_count},
                     {"accuracy", report.accuracy},
                     {"wu_palmer_mean", nullptr},
                     {"unresolved", report.unresolved_count},
                     {"augmentations", report.augmentation_count}};
    if (report.wu_palmer_mean) j["wu_palmer_mean"] = *report.wu_palmer_mean;
    return j.dump();
}

}  // namespace taxograft
