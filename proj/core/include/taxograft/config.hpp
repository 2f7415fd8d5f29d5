#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "taxograft/embedding.hpp"
#include "taxograft/generation.hpp"
#include "taxograft/pipeline.hpp"
#include "taxograft/taxonomy.hpp"

namespace taxograft {

/// Everything a pipeline run needs, loadable from one JSON document. The
/// endpoint auth token is never stored in the file; it comes from the
/// environment variable named by `auth_token_env`.
struct HarnessConfig {
    std::string edges_path;
    std::string definitions_path;
    double test_fraction = 0.2;
    std::uint64_t split_seed = 42;

    PipelineOptions pipeline;

    std::string backend = "oracle";  // oracle | noisy | fixed | remote
    double corruption_rate = 0.0;    // noisy backend
    std::string fixed_response;      // fixed backend
    std::string endpoint;            // remote completions base URL
    std::string embedding_endpoint;  // remote embeddings base URL ("" = mock)
    std::uint64_t embedding_seed = 0;
    RetryPolicy retry;
    std::string auth_token_env = "TAXOGRAFT_API_TOKEN";
};

HarnessConfig load_config(const std::filesystem::path& path);
HarnessConfig parse_config(const std::string& json_text);
std::string to_json_string(const HarnessConfig& config);

/// Mock provider, or the remote one when embedding_endpoint is set.
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const HarnessConfig& config);

}  // namespace taxograft
