#include "taxograft/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "taxograft/errors.hpp"

namespace taxograft {

namespace {

std::string token_from_env(const std::string& var) {
    const char* value = std::getenv(var.c_str());
    return value == nullptr ? "" : value;
}

}  // namespace

HarnessConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError("config is not valid JSON: " + std::string(e.what()));
    }

    HarnessConfig c;
    c.edges_path = j.value("edges", c.edges_path);
    c.definitions_path = j.value("definitions", c.definitions_path);
    c.test_fraction = j.value("test_fraction", c.test_fraction);
    c.split_seed = j.value("split_seed", c.split_seed);

    c.pipeline.m = j.value("m", c.pipeline.m);
    c.pipeline.k = j.value("k", c.pipeline.k);
    c.pipeline.q = j.value("q", c.pipeline.q);
    c.pipeline.use_global = j.value("use_global", c.pipeline.use_global);
    c.pipeline.use_local = j.value("use_local", c.pipeline.use_local);
    c.pipeline.seed = j.value("seed", c.pipeline.seed);
    c.pipeline.concurrency = j.value("concurrency", c.pipeline.concurrency);
    if (j.contains("bm25")) {
        c.pipeline.bm25.k1 = j["bm25"].value("k1", c.pipeline.bm25.k1);
        c.pipeline.bm25.b = j["bm25"].value("b", c.pipeline.bm25.b);
    }
    if (j.contains("generation")) {
        const auto& g = j["generation"];
        c.pipeline.generation.temperature = g.value("temperature", 0.95);
        c.pipeline.generation.top_p = g.value("top_p", 1.0);
        c.pipeline.generation.sampling = g.value("sampling", true);
        c.pipeline.generation.beams = g.value("beams", 1);
        c.pipeline.generation.max_length = g.value("max_length", 1024);
    }

    c.backend = j.value("backend", c.backend);
    c.corruption_rate = j.value("corruption_rate", c.corruption_rate);
    c.fixed_response = j.value("fixed_response", c.fixed_response);
    c.endpoint = j.value("endpoint", c.endpoint);
    c.embedding_endpoint = j.value("embedding_endpoint", c.embedding_endpoint);
    c.embedding_seed = j.value("embedding_seed", c.embedding_seed);
    if (j.contains("retry")) {
        const auto& r = j["retry"];
        c.retry.max_attempts = r.value("max_attempts", c.retry.max_attempts);
        c.retry.base_delay_ms = r.value("base_delay_ms", c.retry.base_delay_ms);
        c.retry.backoff_factor = r.value("backoff_factor", c.retry.backoff_factor);
    }
    c.auth_token_env = j.value("auth_token_env", c.auth_token_env);
    return c;
}

HarnessConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_json_string(const HarnessConfig& c) {
    nlohmann::json j{
        {"edges", c.edges_path},
        {"definitions", c.definitions_path},
        {"test_fraction", c.test_fraction},
        {"split_seed", c.split_seed},
        {"m", c.pipeline.m},
        {"k", c.pipeline.k},
        {"q", c.pipeline.q},
        {"use_global", c.pipeline.use_global},
        {"use_local", c.pipeline.use_local},
        {"seed", c.pipeline.seed},
        {"concurrency", c.pipeline.concurrency},
        {"bm25", {{"k1", c.pipeline.bm25.k1}, {"b", c.pipeline.bm25.b}}},
        {"generation",
         {{"temperature", c.pipeline.generation.temperature},
          {"top_p", c.pipeline.generation.top_p},
          {"sampling", c.pipeline.generation.sampling},
          {"beams", c.pipeline.generation.beams},
          {"max_length", c.pipeline.generation.max_length}}},
        {"backend", c.backend},
        {"corruption_rate", c.corruption_rate},
        {"fixed_response", c.fixed_response},
        {"endpoint", c.endpoint},
        {"embedding_endpoint", c.embedding_endpoint},
        {"embedding_seed", c.embedding_seed},
        {"retry",
         {{"max_attempts", c.retry.max_attempts},
          {"base_delay_ms", c.retry.base_delay_ms},
          {"backoff_factor", c.retry.backoff_factor}}},
        {"auth_token_env", c.auth_token_env}};
    return j.dump(2);
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const HarnessConfig& config) {
    if (config.embedding_endpoint.empty()) {
        return std::make_unique<MockEmbeddingProvider>(config.embedding_seed);
    }
    return std::make_unique<RemoteEmbeddingProvider>(config.embedding_endpoint, "/v1/embeddings",
                                                     token_from_env(config.auth_token_env),
                                                     config.retry);
}

}  // namespace taxograft
