#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "taxograft/net.hpp"

namespace taxograft {

using EmbeddingVector = std::vector<double>;

/// Zero if either vector has zero norm. Throws std::invalid_argument on a
/// dimension mismatch.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dimension() const = 0;
    /// Deterministic per provider+text. Empty text maps to the zero vector.
    virtual EmbeddingVector embed(const std::string& text) = 0;
    virtual std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts);
};

/// Test/offline provider: every distinct token hashes to a seeded unit
/// vector; a text embeds to the mean of its token vectors. Pure function of
/// (seed, token multiset), so repeated calls and shuffled batch orders agree.
class MockEmbeddingProvider final : public EmbeddingProvider {
public:
    explicit MockEmbeddingProvider(std::uint64_t seed = 0, std::size_t dimension = 64);
    std::size_t dimension() const override { return dimension_; }
    EmbeddingVector embed(const std::string& text) override;

private:
    std::uint64_t seed_;
    std::size_t dimension_;
};

/// HTTP embeddings client. Request: POST {"input": [texts...]};
/// response: {"data": [{"embedding": [...]}, ...]} with one vector per text,
/// in order. Retries transport failures and 5xx with exponential backoff;
/// throws TransportError (retries exhausted) or EndpointError (4xx).
class RemoteEmbeddingProvider final : public EmbeddingProvider {
public:
    RemoteEmbeddingProvider(std::string base_url, std::string path = "/v1/embeddings",
                            std::string auth_token = "", RetryPolicy retry = {});
    /// Looked up from the first response; 0 until then.
    std::size_t dimension() const override { return dimension_.load(); }
    EmbeddingVector embed(const std::string& text) override;
    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) override;

private:
    std::string base_url_;
    std::string path_;
    std::string auth_token_;
    RetryPolicy retry_;
    std::atomic<std::size_t> dimension_{0};
};

}  // namespace taxograft
