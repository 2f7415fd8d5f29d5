#include "taxograft/embedding.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "http_json.hpp"
#include "taxograft/errors.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine over vectors of dimension " +
                                    std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<EmbeddingVector> EmbeddingProvider::embed_batch(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) out.push_back(embed(text));
    return out;
}

MockEmbeddingProvider::MockEmbeddingProvider(std::uint64_t seed, std::size_t dimension)
    : seed_(seed), dimension_(dimension) {
    if (dimension_ == 0) throw std::invalid_argument("mock embedding dimension must be positive");
}

EmbeddingVector MockEmbeddingProvider::embed(const std::string& text) {
    EmbeddingVector out(dimension_, 0.0);
    auto tokens = tokenize(text);
    if (tokens.empty()) return out;
    for (const auto& token : tokens) {
        std::mt19937_64 rng(hash_combine(seed_, fnv1a64(token)));
        EmbeddingVector v(dimension_);
        double norm = 0.0;
        for (auto& x : v) {
            x = uniform_real(rng, -1.0, 1.0);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dimension_; ++i) out[i] += v[i] / norm;
    }
    for (auto& x : out) x /= static_cast<double>(tokens.size());
    return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string base_url, std::string path,
                                                 std::string auth_token, RetryPolicy retry)
    : base_url_(std::move(base_url)),
      path_(std::move(path)),
      auth_token_(std::move(auth_token)),
      retry_(retry) {}

EmbeddingVector RemoteEmbeddingProvider::embed(const std::string& text) {
    return embed_batch({text}).front();
}

std::vector<EmbeddingVector> RemoteEmbeddingProvider::embed_batch(
    const std::vector<std::string>& texts) {
    if (texts.empty()) return {};
    nlohmann::json payload{{"input", texts}};
    auto result = detail::post_json(base_url_, path_, payload, auth_token_, retry_);

    const auto& body = result.body;
    if (!body.contains("data") || !body["data"].is_array() || body["data"].size() != texts.size()) {
        throw EndpointError("embedding response missing a data entry per input", 200);
    }
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& item : body["data"]) {
        out.push_back(item.at("embedding").get<EmbeddingVector>());
        std::size_t expected = 0;
        dimension_.compare_exchange_strong(expected, out.back().size());
        if (out.back().size() != dimension_.load()) {
            throw EndpointError("embedding response mixes vector dimensions", 200);
        }
    }
    return out;
}

}  // namespace taxograft
