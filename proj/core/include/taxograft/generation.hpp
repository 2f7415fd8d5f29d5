#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxograft/net.hpp"

namespace taxograft {

struct GenerationConfig {
    double temperature = 0.95;
    double top_p = 1.0;
    bool sampling = true;
    int beams = 1;
    int max_length = 1024;
};

struct BackendResponse {
    std::string text;  // raw continuation after the trailing `HYPERNYM:`
    int attempts = 1;
};

class InferenceBackend {
public:
    virtual ~InferenceBackend() = default;
    virtual BackendResponse generate(const std::string& prompt, const GenerationConfig& cfg) = 0;
};

/// The query term of a rendered prompt: the value of its last TERM: line.
std::optional<std::string> extract_query_term(std::string_view prompt);

/// Answers every prompt with the true parent of its query term, looked up in
/// a fixed answer table. Throws std::invalid_argument when the prompt has no
/// TERM line or the table has no entry for it.
class OracleBackend final : public InferenceBackend {
public:
    explicit OracleBackend(std::unordered_map<std::string, std::string> answers);
    BackendResponse generate(const std::string& prompt, const GenerationConfig& cfg) override;

    const std::unordered_map<std::string, std::string>& answers() const { return answers_; }

private:
    std::unordered_map<std::string, std::string> answers_;
};

/// Oracle that, per query and with seeded probability `corruption_rate`,
/// swaps the answer for a different one from the table. Deterministic per
/// (seed, query term) regardless of call order.
class NoisyOracleBackend final : public InferenceBackend {
public:
    NoisyOracleBackend(std::unordered_map<std::string, std::string> answers,
                       double corruption_rate, std::uint64_t seed);
    BackendResponse generate(const std::string& prompt, const GenerationConfig& cfg) override;

private:
    OracleBackend oracle_;
    std::vector<std::string> distinct_answers_;
    double corruption_rate_;
    std::uint64_t seed_;
};

/// Returns the same canned text for every prompt.
class FixedBackend final : public InferenceBackend {
public:
    explicit FixedBackend(std::string canned) : canned_(std::move(canned)) {}
    BackendResponse generate(const std::string&, const GenerationConfig&) override {
        return BackendResponse{canned_, 1};
    }

private:
    std::string canned_;
};

/// HTTP completions client. Request:
///   POST {"prompt", "temperature", "top_p", "max_tokens"}
/// Response: {"text": ...} (or an OpenAI-style {"choices": [{"text": ...}]}).
/// Retries transport failures and 5xx with exponential backoff; throws
/// TransportError once attempts are exhausted and EndpointError on 4xx.
class HttpCompletionBackend final : public InferenceBackend {
public:
    HttpCompletionBackend(std::string base_url, std::string path = "/v1/completions",
                          std::string auth_token = "", RetryPolicy retry = {});
    BackendResponse generate(const std::string& prompt, const GenerationConfig& cfg) override;

private:
    std::string base_url_;
    std::string path_;
    std::string auth_token_;
    RetryPolicy retry_;
};

}  // namespace taxograft
