#include "taxograft/generation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "http_json.hpp"
#include "taxograft/errors.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

std::optional<std::string> extract_query_term(std::string_view prompt) {
    std::optional<std::string> term;
    std::size_t pos = 0;
    while (pos <= prompt.size()) {
        std::size_t eol = prompt.find('\n', pos);
        if (eol == std::string_view::npos) eol = prompt.size();
        std::string line = trim(prompt.substr(pos, eol - pos));
        if (line.starts_with("TERM:")) {
            term = normalize_surface(line.substr(5));
        }
        pos = eol + 1;
    }
    return term;
}

OracleBackend::OracleBackend(std::unordered_map<std::string, std::string> answers) {
    for (auto& [term, parent] : answers) {
        answers_.emplace(normalize_surface(term), normalize_surface(parent));
    }
}

BackendResponse OracleBackend::generate(const std::string& prompt, const GenerationConfig&) {
    auto term = extract_query_term(prompt);
    if (!term) throw std::invalid_argument("prompt has no TERM line to answer");
    auto it = answers_.find(*term);
    if (it == answers_.end()) {
        throw std::invalid_argument("oracle has no answer for term '" + *term + "'");
    }
    return BackendResponse{" " + it->second, 1};
}

NoisyOracleBackend::NoisyOracleBackend(std::unordered_map<std::string, std::string> answers,
                                       double corruption_rate, std::uint64_t seed)
    : oracle_(std::move(answers)), corruption_rate_(corruption_rate), seed_(seed) {
    if (corruption_rate_ < 0.0 || corruption_rate_ > 1.0) {
        throw std::invalid_argument("corruption rate must lie in [0, 1]");
    }
    for (const auto& [term, parent] : oracle_.answers()) distinct_answers_.push_back(parent);
    std::sort(distinct_answers_.begin(), distinct_answers_.end());
    distinct_answers_.erase(std::unique(distinct_answers_.begin(), distinct_answers_.end()),
                            distinct_answers_.end());
}

BackendResponse NoisyOracleBackend::generate(const std::string& prompt,
                                             const GenerationConfig& cfg) {
    BackendResponse truth = oracle_.generate(prompt, cfg);
    const std::string term = *extract_query_term(prompt);
    std::mt19937_64 rng(hash_combine(seed_, fnv1a64(term)));
    if (uniform_unit(rng) >= corruption_rate_) return truth;

    const std::string answer = trim(truth.text);
    std::vector<std::string> others;
    for (const auto& candidate : distinct_answers_) {
        if (candidate != answer) others.push_back(candidate);
    }
    if (others.empty()) {
        return BackendResponse{" " + std::string(answer.rbegin(), answer.rend()), 1};
    }
    return BackendResponse{" " + others[uniform_index(rng, others.size())], 1};
}

HttpCompletionBackend::HttpCompletionBackend(std::string base_url, std::string path,
                                             std::string auth_token, RetryPolicy retry)
    : base_url_(std::move(base_url)),
      path_(std::move(path)),
      auth_token_(std::move(auth_token)),
      retry_(retry) {}

BackendResponse HttpCompletionBackend::generate(const std::string& prompt,
                                                const GenerationConfig& cfg) {
    nlohmann::json payload{{"prompt", prompt},
                           {"temperature", cfg.temperature},
                           {"top_p", cfg.top_p},
                           {"max_tokens", cfg.max_length}};
    auto result = detail::post_json(base_url_, path_, payload, auth_token_, retry_);

    const auto& body = result.body;
    if (body.contains("text") && body["text"].is_string()) {
        return BackendResponse{body["text"].get<std::string>(), result.attempts};
    }
    if (body.contains("choices") && body["choices"].is_array() && !body["choices"].empty()) {
        const auto& first = body["choices"].front();
        if (first.contains("text") && first["text"].is_string()) {
            return BackendResponse{first["text"].get<std::string>(), result.attempts};
        }
    }
    throw EndpointError("completion response carries no text field", 200);
}

}  // namespace taxograft
