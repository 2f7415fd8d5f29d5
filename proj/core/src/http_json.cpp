#include "http_json.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

#include "taxograft/errors.hpp"

namespace taxograft::detail {

PostResult post_json(const std::string& base_url, const std::string& path,
                     const nlohmann::json& payload, const std::string& auth_token,
                     const RetryPolicy& retry) {
    const std::string body = payload.dump();
    std::string last_failure = "no attempt made";
    int attempts = 0;
    double delay_ms = retry.base_delay_ms;

    while (attempts < std::max(retry.max_attempts, 1)) {
        if (attempts > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(static_cast<long long>(delay_ms)));
            delay_ms *= retry.backoff_factor;
        }
        ++attempts;

        httplib::Client client(base_url);
        client.set_connection_timeout(30, 0);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!auth_token.empty()) {
            headers.emplace("Authorization", "Bearer " + auth_token);
        }
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_failure = "connection to " + base_url + " failed (" +
                           httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status >= 200 && res->status < 300) {
            try {
                return PostResult{nlohmann::json::parse(res->body), attempts};
            } catch (const nlohmann::json::parse_error& e) {
                throw EndpointError("endpoint returned unparsable JSON: " + std::string(e.what()),
                                    res->status);
            }
        }
        if (res->status >= 500) {
            last_failure = "status " + std::to_string(res->status) + " from " + base_url + path;
            continue;
        }
        throw EndpointError("endpoint " + base_url + path + " answered status " +
                                std::to_string(res->status) + ": " + res->body,
                            res->status);
    }
    throw TransportError(last_failure + " after " + std::to_string(attempts) + " attempt(s)",
                         attempts);
}

}  // namespace taxograft::detail
