#pragma once

// Internal helper shared by the remote embedding provider and the remote
// completion backend. Not installed.

#include <string>

#include <json.hpp>

#include "taxograft/net.hpp"

namespace taxograft::detail {

struct PostResult {
    nlohmann::json body;
    int attempts = 1;
};

/// POSTs `payload` as application/json to base_url+path. Retries connection
/// failures and 5xx per the policy; throws EndpointError on 4xx and
/// TransportError once attempts are exhausted.
PostResult post_json(const std::string& base_url, const std::string& path,
                     const nlohmann::json& payload, const std::string& auth_token,
                     const RetryPolicy& retry);

}  // namespace taxograft::detail
