#pragma once

namespace taxograft {

/// Backoff schedule for remote calls: attempt n sleeps
/// base_delay_ms * backoff_factor^(n-1) before retrying. Connection failures
/// and 5xx responses are retried; 4xx responses fail immediately.
struct RetryPolicy {
    int max_attempts = 3;
    int base_delay_ms = 100;
    double backoff_factor = 2.0;
};

}  // namespace taxograft
