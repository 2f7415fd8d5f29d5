#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "taxograft/embedding.hpp"

namespace taxograft {

/// One rollout: T rewards/log-probs and T+1 value estimates (the last entry
/// is the terminal state's value, zero for finished episodes).
struct Trajectory {
    std::vector<double> rewards;
    std::vector<double> values;
    std::vector<double> log_probs;
    std::vector<double> ref_log_probs;

    std::size_t length() const { return rewards.size(); }
    void validate() const;  // throws std::invalid_argument on length mismatch
};

struct PpoConfig {
    double gamma = 1.0;
    double lam = 1.0;
    double beta = 0.1;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
    // Rollout and stability knobs for the toy trainer.
    std::size_t batch_size = 32;
    double max_grad_norm = 5.0;
};

/// Generalized advantage estimates: A_t = sum_i (gamma*lam)^i * delta_{t+i}
/// with delta_t = r_t + gamma*V(s_{t+1}) - V(s_t).
std::vector<double> gae_advantage(const Trajectory& traj, const PpoConfig& cfg);

/// sum_x p(x) * ln(p(x)/q(x)), with 0*ln(0/q) = 0. Throws
/// std::invalid_argument on malformed distributions and std::domain_error
/// when q(x) = 0 under p(x) > 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// Penalized surrogate: mean_t[exp(logp_t - ref_logp_t) * A_t] - beta * kl.
/// No ratio clipping. Throws std::domain_error on a non-finite ratio.
double ppo_objective(const Trajectory& traj, std::span<const double> advantages,
                     const PpoConfig& cfg, double kl);

/// -ln(prob). Throws std::domain_error unless prob lies in (0, 1].
double nll_objective(double prob_of_truth);

/// Tabular softmax policy over a small discrete action vocabulary, paired
/// with a one-hidden-layer value head on state features.
class ToyPolicy {
public:
    ToyPolicy(std::size_t states, std::size_t actions, std::size_t feature_dim,
              std::uint64_t seed);

    std::size_t state_count() const { return logits_.size(); }
    std::size_t action_count() const { return actions_; }

    const std::vector<double>& logits(std::size_t state) const { return logits_.at(state); }
    std::vector<double>& logits(std::size_t state) { return logits_.at(state); }
    std::vector<double> action_probs(std::size_t state) const;
    std::vector<double> action_log_probs(std::size_t state) const;

    double value(std::span<const double> features) const;
    /// One MSE gradient-descent step toward `target`; returns the error.
    double update_value(std::span<const double> features, double target, double lr);

    bool finite() const;

private:
    std::size_t actions_;
    std::vector<std::vector<double>> logits_;  // zero-initialized: uniform policy
    // value head: feature_dim -> 16 (tanh) -> 1, uniform(-0.5, 0.5) init
    std::vector<std::vector<double>> w1_;
    std::vector<double> b1_;
    std::vector<double> w2_;
    double b2_ = 0.0;
};

struct StepOutcome {
    double reward = 0.0;
    std::size_t next_state = 0;
    bool done = true;
};

/// Tiny deterministic environment: states are prompt contexts, actions are
/// candidate terms.
class ToyEnv {
public:
    virtual ~ToyEnv() = default;
    virtual std::size_t state_count() const = 0;
    virtual std::size_t action_count() const = 0;
    virtual std::size_t feature_dim() const = 0;
    virtual std::vector<double> features(std::size_t state) const = 0;
    virtual std::size_t initial_state() const = 0;
    virtual StepOutcome step(std::size_t state, std::size_t action) = 0;
};

/// Single-state bandit whose actions emit candidate hypernyms; the episode
/// reward is the full five-component reward of the emitted term against the
/// fixed truth.
class HypernymBandit final : public ToyEnv {
public:
    HypernymBandit(std::vector<std::string> candidates, std::string truth,
                   EmbeddingProvider& provider);

    std::size_t state_count() const override { return 1; }
    std::size_t action_count() const override { return candidates_.size(); }
    std::size_t feature_dim() const override { return 1; }
    std::vector<double> features(std::size_t) const override { return {1.0}; }
    std::size_t initial_state() const override { return 0; }
    StepOutcome step(std::size_t state, std::size_t action) override;

    const std::vector<double>& reward_table() const { return rewards_; }
    std::size_t truth_action() const { return truth_action_; }

private:
    std::vector<std::string> candidates_;
    std::vector<double> rewards_;
    std::size_t truth_action_ = 0;
};

struct UpdateLog {
    std::size_t step = 0;
    double mean_reward = 0.0;
    double kl = 0.0;        // vs the frozen reference, after the update
    double objective = 0.0; // penalized surrogate for the batch
};

struct TrainingReport {
    std::vector<UpdateLog> updates;
    double initial_expected_reward = 0.0;  // under the untrained policy
    double final_expected_reward = 0.0;    // exact for single-state envs
    double final_kl = 0.0;
    ToyPolicy policy;
};

/// Policy-gradient ascent on the KL-penalized surrogate with GAE advantages,
/// one update per batch of rollouts. The reference policy is the frozen
/// initial one. Deterministic given cfg.seed. Throws TrainingError with the
/// step index when parameters stop being finite.
TrainingReport train_toy_policy(ToyEnv& env, const PpoConfig& cfg, std::size_t steps);

}  // namespace taxograft
