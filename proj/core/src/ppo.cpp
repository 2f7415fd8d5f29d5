#include "taxograft/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "taxograft/errors.hpp"
#include "taxograft/rewards.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

void Trajectory::validate() const {
    const std::size_t t = rewards.size();
    if (t == 0) throw std::invalid_argument("trajectory must contain at least one step");
    if (log_probs.size() != t || ref_log_probs.size() != t) {
        throw std::invalid_argument("trajectory log-prob lists must match the reward count");
    }
    if (values.size() != t + 1) {
        throw std::invalid_argument("trajectory needs T+1 value estimates (terminal included)");
    }
}

std::vector<double> gae_advantage(const Trajectory& traj, const PpoConfig& cfg) {
    traj.validate();
    const std::size_t t_len = traj.length();
    std::vector<double> advantages(t_len, 0.0);
    double running = 0.0;
    for (std::size_t i = t_len; i-- > 0;) {
        const double delta =
            traj.rewards[i] + cfg.gamma * traj.values[i + 1] - traj.values[i];
        running = delta + cfg.gamma * cfg.lam * running;
        advantages[i] = running;
    }
    return advantages;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) {
        throw std::invalid_argument("KL needs two equal-length distributions");
    }
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) {
            throw std::invalid_argument("distributions must be non-negative");
        }
        sp += p[i];
        sq += q[i];
    }
    constexpr double kSumTol = 1e-6;
    if (std::abs(sp - 1.0) > kSumTol || std::abs(sq - 1.0) > kSumTol) {
        throw std::invalid_argument("distributions must sum to 1");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) {
            throw std::domain_error("KL undefined: q vanishes where p > 0");
        }
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

double ppo_objective(const Trajectory& traj, std::span<const double> advantages,
                     const PpoConfig& cfg, double kl) {
    traj.validate();
    if (advantages.size() != traj.length()) {
        throw std::invalid_argument("advantage list must match the trajectory length");
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < traj.length(); ++t) {
        const double ratio = std::exp(traj.log_probs[t] - traj.ref_log_probs[t]);
        if (!std::isfinite(ratio)) {
            throw std::domain_error("non-finite probability ratio at step " + std::to_string(t));
        }
        sum += ratio * advantages[t];
    }
    return sum / static_cast<double>(traj.length()) - cfg.beta * kl;
}

double nll_objective(double prob_of_truth) {
    if (!(prob_of_truth > 0.0) || prob_of_truth > 1.0) {
        throw std::domain_error("probability must lie in (0, 1]");
    }
    return -std::log(prob_of_truth);
}

ToyPolicy::ToyPolicy(std::size_t states, std::size_t actions, std::size_t feature_dim,
                     std::uint64_t seed)
    : actions_(actions), logits_(states, std::vector<double>(actions, 0.0)) {
    if (states == 0 || actions == 0 || feature_dim == 0) {
        throw std::invalid_argument("policy dimensions must be positive");
    }
    constexpr std::size_t kHidden = 16;
    std::mt19937_64 rng(seed);
    w1_.assign(kHidden, std::vector<double>(feature_dim));
    b1_.assign(kHidden, 0.0);
    w2_.assign(kHidden, 0.0);
    for (auto& row : w1_) {
        for (auto& w : row) w = uniform_real(rng, -0.5, 0.5);
    }
    for (auto& w : b1_) w = uniform_real(rng, -0.5, 0.5);
    for (auto& w : w2_) w = uniform_real(rng, -0.5, 0.5);
    b2_ = uniform_real(rng, -0.5, 0.5);
}

std::vector<double> ToyPolicy::action_probs(std::size_t state) const {
    const auto& z = logits_.at(state);
    const double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> probs(z.size());
    double norm = 0.0;
    for (std::size_t a = 0; a < z.size(); ++a) {
        probs[a] = std::exp(z[a] - zmax);
        norm += probs[a];
    }
    for (auto& p : probs) p /= norm;
    return probs;
}

std::vector<double> ToyPolicy::action_log_probs(std::size_t state) const {
    const auto& z = logits_.at(state);
    const double zmax = *std::max_element(z.begin(), z.end());
    double norm = 0.0;
    for (double zi : z) norm += std::exp(zi - zmax);
    const double log_norm = zmax + std::log(norm);
    std::vector<double> out(z.size());
    for (std::size_t a = 0; a < z.size(); ++a) out[a] = z[a] - log_norm;
    return out;
}

double ToyPolicy::value(std::span<const double> features) const {
    if (features.size() != w1_.front().size()) {
        throw std::invalid_argument("feature dimension mismatch");
    }
    double out = b2_;
    for (std::size_t h = 0; h < w1_.size(); ++h) {
        double z = b1_[h];
        for (std::size_t i = 0; i < features.size(); ++i) z += w1_[h][i] * features[i];
        out += w2_[h] * std::tanh(z);
    }
    return out;
}

double ToyPolicy::update_value(std::span<const double> features, double target, double lr) {
    std::vector<double> pre(w1_.size());
    std::vector<double> act(w1_.size());
    double out = b2_;
    for (std::size_t h = 0; h < w1_.size(); ++h) {
        double z = b1_[h];
        for (std::size_t i = 0; i < features.size(); ++i) z += w1_[h][i] * features[i];
        pre[h] = z;
        act[h] = std::tanh(z);
        out += w2_[h] * act[h];
    }
    const double err = out - target;
    for (std::size_t h = 0; h < w1_.size(); ++h) {
        const double dh = err * w2_[h] * (1.0 - act[h] * act[h]);
        w2_[h] -= lr * err * act[h];
        b1_[h] -= lr * dh;
        for (std::size_t i = 0; i < features.size(); ++i) {
            w1_[h][i] -= lr * dh * features[i];
        }
    }
    b2_ -= lr * err;
    return err;
}

bool ToyPolicy::finite() const {
    auto ok = [](double x) { return std::isfinite(x); };
    for (const auto& row : logits_) {
        if (!std::all_of(row.begin(), row.end(), ok)) return false;
    }
    for (const auto& row : w1_) {
        if (!std::all_of(row.begin(), row.end(), ok)) return false;
    }
    return std::all_of(b1_.begin(), b1_.end(), ok) &&
           std::all_of(w2_.begin(), w2_.end(), ok) && ok(b2_);
}

HypernymBandit::HypernymBandit(std::vector<std::string> candidates, std::string truth,
                               EmbeddingProvider& provider)
    : candidates_(std::move(candidates)) {
    if (candidates_.empty()) throw std::invalid_argument("bandit needs at least one candidate");
    const std::string truth_norm = normalize_surface(truth);
    truth_action_ = candidates_.size();
    rewards_.reserve(candidates_.size());
    for (std::size_t a = 0; a < candidates_.size(); ++a) {
        rewards_.push_back(total_reward(provider, candidates_[a], truth_norm).total);
        if (normalize_surface(candidates_[a]) == truth_norm) truth_action_ = a;
    }
}

StepOutcome HypernymBandit::step(std::size_t state, std::size_t action) {
    if (state != 0) throw std::invalid_argument("bandit has a single state");
    if (action >= candidates_.size()) throw std::out_of_range("action out of range");
    return StepOutcome{rewards_[action], 0, true};
}

namespace {

std::size_t sample_action(const std::vector<double>& probs, std::mt19937_64& rng) {
    const double u = uniform_unit(rng);
    double cdf = 0.0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
        cdf += probs[a];
        if (u < cdf) return a;
    }
    return probs.size() - 1;
}

double mean_state_kl(const ToyPolicy& policy, const ToyPolicy& reference) {
    double total = 0.0;
    for (std::size_t s = 0; s < policy.state_count(); ++s) {
        total += kl_divergence(policy.action_probs(s), reference.action_probs(s));
    }
    return total / static_cast<double>(policy.state_count());
}

/// Exact expected episode reward when every initial action terminates,
/// otherwise a seeded Monte Carlo estimate.
double expected_reward(ToyEnv& env, const ToyPolicy& policy, std::uint64_t seed) {
    const std::size_t s0 = env.initial_state();
    const auto probs = policy.action_probs(s0);
    bool single_step = true;
    double exact = 0.0;
    for (std::size_t a = 0; a < env.action_count(); ++a) {
        StepOutcome o = env.step(s0, a);
        if (!o.done) {
            single_step = false;
            break;
        }
        exact += probs[a] * o.reward;
    }
    if (single_step) return exact;

    std::mt19937_64 rng(seed);
    constexpr std::size_t kEpisodes = 1024;
    constexpr std::size_t kMaxLen = 64;
    double total = 0.0;
    for (std::size_t e = 0; e < kEpisodes; ++e) {
        std::size_t state = env.initial_state();
        for (std::size_t t = 0; t < kMaxLen; ++t) {
            StepOutcome o = env.step(state, sample_action(policy.action_probs(state), rng));
            total += o.reward;
            if (o.done) break;
            state = o.next_state;
        }
    }
    return total / static_cast<double>(kEpisodes);
}

}  // namespace

TrainingReport train_toy_policy(ToyEnv& env, const PpoConfig& cfg, std::size_t steps) {
    if (cfg.batch_size == 0) throw std::invalid_argument("batch_size must be positive");
    constexpr std::size_t kMaxEpisodeLen = 64;

    ToyPolicy policy(env.state_count(), env.action_count(), env.feature_dim(), cfg.seed);
    const ToyPolicy reference = policy;
    std::mt19937_64 rng(hash_combine(cfg.seed, 0x9e3779b9ULL));

    TrainingReport report{.updates = {},
                          .initial_expected_reward = 0.0,
                          .final_expected_reward = 0.0,
                          .final_kl = 0.0,
                          .policy = policy};
    report.initial_expected_reward = expected_reward(env, policy, hash_combine(cfg.seed, 1));

    struct Rollout {
        Trajectory traj;
        std::vector<std::size_t> states;
        std::vector<std::size_t> actions;
    };

    for (std::size_t step = 1; step <= steps; ++step) {
        std::vector<Rollout> batch;
        batch.reserve(cfg.batch_size);
        double reward_sum = 0.0;
        for (std::size_t e = 0; e < cfg.batch_size; ++e) {
            Rollout ro;
            std::size_t state = env.initial_state();
            for (std::size_t t = 0; t < kMaxEpisodeLen; ++t) {
                const auto probs = policy.action_probs(state);
                const auto log_probs = policy.action_log_probs(state);
                const auto ref_log_probs = reference.action_log_probs(state);
                const std::size_t action = sample_action(probs, rng);
                const auto feats = env.features(state);
                StepOutcome o = env.step(state, action);

                ro.states.push_back(state);
                ro.actions.push_back(action);
                ro.traj.values.push_back(policy.value(feats));
                ro.traj.rewards.push_back(o.reward);
                ro.traj.log_probs.push_back(log_probs[action]);
                ro.traj.ref_log_probs.push_back(ref_log_probs[action]);
                reward_sum += o.reward;
                if (o.done) break;
                state = o.next_state;
            }
            ro.traj.values.push_back(0.0);  // terminal
            batch.push_back(std::move(ro));
        }

        // Surrogate gradient and objective over the batch.
        std::vector<std::vector<double>> grad(env.state_count(),
                                              std::vector<double>(env.action_count(), 0.0));
        std::size_t total_steps = 0;
        for (const auto& ro : batch) total_steps += ro.traj.length();
        const double inv_steps = 1.0 / static_cast<double>(total_steps);

        double objective_sum = 0.0;
        std::vector<std::pair<std::size_t, double>> value_targets;  // (state, target)
        value_targets.reserve(total_steps);
        for (const auto& ro : batch) {
            const auto advantages = gae_advantage(ro.traj, cfg);
            double episode_kl = 0.0;
            for (std::size_t t = 0; t < ro.traj.length(); ++t) {
                const std::size_t s = ro.states[t];
                const std::size_t a = ro.actions[t];
                const auto probs = policy.action_probs(s);
                const auto log_probs = policy.action_log_probs(s);
                const auto ref_log_probs = reference.action_log_probs(s);
                const double kl_s = kl_divergence(probs, reference.action_probs(s));
                episode_kl += kl_s;

                const double ratio = std::exp(ro.traj.log_probs[t] - ro.traj.ref_log_probs[t]);
                for (std::size_t j = 0; j < probs.size(); ++j) {
                    const double indicator = j == a ? 1.0 : 0.0;
                    double g = ratio * advantages[t] * (indicator - probs[j]);
                    g -= cfg.beta * probs[j] * ((log_probs[j] - ref_log_probs[j]) - kl_s);
                    grad[s][j] += g * inv_steps;
                }
                value_targets.emplace_back(s, advantages[t] + ro.traj.values[t]);
            }
            objective_sum +=
                ppo_objective(ro.traj, advantages, cfg,
                              episode_kl / static_cast<double>(ro.traj.length()));
        }

        double norm_sq = 0.0;
        for (const auto& row : grad) {
            for (double g : row) norm_sq += g * g;
        }
        const double norm = std::sqrt(norm_sq);
        const double scale =
            (cfg.max_grad_norm > 0.0 && norm > cfg.max_grad_norm) ? cfg.max_grad_norm / norm : 1.0;
        for (std::size_t s = 0; s < grad.size(); ++s) {
            for (std::size_t a = 0; a < grad[s].size(); ++a) {
                policy.logits(s)[a] += cfg.learning_rate * scale * grad[s][a];
            }
        }
        const double value_lr = 0.5 * cfg.learning_rate;
        for (const auto& [s, target] : value_targets) {
            policy.update_value(env.features(s), target, value_lr);
        }
        if (!policy.finite()) {
            throw TrainingError("policy parameters diverged", step);
        }

        report.updates.push_back(UpdateLog{
            step, reward_sum / static_cast<double>(cfg.batch_size),
            mean_state_kl(policy, reference),
            objective_sum / static_cast<double>(batch.size())});
    }

    report.final_expected_reward = expected_reward(env, policy, hash_combine(cfg.seed, 2));
    report.final_kl = mean_state_kl(policy, reference);
    report.policy = policy;
    return report;
}

}  // namespace taxograft
