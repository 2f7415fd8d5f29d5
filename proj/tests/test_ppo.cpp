#include <cmath>
#include <random>

#include <doctest.h>

#include "taxograft/errors.hpp"
#include "taxograft/ppo.hpp"
#include "taxograft/rng.hpp"

using namespace taxograft;

namespace {

/// Brute-force double sum A_t = sum_i (gamma*lam)^i delta_{t+i}, evaluated
/// term by term with explicit powers.
std::vector<double> oracle_gae(const Trajectory& traj, double gamma, double lam) {
    const std::size_t T = traj.rewards.size();
    std::vector<double> out(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; t + i < T; ++i) {
            const std::size_t s = t + i;
            const double delta =
                traj.rewards[s] + gamma * traj.values[s + 1] - traj.values[s];
            out[t] += std::pow(gamma * lam, static_cast<double>(i)) * delta;
        }
    }
    return out;
}

Trajectory random_trajectory(std::mt19937_64& rng, std::size_t T) {
    Trajectory traj;
    for (std::size_t t = 0; t < T; ++t) {
        traj.rewards.push_back(uniform_real(rng, -2.0, 7.0));
        traj.log_probs.push_back(uniform_real(rng, -3.0, 0.0));
        traj.ref_log_probs.push_back(uniform_real(rng, -3.0, 0.0));
    }
    for (std::size_t t = 0; t <= T; ++t) traj.values.push_back(uniform_real(rng, -1.0, 1.0));
    return traj;
}

}  // namespace

TEST_CASE("single-step advantage is the lone delta") {
    Trajectory traj{{1.0}, {0.0, 0.0}, {0.0}, {0.0}};
    PpoConfig cfg;  // gamma = lam = 1
    auto a = gae_advantage(traj, cfg);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == 1.0);
}

TEST_CASE("worked advantage example") {
    Trajectory traj{{0.0, 1.0}, {0.5, 0.2, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    PpoConfig cfg;
    cfg.gamma = 0.9;
    cfg.lam = 0.95;
    auto a = gae_advantage(traj, cfg);
    REQUIRE(a.size() == 2);
    CHECK(std::abs(a[0] - 0.364) < 1e-12);
    CHECK(std::abs(a[1] - 0.8) < 1e-12);
}

TEST_CASE("zero rewards and values give zero advantages") {
    Trajectory traj{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0, 0, 0}, {0, 0, 0}};
    for (double a : gae_advantage(traj, PpoConfig{})) CHECK(a == 0.0);
}

TEST_CASE("matches the brute-force double-sum oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t T = 1 + uniform_index(rng, 10);
        Trajectory traj = random_trajectory(rng, T);
        PpoConfig cfg;
        cfg.gamma = uniform_unit(rng);
        cfg.lam = uniform_unit(rng);
        auto fast = gae_advantage(traj, cfg);
        auto slow = oracle_gae(traj, cfg.gamma, cfg.lam);
        for (std::size_t t = 0; t < T; ++t) CHECK(std::abs(fast[t] - slow[t]) <= 1e-9);
    }
}

TEST_CASE("gamma = lam = 1 with zero values reduces to reward-to-go") {
    std::mt19937_64 rng(37);
    Trajectory traj = random_trajectory(rng, 6);
    traj.values.assign(7, 0.0);
    auto a = gae_advantage(traj, PpoConfig{});
    double to_go = 0.0;
    for (std::size_t t = 6; t-- > 0;) {
        to_go += traj.rewards[t];
        CHECK(a[t] == doctest::Approx(to_go).epsilon(1e-12));
    }
}

TEST_CASE("trajectory shape validation") {
    Trajectory bad{{1.0}, {0.0}, {0.0}, {0.0}};  // values must be T+1
    CHECK_THROWS_AS(gae_advantage(bad, PpoConfig{}), std::invalid_argument);
    Trajectory empty;
    CHECK_THROWS_AS(gae_advantage(empty, PpoConfig{}), std::invalid_argument);
}

TEST_CASE("KL of a distribution with itself is zero") {
    std::vector<double> p{0.2, 0.3, 0.5};
    CHECK(kl_divergence(p, p) == 0.0);
}

TEST_CASE("worked KL example") {
    CHECK(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 0.75}) ==
          doctest::Approx(0.1438).epsilon(1e-3));
}

TEST_CASE("KL is non-negative on random pairs") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 6);
        std::vector<double> p(n), q(n);
        double sp = 0, sq = 0;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = uniform_unit(rng) + 1e-9;
            q[i] = uniform_unit(rng) + 1e-9;
            sp += p[i];
            sq += q[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            p[i] /= sp;
            q[i] /= sq;
        }
        CHECK(kl_divergence(p, q) >= -1e-15);
    }
}

TEST_CASE("KL input validation") {
    std::vector<double> p{0.5, 0.5};
    CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{0.7, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{1.0, 0.0}), std::domain_error);
    CHECK(kl_divergence(std::vector<double>{0.0, 1.0}, std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(std::log(2.0)));  // 0*ln(0/q) term drops
}

TEST_CASE("worked penalized objective example") {
    Trajectory traj{{0.0}, {0.0, 0.0}, {std::log(1.2)}, {0.0}};
    PpoConfig cfg;
    cfg.beta = 0.1;
    const std::vector<double> advantages{0.5};
    CHECK(std::abs(ppo_objective(traj, advantages, cfg, 0.2) - 0.58) < 1e-12);
}

TEST_CASE("objective with policy equal to reference is the mean advantage") {
    std::mt19937_64 rng(43);
    Trajectory traj = random_trajectory(rng, 5);
    traj.ref_log_probs = traj.log_probs;
    auto advantages = gae_advantage(traj, PpoConfig{});
    double mean = 0.0;
    for (double a : advantages) mean += a;
    mean /= 5.0;
    PpoConfig cfg;
    cfg.beta = 123.0;
    CHECK(ppo_objective(traj, advantages, cfg, 0.0) == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("zero advantages and zero KL give a zero objective") {
    Trajectory traj{{1.0, 1.0}, {0, 0, 0}, {-0.5, -0.5}, {-0.7, -0.7}};
    CHECK(ppo_objective(traj, std::vector<double>{0.0, 0.0}, PpoConfig{}, 0.0) == 0.0);
}

TEST_CASE("non-finite ratio is a numeric error") {
    Trajectory traj{{1.0}, {0, 0}, {1e9}, {0.0}};
    CHECK_THROWS_AS(ppo_objective(traj, std::vector<double>{1.0}, PpoConfig{}, 0.0),
                    std::domain_error);
}

TEST_CASE("negative log likelihood objective") {
    CHECK(nll_objective(1.0) == 0.0);
    CHECK(nll_objective(0.5) == doctest::Approx(0.6931).epsilon(1e-4));
    CHECK(nll_objective(0.1) == doctest::Approx(2.3026).epsilon(1e-4));
    CHECK_THROWS_AS(nll_objective(0.0), std::domain_error);
    CHECK_THROWS_AS(nll_objective(-0.5), std::domain_error);
    CHECK_THROWS_AS(nll_objective(1.5), std::domain_error);
}

TEST_CASE("fresh policies are uniform and their probabilities sum to 1") {
    ToyPolicy policy(2, 4, 1, 7);
    for (std::size_t s = 0; s < 2; ++s) {
        auto probs = policy.action_probs(s);
        double sum = 0.0;
        for (double p : probs) {
            CHECK(p == doctest::Approx(0.25));
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0));
    }
    CHECK(policy.finite());
}

TEST_CASE("value head learns a constant target") {
    ToyPolicy policy(1, 2, 1, 3);
    const std::vector<double> feats{1.0};
    for (int i = 0; i < 500; ++i) policy.update_value(feats, 4.0, 0.02);
    CHECK(policy.value(feats) == doctest::Approx(4.0).epsilon(0.05));
}

namespace {

class BanditFixture {
public:
    BanditFixture() : provider_(0), bandit_({"soup", "white wine", "mineral", "broth"}, "soup",
                                            provider_) {}
    HypernymBandit& bandit() { return bandit_; }

private:
    MockEmbeddingProvider provider_;
    HypernymBandit bandit_;
};

}  // namespace

TEST_CASE("bandit rewards: 7 for the truth, under 3.2 for the rest") {
    BanditFixture fx;
    const auto& rewards = fx.bandit().reward_table();
    REQUIRE(rewards.size() == 4);
    CHECK(rewards[fx.bandit().truth_action()] == doctest::Approx(7.0));
    for (std::size_t a = 0; a < rewards.size(); ++a) {
        if (a != fx.bandit().truth_action()) CHECK(rewards[a] <= 3.2);
    }
}

TEST_CASE("training raises the expected bandit reward") {
    BanditFixture fx;
    PpoConfig cfg;
    cfg.seed = 7;
    auto report = train_toy_policy(fx.bandit(), cfg, 60);
    CHECK(report.updates.size() == 60);
    CHECK(report.final_expected_reward > report.initial_expected_reward + 1.0);
}

TEST_CASE("a huge KL penalty pins the policy to the reference") {
    BanditFixture fx;
    PpoConfig cfg;
    cfg.seed = 7;
    cfg.beta = 1000.0;
    cfg.learning_rate = 0.001;
    auto report = train_toy_policy(fx.bandit(), cfg, 100);
    CHECK(report.final_kl <= 0.01);
}

TEST_CASE("zero learning rate leaves the policy untouched") {
    BanditFixture fx;
    PpoConfig cfg;
    cfg.seed = 3;
    cfg.learning_rate = 0.0;
    auto report = train_toy_policy(fx.bandit(), cfg, 10);
    for (double z : report.policy.logits(0)) CHECK(z == 0.0);
    CHECK(report.final_kl == doctest::Approx(0.0));
    CHECK(report.final_expected_reward == doctest::Approx(report.initial_expected_reward));
}

TEST_CASE("training is deterministic under a fixed seed") {
    BanditFixture fx1, fx2;
    PpoConfig cfg;
    cfg.seed = 11;
    auto r1 = train_toy_policy(fx1.bandit(), cfg, 20);
    auto r2 = train_toy_policy(fx2.bandit(), cfg, 20);
    REQUIRE(r1.updates.size() == r2.updates.size());
    for (std::size_t i = 0; i < r1.updates.size(); ++i) {
        CHECK(r1.updates[i].mean_reward == r2.updates[i].mean_reward);
        CHECK(r1.updates[i].kl == r2.updates[i].kl);
        CHECK(r1.updates[i].objective == r2.updates[i].objective);
    }
}

TEST_CASE("diverging parameters raise a training error with the step index") {
    BanditFixture fx;
    PpoConfig cfg;
    cfg.seed = 1;
    cfg.learning_rate = 1e305;
    cfg.max_grad_norm = 0.0;  // disable clipping
    try {
        train_toy_policy(fx.bandit(), cfg, 5);
        FAIL("expected TrainingError");
    } catch (const TrainingError& e) {
        CHECK(e.step() >= 1);
    }
}

TEST_CASE("rollouts also work on a two-step chain environment") {
    // state 0 --any action--> state 1 --action--> done, rewards 1 then 2
    class Chain final : public ToyEnv {
    public:
        std::size_t state_count() const override { return 2; }
        std::size_t action_count() const override { return 2; }
        std::size_t feature_dim() const override { return 2; }
        std::vector<double> features(std::size_t s) const override {
            return {s == 0 ? 1.0 : 0.0, s == 1 ? 1.0 : 0.0};
        }
        std::size_t initial_state() const override { return 0; }
        StepOutcome step(std::size_t state, std::size_t) override {
            return state == 0 ? StepOutcome{1.0, 1, false} : StepOutcome{2.0, 0, true};
        }
    } chain;

    PpoConfig cfg;
    cfg.seed = 5;
    cfg.learning_rate = 0.01;
    auto report = train_toy_policy(chain, cfg, 5);
    CHECK(report.updates.size() == 5);
    // every episode collects both rewards
    for (const auto& u : report.updates) CHECK(u.mean_reward == doctest::Approx(3.0));
}
