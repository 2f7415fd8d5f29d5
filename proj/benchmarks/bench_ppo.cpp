#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "taxograft/ppo.hpp"
#include "taxograft/rng.hpp"

namespace {

taxograft::Trajectory random_trajectory(std::size_t T) {
    std::mt19937_64 rng(21);
    taxograft::Trajectory traj;
    for (std::size_t t = 0; t < T; ++t) {
        traj.rewards.push_back(taxograft::uniform_real(rng, -2.0, 7.0));
        traj.log_probs.push_back(taxograft::uniform_real(rng, -3.0, 0.0));
        traj.ref_log_probs.push_back(taxograft::uniform_real(rng, -3.0, 0.0));
    }
    for (std::size_t t = 0; t <= T; ++t) {
        traj.values.push_back(taxograft::uniform_real(rng, -1.0, 1.0));
    }
    return traj;
}

void BM_GaeAdvantage(benchmark::State& state) {
    auto traj = random_trajectory(static_cast<std::size_t>(state.range(0)));
    taxograft::PpoConfig cfg;
    cfg.gamma = 0.99;
    cfg.lam = 0.95;
    for (auto _ : state) {
        benchmark::DoNotOptimize(taxograft::gae_advantage(traj, cfg));
    }
}
BENCHMARK(BM_GaeAdvantage)->Arg(16)->Arg(256);

void BM_BanditUpdate(benchmark::State& state) {
    taxograft::MockEmbeddingProvider provider(0);
    taxograft::HypernymBandit bandit({"soup", "white wine", "mineral", "broth"}, "soup",
                                     provider);
    taxograft::PpoConfig cfg;
    cfg.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(taxograft::train_toy_policy(bandit, cfg, 1));
    }
}
BENCHMARK(BM_BanditUpdate)->Unit(benchmark::kMicrosecond);

}  // namespace
