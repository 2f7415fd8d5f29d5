// Acceptance suite: every release criterion, one pass/fail line each, with
// the tolerances and runtime budgets pinned in code. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "taxograft/bm25.hpp"
#include "taxograft/fuzzy.hpp"
#include "taxograft/metrics.hpp"
#include "taxograft/pipeline.hpp"
#include "taxograft/ppo.hpp"
#include "taxograft/prompt.hpp"
#include "taxograft/rewards.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/sampler.hpp"
#include "taxograft/taxonomy.hpp"

namespace {

using namespace taxograft;
namespace fs = std::filesystem;

const fs::path kDataDir{TAXOGRAFT_TEST_DATA_DIR};

struct Criterion {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double seconds = 0.0;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void expect_near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream msg;
            msg << what << ": got " << got << ", want " << want << " +/- " << tol;
            failures.push_back(msg.str());
        }
    }
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, double budget_s,
                   const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > budget_s) {
        std::ostringstream msg;
        msg << "runtime " << c.seconds << " s exceeds the " << budget_s << " s budget";
        c.failures.push_back(msg.str());
    }

    std::ostringstream line;
    line << "criterion " << number << " [" << title << "]: ";
    if (c.failures.empty()) {
        line << "PASS";
    } else {
        ++g_failures;
        line << "FAIL";
    }
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << c.seconds << " s)";
    std::cout << line.str() << '\n';
    for (const auto& n : c.notes) std::cout << "    - " << n << '\n';
    for (const auto& f : c.failures) std::cout << "    - " << f << '\n';
}

// --- criterion bodies -------------------------------------------------------

void reward_golden_values(Criterion& c) {
    c.expect(levenshtein_distance("b complex vitamin", "vitamin b") == 12,
             "Levenshtein oracle must confirm distance 12");
    c.expect_near(edit_distance_ratio("b complex vitamin", "vitamin b"), 0.5385, 0.001,
                  "edit_distance_ratio");
    c.expect(partial_edit_distance_ratio("b complex vitamin", "vitamin b") == 0.875,
             "partial_edit_distance_ratio must be exactly 0.875");
    c.expect_near(token_sort_ratio("b complex vitamin", "vitamin b"), 0.6923, 0.001,
                  "token_sort_ratio");
    c.expect(token_set_ratio("b complex vitamin", "vitamin b") == 1.0,
             "token_set_ratio must be exactly 1.0");
    c.expect(token_count_consistency("over-exploitation of resources",
                                     "exploitation of resources") == 0.75,
             "token_count_consistency must be exactly 0.75");
    c.expect_near(length_conformity("vitamin", "b complex vitamin"), -0.4167, 0.005,
                  "length_conformity");
    c.expect(label_reliability("mineral", "mineral resources") == 0,
             "label_reliability(mineral, mineral resources) must be 0");
}

void algorithm1_properties(Criterion& c) {
    // three equal clusters of 12, plus the query's own cluster 0
    ClusterModel model;
    TermId next = 0;
    for (std::size_t cluster = 0; cluster < 4; ++cluster) {
        std::vector<TermId> members;
        for (int i = 0; i < 12; ++i) members.push_back(next++);
        for (TermId id : members) model.membership.emplace(id, cluster);
        model.clusters.push_back(std::move(members));
        model.centroids.push_back({1.0});
    }
    const TermId query = 0;  // cluster 0

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        for (std::size_t q = 3; q <= 9; ++q) {
            auto sample = diverse_global_samples(model, query, q, seed);
            std::map<std::size_t, std::size_t> counts{{1, 0}, {2, 0}, {3, 0}};
            for (TermId id : sample) {
                const std::size_t cl = *model.cluster_of(id);
                if (cl == 0) {
                    c.expect(false, "draw from the query's cluster");
                    return;
                }
                counts[cl]++;
            }
            std::size_t lo = SIZE_MAX, hi = 0;
            for (const auto& [cl, n] : counts) {
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            if (hi - lo > 1) {
                c.expect(false, "per-cluster draw counts differ by more than 1 (seed " +
                                    std::to_string(seed) + ", q " + std::to_string(q) + ")");
                return;
            }
        }
    }
    auto first = diverse_global_samples(model, query, 9, 4242);
    auto second = diverse_global_samples(model, query, 9, 4242);
    c.expect(first == second, "fixed seed must reproduce S_g byte-identically");
}

void gae_oracle(Criterion& c) {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t T = 1 + uniform_index(rng, 10);
        Trajectory traj;
        for (std::size_t t = 0; t < T; ++t) {
            traj.rewards.push_back(uniform_real(rng, -5.0, 5.0));
            traj.log_probs.push_back(0.0);
            traj.ref_log_probs.push_back(0.0);
        }
        for (std::size_t t = 0; t <= T; ++t) traj.values.push_back(uniform_real(rng, -2.0, 2.0));
        PpoConfig cfg;
        cfg.gamma = uniform_unit(rng);
        cfg.lam = uniform_unit(rng);

        auto fast = gae_advantage(traj, cfg);
        for (std::size_t t = 0; t < T; ++t) {
            double slow = 0.0;
            for (std::size_t i = 0; t + i < T; ++i) {
                const std::size_t s = t + i;
                const double delta =
                    traj.rewards[s] + cfg.gamma * traj.values[s + 1] - traj.values[s];
                slow += std::pow(cfg.gamma * cfg.lam, static_cast<double>(i)) * delta;
            }
            if (std::abs(fast[t] - slow) > 1e-9) {
                c.expect(false, "GAE deviates from the double-sum oracle by more than 1e-9");
                return;
            }
        }
    }

    Trajectory worked{{0.0, 1.0}, {0.5, 0.2, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    PpoConfig cfg;
    cfg.gamma = 0.9;
    cfg.lam = 0.95;
    auto a = gae_advantage(worked, cfg);
    c.expect_near(a[0], 0.364, 1e-12, "worked advantage A_0");
    c.expect_near(a[1], 0.8, 1e-12, "worked advantage A_1");
}

void kl_and_objective(Criterion& c) {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 7);
        std::vector<double> p(n), q(n);
        double sp = 0.0, sq = 0.0;
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
        if (std::abs(kl_divergence(p, p)) > 1e-12) {
            c.expect(false, "KL(p||p) above 1e-12");
            return;
        }
        if (kl_divergence(p, q) < 0.0) {
            c.expect(false, "negative KL on a random pair");
            return;
        }
    }
    c.expect_near(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{0.25, 0.75}),
                  0.1438, 1e-4, "worked KL value");

    Trajectory traj{{0.0}, {0.0, 0.0}, {std::log(1.2)}, {0.0}};
    PpoConfig cfg;
    cfg.beta = 0.1;
    c.expect_near(ppo_objective(traj, std::vector<double>{0.5}, cfg, 0.2), 0.58, 1e-12,
                  "single-step penalized objective");
}

void toy_ppo_convergence(Criterion& c) {
    MockEmbeddingProvider provider(0);
    HypernymBandit bandit({"soup", "white wine", "mineral", "broth"}, "soup", provider);

    const auto& rewards = bandit.reward_table();
    c.expect(rewards.size() == 4, "bandit must expose 4 actions");
    c.expect_near(rewards[bandit.truth_action()], 7.0, 1e-9, "truth reward");
    for (std::size_t a = 0; a < rewards.size(); ++a) {
        if (a != bandit.truth_action()) {
            c.expect(rewards[a] <= 3.2, "non-truth arm reward above 3.2");
        }
    }

    PpoConfig cfg;
    cfg.seed = 7;  // defaults: gamma = lam = 1, beta = 0.1, lr = 0.05, batch 32
    auto report = train_toy_policy(bandit, cfg, 200);
    c.expect(report.final_expected_reward - report.initial_expected_reward >= 2.0,
             "200 updates must raise mean episode reward by at least 2.0 (got " +
                 std::to_string(report.final_expected_reward - report.initial_expected_reward) +
                 ")");

    PpoConfig pinned;
    pinned.seed = 7;
    pinned.beta = 1000.0;
    pinned.learning_rate = 0.001;
    auto pinned_report = train_toy_policy(bandit, pinned, 200);
    c.expect(pinned_report.final_kl <= 0.01,
             "beta = 1e3 must keep the final KL within 0.01 of the reference (got " +
                 std::to_string(pinned_report.final_kl) + ")");
}

void end_to_end_mock(Criterion& c) {
    Taxonomy loaded = load_taxonomy(kDataDir / "toy_edges.tsv", kDataDir / "toy_definitions.tsv");
    c.expect(loaded.node_count() == 20, "toy taxonomy must have 20 nodes");
    auto split = split_leaf_holdout(prune_to_spanning_tree(loaded).tree, {0.2, 42});

    std::unordered_map<std::string, std::string> answers;
    std::vector<TermRecord> queries;
    std::vector<TermId> gold;
    for (const auto& q : split.queries) {
        queries.push_back(q.term);
        gold.push_back(q.true_parent);
        answers.emplace(q.term.surface, split.seed.record(q.true_parent).surface);
    }

    MockEmbeddingProvider provider(0);
    OracleBackend backend(answers);
    PipelineOptions options;
    options.m = 3;
    options.k = 5;
    options.seed = 0;
    auto results = run_expansion(split.seed, queries, options, provider, backend);
    auto report = run_evaluation(split.seed, results, gold);
    c.expect(report.accuracy == 1.0, "oracle accuracy must be 1.0");
    c.expect(report.wu_palmer_mean.has_value() && *report.wu_palmer_mean == 1.0,
             "oracle Wu&P mean must be 1.0");

    // continuation parsing example: prediction plus discarded augmentations
    const std::string completion =
        " land degradation\n"
        "TERM: acidification\n"
        "CONTEXT: acidification: the lowering of the ph of a solution.\n"
        "HYPERNYM: environmental pollution\n"
        "TERM: marine pollution\n"
        "CONTEXT: marine pollution: pollution of the ocean.\n"
        "HYPERNYM: water pollution\n";
    auto parsed = parse_completion(
        completion, {"polluted area", "underwater mineral resources", "animal life",
                     "environment", "land degradation"});
    c.expect(parsed.prediction == "land degradation",
             "completion must parse to 'land degradation'");
    c.expect(!parsed.augmentations.empty(), "at least one augmentation pair must be reported");
    c.expect(parsed.resolved_anchor && *parsed.resolved_anchor == "land degradation",
             "prediction must resolve to the matching anchor");
}

void prompt_format(Criterion& c) {
    Taxonomy loaded = load_taxonomy(kDataDir / "toy_edges.tsv", kDataDir / "toy_definitions.tsv");
    auto split = split_leaf_holdout(prune_to_spanning_tree(loaded).tree, {0.2, 42});
    MockEmbeddingProvider provider(0);
    auto model = build_cluster_model(split.seed, provider, 3);

    const TermRecord* moz = nullptr;
    for (const auto& q : split.queries) {
        if (q.term.surface == "mozzarella") moz = &q.term;
    }
    if (moz == nullptr) {
        c.expect(false, "fixture must hold out 'mozzarella' under seed 42");
        return;
    }

    PipelineOptions options;
    options.m = 3;
    options.k = 5;
    options.seed = 0;
    auto pools = build_pools(split.seed, model, provider, *moz, options);
    const std::string text = render_prompt(build_prompt(pools, split.seed, *moz, 5));

    std::ifstream in(kDataDir / "golden_prompt.txt", std::ios::binary);
    std::ostringstream golden;
    golden << in.rdbuf();
    c.expect(in.good(), "golden_prompt.txt must exist");
    c.expect(text == golden.str(), "rendered prompt must match the golden file byte for byte");

    c.expect(text.find("Candidate Hypernym List = [") != std::string::npos,
             "prompt must carry the candidate hypernym list");
    c.expect(text.find("A few examples of hypernym-hyponyms are given as:") != std::string::npos,
             "k>0 prompt must announce the example block");
    c.expect(text.size() >= 9 && text.substr(text.size() - 9) == "HYPERNYM:",
             "prompt must end with the bare HYPERNYM:");

    const std::string zero = render_prompt(build_prompt(SamplePools{}, split.seed, *moz, 0));
    c.expect(zero.find("A few examples") == std::string::npos,
             "k=0 prompt must not announce examples");
    c.expect(zero.find("TERM:") == zero.rfind("TERM:"),
             "k=0 prompt must contain only the query TERM block");
}

void benchmark_scale_contract(Criterion& c) {
    // Reference-scale benchmark scores require fine-tuning a 7B-parameter
    // model; the oracle-equivalence suites above stand in for them. What
    // must hold here is the loader contract on the real datasets when
    // present.
    const char* dir = std::getenv("TAXOGRAFT_SEMEVAL_DIR");
    if (dir == nullptr) {
        c.notes.push_back("SemEval files not supplied; loader contract covered by fixtures");
        return;
    }
    struct Expected {
        const char* name;
        std::size_t nodes, edges;
    };
    for (const auto& [name, nodes, edges] : {Expected{"env", 261, 261},
                                             Expected{"sci", 429, 452},
                                             Expected{"food", 1486, 1576}}) {
        fs::path edge_file = fs::path(dir) / (std::string(name) + ".edges.tsv");
        fs::path def_file = fs::path(dir) / (std::string(name) + ".definitions.tsv");
        if (!fs::exists(edge_file)) {
            c.notes.push_back(edge_file.string() + " absent; skipped");
            continue;
        }
        Taxonomy t = load_taxonomy(edge_file, fs::exists(def_file) ? def_file : fs::path{});
        c.expect(t.node_count() == nodes, std::string(name) + ": node count " +
                                              std::to_string(t.node_count()) + " != " +
                                              std::to_string(nodes));
        c.expect(t.edge_count() == edges, std::string(name) + ": edge count " +
                                              std::to_string(t.edge_count()) + " != " +
                                              std::to_string(edges));
    }
}

}  // namespace

int main() {
    std::cout << "acceptance suite (tolerances pinned in code)\n";
    run_criterion(1, "fuzzy and reward golden values", 1.0, reward_golden_values);
    run_criterion(2, "diverse global sampling properties", 10.0, algorithm1_properties);
    run_criterion(3, "GAE oracle equivalence", 30.0, gae_oracle);
    run_criterion(4, "KL and penalized objective", 30.0, kl_and_objective);
    run_criterion(5, "toy PPO convergence", 30.0, toy_ppo_convergence);
    run_criterion(6, "end-to-end mock pipeline", 5.0, end_to_end_mock);
    run_criterion(7, "prompt format golden file", 5.0, prompt_format);
    run_criterion(8, "dataset loader contract (benchmarks not reproduced)", 60.0,
                  benchmark_scale_contract);

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return g_failures;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
