// Command-line front end for the taxonomy-expansion pipeline: dataset
// preparation, clustering, prompt inspection, batch inference, evaluation,
// reward breakdowns and the toy PPO demo.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taxograft/config.hpp"
#include "taxograft/errors.hpp"
#include "taxograft/metrics.hpp"
#include "taxograft/pipeline.hpp"
#include "taxograft/ppo.hpp"
#include "taxograft/prompt.hpp"
#include "taxograft/rewards.hpp"
#include "taxograft/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Workspace {
    fs::path dir;
    fs::path seed_edges() const { return dir / "seed_edges.tsv"; }
    fs::path seed_definitions() const { return dir / "seed_definitions.tsv"; }
    fs::path queries() const { return dir / "queries.tsv"; }
    fs::path predictions() const { return dir / "predictions.jsonl"; }
    fs::path clusters() const { return dir / "clusters.json"; }
};

void write_tsv(const fs::path& path, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw taxograft::LoadError("cannot write " + path.string());
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << '\t';
            out << row[i];
        }
        out << '\n';
    }
}

struct QueryRow {
    taxograft::TermRecord term;
    std::string parent_surface;
};

std::vector<QueryRow> read_queries(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw taxograft::LoadError("cannot open " + path.string());
    std::vector<QueryRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (taxograft::trim(line).empty()) continue;
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw taxograft::LoadError(path.string() + ":" + std::to_string(lineno) +
                                       ": expected term<TAB>parent<TAB>definition");
        }
        QueryRow row;
        row.term.id = static_cast<taxograft::TermId>(rows.size());
        row.term.surface = taxograft::normalize_surface(line.substr(0, t1));
        row.parent_surface = taxograft::normalize_surface(line.substr(t1 + 1, t2 - t1 - 1));
        row.term.definition = taxograft::trim(line.substr(t2 + 1));
        rows.push_back(std::move(row));
    }
    return rows;
}

taxograft::Taxonomy load_seed(const Workspace& ws) {
    return taxograft::load_taxonomy(ws.seed_edges(), ws.seed_definitions());
}

int run_prepare(const std::string& edges, const std::string& definitions, double fraction,
                std::uint64_t seed, const Workspace& ws) {
    std::vector<std::string> warnings;
    taxograft::Taxonomy loaded = taxograft::load_taxonomy(edges, definitions, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    auto pruned = taxograft::prune_to_spanning_tree(loaded);
    auto split = taxograft::split_leaf_holdout(pruned.tree, {fraction, seed});

    fs::create_directories(ws.dir);
    std::vector<std::vector<std::string>> edge_rows, def_rows, query_rows;
    for (const auto& rec : split.seed.records()) {
        for (taxograft::TermId child : split.seed.children(rec.id)) {
            edge_rows.push_back({rec.surface, split.seed.record(child).surface});
        }
        def_rows.push_back({rec.surface, rec.definition.empty() ? " " : rec.definition});
    }
    for (const auto& q : split.queries) {
        query_rows.push_back({q.term.surface, split.seed.record(q.true_parent).surface,
                              q.term.definition.empty() ? " " : q.term.definition});
    }
    write_tsv(ws.seed_edges(), edge_rows);
    write_tsv(ws.seed_definitions(), def_rows);
    write_tsv(ws.queries(), query_rows);

    json summary{{"nodes", loaded.node_count()},
                 {"edges", loaded.edge_count()},
                 {"depth", loaded.max_depth()},
                 {"pruned_edges", pruned.removed_edges},
                 {"seed_nodes", split.seed.node_count()},
                 {"seed_edges", split.seed.edge_count()},
                 {"queries", split.queries.size()},
                 {"out", ws.dir.string()}};
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_cluster(const Workspace& ws, std::size_t m, std::uint64_t embedding_seed) {
    taxograft::Taxonomy seed = load_seed(ws);
    taxograft::MockEmbeddingProvider provider(embedding_seed);
    auto model = taxograft::build_cluster_model(seed, provider, m);

    json clusters = json::array();
    for (std::size_t c = 0; c < model.cluster_count(); ++c) {
        json members = json::array();
        for (taxograft::TermId id : model.clusters[c]) members.push_back(seed.record(id).surface);
        clusters.push_back({{"index", c}, {"members", members}});
    }
    std::ofstream out(ws.clusters());
    out << json{{"m", model.cluster_count()}, {"clusters", clusters}}.dump(2) << '\n';
    std::cout << "wrote " << ws.clusters().string() << " (" << model.cluster_count()
              << " clusters over " << model.total_members() << " anchors)\n";
    return 0;
}

taxograft::PipelineOptions make_options(std::size_t m, std::size_t k, std::size_t q,
                                        bool no_global, bool no_local, std::uint64_t seed,
                                        std::size_t concurrency) {
    taxograft::PipelineOptions options;
    options.m = m;
    options.k = k;
    options.q = q;
    options.use_global = !no_global;
    options.use_local = !no_local;
    options.seed = seed;
    options.concurrency = concurrency;
    return options;
}

int run_prompt(const Workspace& ws, const std::string& query_term, const std::string& definition,
               const taxograft::PipelineOptions& options, std::uint64_t embedding_seed,
               const std::string& dump_dir) {
    taxograft::Taxonomy seed = load_seed(ws);
    taxograft::MockEmbeddingProvider provider(embedding_seed);
    auto model = taxograft::build_cluster_model(seed, provider, options.m);

    std::vector<taxograft::TermRecord> targets;
    if (!query_term.empty()) {
        taxograft::TermRecord rec;
        rec.surface = taxograft::normalize_surface(query_term);
        rec.definition = definition;
        if (definition.empty()) {
            for (const auto& row : read_queries(ws.queries())) {
                if (row.term.surface == rec.surface) rec.definition = row.term.definition;
            }
        }
        targets.push_back(std::move(rec));
    } else {
        for (const auto& row : read_queries(ws.queries())) targets.push_back(row.term);
    }

    for (const auto& query : targets) {
        auto pools = taxograft::build_pools(seed, model, provider, query, options);
        std::size_t k = std::min(options.k, pools.global.size() + pools.local.size());
        auto prompt = taxograft::build_prompt(pools, seed, query, k);
        std::string text = taxograft::render_prompt(prompt);
        if (dump_dir.empty()) {
            std::cout << text << '\n';
        } else {
            fs::create_directories(dump_dir);
            fs::path file = fs::path(dump_dir) / (taxograft::slugify(query.surface) + ".txt");
            std::ofstream out(file);
            out << text;
            std::cout << "wrote " << file.string() << '\n';
        }
    }
    return 0;
}

std::unique_ptr<taxograft::InferenceBackend> make_backend(
    const std::string& mock, const std::string& endpoint, const std::vector<QueryRow>& queries,
    double corruption_rate, std::uint64_t seed, const std::string& fixed_response,
    const taxograft::RetryPolicy& retry, const std::string& auth_token_env) {
    if (!endpoint.empty()) {
        const char* token = std::getenv(auth_token_env.c_str());
        return std::make_unique<taxograft::HttpCompletionBackend>(
            endpoint, "/v1/completions", token == nullptr ? "" : token, retry);
    }
    std::unordered_map<std::string, std::string> answers;
    for (const auto& row : queries) answers.emplace(row.term.surface, row.parent_surface);
    if (mock == "oracle") return std::make_unique<taxograft::OracleBackend>(std::move(answers));
    if (mock == "noisy") {
        return std::make_unique<taxograft::NoisyOracleBackend>(std::move(answers),
                                                               corruption_rate, seed);
    }
    if (mock == "fixed") return std::make_unique<taxograft::FixedBackend>(fixed_response);
    throw std::invalid_argument("unknown mock backend '" + mock + "'");
}

int run_infer(const Workspace& ws, const std::string& mock, const std::string& endpoint,
              const taxograft::PipelineOptions& options, double corruption_rate,
              const std::string& fixed_response, std::uint64_t embedding_seed) {
    taxograft::Taxonomy seed = load_seed(ws);
    auto query_rows = read_queries(ws.queries());
    taxograft::MockEmbeddingProvider provider(embedding_seed);

    auto backend = make_backend(mock, endpoint, query_rows, corruption_rate, options.seed,
                                fixed_response, {}, "TAXOGRAFT_API_TOKEN");

    std::vector<taxograft::TermRecord> queries;
    std::vector<taxograft::TermId> gold;
    for (const auto& row : query_rows) {
        auto parent = seed.find(row.parent_surface);
        if (!parent) {
            throw taxograft::StructuralError("gold parent '" + row.parent_surface +
                                             "' is not in the seed taxonomy");
        }
        queries.push_back(row.term);
        gold.push_back(*parent);
    }

    auto results = taxograft::run_expansion(seed, queries, options, provider, *backend);
    std::ofstream out(ws.predictions());
    taxograft::write_predictions_jsonl(out, seed, results, gold);

    std::size_t failures = 0;
    for (const auto& r : results) {
        if (r.error) ++failures;
    }
    std::cout << "wrote " << ws.predictions().string() << " (" << results.size() << " queries, "
              << failures << " failed)\n";
    return 0;
}

int run_evaluate(const Workspace& ws) {
    taxograft::Taxonomy seed = load_seed(ws);
    std::ifstream in(ws.predictions());
    if (!in) throw taxograft::LoadError("cannot open " + ws.predictions().string());

    std::size_t total = 0, hits = 0, unresolved = 0, augmentations = 0;
    double wu_sum = 0.0;
    std::size_t wu_count = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (taxograft::trim(line).empty()) continue;
        json rec = json::parse(line);
        ++total;
        augmentations += rec.value("augmentations", json::array()).size();
        const std::string gold = rec.at("parent_gold").get<std::string>();
        if (rec.at("resolved").is_null()) {
            ++unresolved;
            continue;
        }
        const std::string resolved = rec.at("resolved").get<std::string>();
        if (resolved == gold) ++hits;
        auto rid = seed.find(resolved);
        auto gid = seed.find(gold);
        if (rid && gid) {
            wu_sum += taxograft::wu_palmer(seed, *rid, *gid);
            ++wu_count;
        }
    }
    if (total == 0) throw taxograft::LoadError("predictions file is empty");

    json report{{"queries", total},
                {"accuracy", static_cast<double>(hits) / static_cast<double>(total)},
                {"wu_palmer_mean", nullptr},
                {"unresolved", unresolved},
                {"augmentations", augmentations}};
    if (wu_count > 0) report["wu_palmer_mean"] = wu_sum / static_cast<double>(wu_count);
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_reward(const std::string& pred, const std::string& gold, std::uint64_t embedding_seed) {
    taxograft::MockEmbeddingProvider provider(embedding_seed);
    auto r = taxograft::total_reward(provider, pred, gold);
    json j{{"label_reliability", r.label_reliability},
           {"semantic_consistency", r.semantic_consistency},
           {"length_conformity", r.length_conformity},
           {"token_overlap", r.token_overlap},
           {"fuzzy",
            {{"edit_distance_ratio", r.fuzzy_edit},
             {"partial_edit_distance_ratio", r.fuzzy_partial},
             {"token_sort_ratio", r.fuzzy_token_sort},
             {"token_set_ratio", r.fuzzy_token_set},
             {"total", r.fuzzy_total}}},
           {"total", r.total}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_ppo_demo(std::size_t steps, const taxograft::PpoConfig& cfg) {
    taxograft::MockEmbeddingProvider provider(cfg.seed);
    taxograft::HypernymBandit bandit({"soup", "white wine", "mineral", "environmental law"},
                                     "soup", provider);
    auto report = taxograft::train_toy_policy(bandit, cfg, steps);
    for (const auto& u : report.updates) {
        json j{{"step", u.step},
               {"mean_reward", u.mean_reward},
               {"kl", u.kl},
               {"objective", u.objective}};
        std::cout << j.dump() << '\n';
    }
    json summary{{"initial_expected_reward", report.initial_expected_reward},
                 {"final_expected_reward", report.final_expected_reward},
                 {"final_kl", report.final_kl}};
    std::cout << summary.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Taxonomy expansion with k-shot prompts, composite rewards and a PPO lab"};
    app.require_subcommand(1);

    Workspace ws;
    std::string out_dir = "out";

    // prepare
    auto* prepare = app.add_subcommand("prepare", "Load, prune and split a taxonomy dataset");
    std::string edges, definitions;
    double fraction = 0.2;
    std::uint64_t split_seed = 42;
    prepare->add_option("--edges", edges, "parent<TAB>child edge file")->required();
    prepare->add_option("--definitions", definitions, "term<TAB>definition file")->required();
    prepare->add_option("--test-fraction", fraction, "leaf holdout fraction (0,1)");
    prepare->add_option("--seed", split_seed, "holdout RNG seed");
    prepare->add_option("--out", out_dir, "workspace directory");

    // shared pipeline knobs
    std::size_t m = 0, k = 5, q = 0, concurrency = 4;
    bool no_global = false, no_local = false;
    std::uint64_t seed = 0, embedding_seed = 0;

    auto add_pipeline_flags = [&](CLI::App* cmd) {
        cmd->add_option("--m", m, "cluster count (0 = sqrt rule)");
        cmd->add_option("--k", k, "shots per prompt");
        cmd->add_option("--q", q, "global draws (0 = k)");
        cmd->add_flag("--no-global", no_global, "drop the global sample pool");
        cmd->add_flag("--no-local", no_local, "drop the local sample pool");
        cmd->add_option("--seed", seed, "sampling seed");
        cmd->add_option("--embedding-seed", embedding_seed, "mock embedding seed");
        cmd->add_option("--out", out_dir, "workspace directory");
    };

    auto* cluster = app.add_subcommand("cluster", "Cluster seed anchors and dump the groups");
    cluster->add_option("--m", m, "cluster count (0 = sqrt rule)");
    cluster->add_option("--embedding-seed", embedding_seed, "mock embedding seed");
    cluster->add_option("--out", out_dir, "workspace directory");

    auto* prompt = app.add_subcommand("prompt", "Render k-shot prompts for held-out queries");
    std::string query_term, query_definition, dump_dir;
    prompt->add_option("--query", query_term, "single query term (default: all)");
    prompt->add_option("--definition", query_definition, "definition for an ad-hoc query");
    prompt->add_option("--dump-dir", dump_dir, "write one file per query, named by slug");
    add_pipeline_flags(prompt);

    auto* infer = app.add_subcommand("infer", "Run the expansion pipeline over the queries");
    std::string mock = "oracle", endpoint, fixed_response;
    double corruption_rate = 0.0;
    infer->add_option("--mock", mock, "oracle|noisy|fixed (ignored with --endpoint)");
    infer->add_option("--endpoint", endpoint, "remote completions base URL");
    infer->add_option("--corruption-rate", corruption_rate, "noisy mock corruption rate");
    infer->add_option("--fixed-response", fixed_response, "fixed mock canned text");
    infer->add_option("--concurrency", concurrency, "bounded in-flight queries");
    add_pipeline_flags(infer);

    auto* evaluate = app.add_subcommand("evaluate", "Score predictions.jsonl against gold");
    evaluate->add_option("--out", out_dir, "workspace directory");

    auto* reward = app.add_subcommand("reward", "Reward breakdown for one (pred, gold) pair");
    std::string pred, gold;
    reward->add_option("--pred", pred, "predicted hypernym")->required();
    reward->add_option("--gold", gold, "true hypernym")->required();
    reward->add_option("--embedding-seed", embedding_seed, "mock embedding seed");

    auto* ppo = app.add_subcommand("ppo-demo", "Train the toy bandit policy and log updates");
    taxograft::PpoConfig ppo_cfg;
    std::size_t ppo_steps = 200;
    ppo->add_option("--steps", ppo_steps, "update count");
    ppo->add_option("--gamma", ppo_cfg.gamma, "discount");
    ppo->add_option("--lam", ppo_cfg.lam, "GAE lambda");
    ppo->add_option("--beta", ppo_cfg.beta, "KL penalty weight");
    ppo->add_option("--learning-rate", ppo_cfg.learning_rate, "ascent step size");
    ppo->add_option("--seed", ppo_cfg.seed, "rollout seed");
    ppo->add_option("--batch-size", ppo_cfg.batch_size, "episodes per update");

    CLI11_PARSE(app, argc, argv);
    ws.dir = out_dir;

    try {
        if (prepare->parsed()) return run_prepare(edges, definitions, fraction, split_seed, ws);
        if (cluster->parsed()) return run_cluster(ws, m, embedding_seed);
        if (prompt->parsed()) {
            return run_prompt(ws, query_term, query_definition,
                              make_options(m, k, q, no_global, no_local, seed, concurrency),
                              embedding_seed, dump_dir);
        }
        if (infer->parsed()) {
            return run_infer(ws, mock, endpoint,
                             make_options(m, k, q, no_global, no_local, seed, concurrency),
                             corruption_rate, fixed_response, embedding_seed);
        }
        if (evaluate->parsed()) return run_evaluate(ws);
        if (reward->parsed()) return run_reward(pred, gold, embedding_seed);
        if (ppo->parsed()) return run_ppo_demo(ppo_steps, ppo_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
