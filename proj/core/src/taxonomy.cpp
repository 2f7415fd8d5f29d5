#include "taxograft/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <stdexcept>

#include "taxograft/errors.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

namespace {

struct EdgeKey {
    TermId parent;
    TermId child;
    bool operator<(const EdgeKey& o) const {
        return parent != o.parent ? parent < o.parent : child < o.child;
    }
};

}  // namespace

Taxonomy Taxonomy::build(const std::vector<std::pair<std::string, std::string>>& edges,
                         const std::vector<std::pair<std::string, std::string>>& definitions,
                         std::vector<std::string>* warnings) {
    Taxonomy t;
    auto intern = [&t](const std::string& raw) -> TermId {
        std::string surface = normalize_surface(raw);
        if (surface.empty()) throw LoadError("empty term surface in edge list");
        auto it = t.by_surface_.find(surface);
        if (it != t.by_surface_.end()) return it->second;
        TermId id = static_cast<TermId>(t.records_.size());
        t.by_surface_.emplace(surface, id);
        t.records_.push_back(TermRecord{id, std::move(surface), ""});
        t.parents_.emplace_back();
        t.children_.emplace_back();
        return id;
    };

    std::set<EdgeKey> seen;
    for (const auto& [parent_raw, child_raw] : edges) {
        TermId parent = intern(parent_raw);
        TermId child = intern(child_raw);
        if (parent == child) {
            throw StructuralError("self-loop on term '" + t.records_[parent].surface + "'");
        }
        if (!seen.insert(EdgeKey{parent, child}).second) {
            throw LoadError("duplicate edge '" + t.records_[parent].surface + "' -> '" +
                            t.records_[child].surface + "'");
        }
        t.children_[parent].push_back(child);
        t.parents_[child].push_back(parent);
        ++t.edge_count_;
    }
    if (t.records_.empty()) throw StructuralError("taxonomy has no nodes");

    std::unordered_map<std::string, std::string> defs;
    std::size_t row = 0;
    for (const auto& [term_raw, definition] : definitions) {
        ++row;
        std::string surface = normalize_surface(term_raw);
        if (!defs.emplace(surface, trim(definition)).second) {
            throw LoadError("duplicate definition for term '" + surface + "' (row " +
                            std::to_string(row) + ")");
        }
    }
    for (auto& rec : t.records_) {
        auto it = defs.find(rec.surface);
        if (it != defs.end()) {
            rec.definition = it->second;
        } else if (warnings != nullptr) {
            warnings->push_back("term '" + rec.surface + "' has no definition");
        }
    }

    t.index_and_validate();
    return t;
}

void Taxonomy::index_and_validate() {
    std::vector<TermId> roots;
    for (const auto& rec : records_) {
        if (parents_[rec.id].empty()) roots.push_back(rec.id);
    }
    if (roots.empty()) {
        throw StructuralError("no root node: every term has a parent (cycle through all nodes)");
    }
    if (roots.size() > 1) {
        std::string names;
        for (TermId r : roots) {
            if (!names.empty()) names += ", ";
            names += "'" + records_[r].surface + "'";
        }
        throw StructuralError("multiple roots: " + names);
    }
    root_ = roots.front();

    // BFS from the root assigns depth = 1 + min parent depth and doubles as
    // the reachability check. A back edge in the BFS tree implies a cycle.
    depths_.assign(records_.size(), 0);
    depths_[root_] = 1;
    std::deque<TermId> queue{root_};
    std::size_t visited = 1;
    while (!queue.empty()) {
        TermId cur = queue.front();
        queue.pop_front();
        for (TermId child : children_[cur]) {
            if (depths_[child] == 0) {
                depths_[child] = depths_[cur] + 1;
                ++visited;
                queue.push_back(child);
            }
        }
    }
    if (visited != records_.size()) {
        throw StructuralError("cycle detected: " + std::to_string(records_.size() - visited) +
                              " node(s) unreachable from root '" + records_[root_].surface + "'");
    }
    // Reachability rules out cycles among reachable nodes only if no edge
    // climbs back; verify explicitly via Kahn's algorithm.
    std::vector<std::size_t> indegree(records_.size());
    for (const auto& rec : records_) indegree[rec.id] = parents_[rec.id].size();
    std::deque<TermId> ready{root_};
    std::size_t ordered = 0;
    while (!ready.empty()) {
        TermId cur = ready.front();
        ready.pop_front();
        ++ordered;
        for (TermId child : children_[cur]) {
            if (--indegree[child] == 0) ready.push_back(child);
        }
    }
    if (ordered != records_.size()) {
        throw StructuralError("cycle detected among " +
                              std::to_string(records_.size() - ordered) + " node(s)");
    }
}

const TermRecord& Taxonomy::record(TermId id) const {
    check_id(id);
    return records_[id];
}

std::optional<TermId> Taxonomy::find(std::string_view surface) const {
    auto it = by_surface_.find(normalize_surface(surface));
    if (it == by_surface_.end()) return std::nullopt;
    return it->second;
}

const std::vector<TermId>& Taxonomy::parents(TermId id) const {
    check_id(id);
    return parents_[id];
}

const std::vector<TermId>& Taxonomy::children(TermId id) const {
    check_id(id);
    return children_[id];
}

std::optional<TermId> Taxonomy::parent(TermId id) const {
    check_id(id);
    if (parents_[id].empty()) return std::nullopt;
    if (parents_[id].size() > 1) {
        throw StructuralError("term '" + records_[id].surface +
                              "' has multiple parents; prune to a tree first");
    }
    return parents_[id].front();
}

int Taxonomy::depth(TermId id) const {
    check_id(id);
    return depths_[id];
}

int Taxonomy::max_depth() const {
    int best = 0;
    for (int d : depths_) best = std::max(best, d);
    return best;
}

TermId Taxonomy::lowest_common_ancestor(TermId a, TermId b) const {
    check_id(a);
    check_id(b);
    if (!is_tree()) {
        throw StructuralError("lowest_common_ancestor requires tree form");
    }
    while (depths_[a] > depths_[b]) a = parents_[a].front();
    while (depths_[b] > depths_[a]) b = parents_[b].front();
    while (a != b) {
        a = parents_[a].front();
        b = parents_[b].front();
    }
    return a;
}

std::vector<TermId> Taxonomy::leaves() const {
    std::vector<TermId> out;
    for (const auto& rec : records_) {
        if (children_[rec.id].empty()) out.push_back(rec.id);
    }
    return out;
}

Taxonomy Taxonomy::without_nodes(const std::vector<TermId>& dropped) const {
    std::vector<bool> drop(records_.size(), false);
    for (TermId id : dropped) {
        check_id(id);
        drop[id] = true;
    }
    if (drop[root_]) throw StructuralError("cannot drop the root node");

    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, std::string>> defs;
    for (const auto& rec : records_) {
        if (drop[rec.id]) continue;
        defs.emplace_back(rec.surface, rec.definition);
        for (TermId child : children_[rec.id]) {
            if (!drop[child]) edges.emplace_back(rec.surface, records_[child].surface);
        }
    }
    return build(edges, defs);
}

void Taxonomy::check_id(TermId id) const {
    if (id >= records_.size()) {
        throw std::out_of_range("unknown term id " + std::to_string(id));
    }
}

PruneResult prune_to_spanning_tree(const Taxonomy& t) {
    std::vector<std::pair<std::string, std::string>> kept;
    std::vector<std::pair<std::string, std::string>> defs;
    std::size_t removed = 0;
    for (const auto& rec : t.records()) {
        defs.emplace_back(rec.surface, rec.definition);
        const auto& ps = t.parents(rec.id);
        if (ps.empty()) continue;
        TermId best = ps.front();
        for (std::size_t i = 1; i < ps.size(); ++i) {
            TermId cand = ps[i];
            int bd = t.depth(best);
            int cd = t.depth(cand);
            if (cd < bd || (cd == bd && t.record(cand).surface < t.record(best).surface)) {
                best = cand;
            }
        }
        removed += ps.size() - 1;
        kept.emplace_back(t.record(best).surface, rec.surface);
    }

    PruneResult result{Taxonomy::build(kept, defs), removed};
    if (!result.tree.is_tree() || result.tree.node_count() != t.node_count()) {
        throw StructuralError("pruning disconnected the taxonomy");
    }
    return result;
}

HoldoutSplit split_leaf_holdout(const Taxonomy& t, const SplitSpec& spec) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must lie in (0, 1)");
    }
    if (!t.is_tree()) throw StructuralError("split requires tree form");
    std::vector<TermId> leaves = t.leaves();
    if (leaves.empty()) throw std::invalid_argument("taxonomy has no leaves to hold out");

    auto want = static_cast<std::size_t>(
        std::llround(spec.test_fraction * static_cast<double>(leaves.size())));
    want = std::min(want, leaves.size() - 1);

    // Partial Fisher-Yates over the leaf list; the first `want` entries are
    // the held-out queries.
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, leaves.size() - i));
        std::swap(leaves[i], leaves[j]);
    }
    std::vector<TermId> held(leaves.begin(), leaves.begin() + static_cast<std::ptrdiff_t>(want));
    std::sort(held.begin(), held.end());

    HoldoutSplit split;
    split.seed = t.without_nodes(held);
    split.queries.reserve(held.size());
    for (TermId id : held) {
        const TermRecord& rec = t.record(id);
        std::optional<TermId> parent = t.parent(id);
        auto seed_parent = split.seed.find(t.record(*parent).surface);
        if (!seed_parent) {
            throw StructuralError("true parent of '" + rec.surface + "' missing from seed");
        }
        split.queries.push_back(QueryExample{rec, *seed_parent});
    }
    return split;
}

std::vector<std::pair<std::string, std::string>> read_tsv_pairs(
    const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + std::string(what) + " file: " + path.string());
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw LoadError(path.string() + ":" + std::to_string(lineno) +
                            ": expected two tab-separated columns");
        }
        std::string first = trim(line.substr(0, tab));
        std::string second = trim(line.substr(tab + 1));
        if (first.empty() || second.empty()) {
            throw LoadError(path.string() + ":" + std::to_string(lineno) + ": empty column");
        }
        rows.emplace_back(std::move(first), std::move(second));
    }
    return rows;
}

Taxonomy load_taxonomy(const std::filesystem::path& edge_file,
                       const std::filesystem::path& definition_file,
                       std::vector<std::string>* warnings) {
    auto edges = read_tsv_pairs(edge_file, "edge");
    std::vector<std::pair<std::string, std::string>> defs;
    if (!definition_file.empty()) defs = read_tsv_pairs(definition_file, "definition");
    return Taxonomy::build(edges, defs, warnings);
}

}  // namespace taxograft
