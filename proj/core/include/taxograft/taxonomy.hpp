#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace taxograft {

/// Handle for one term. Assigned densely in load order (first appearance in
/// the edge stream) and stable within one Taxonomy instance only.
using TermId = std::uint32_t;

struct TermRecord {
    TermId id = 0;
    std::string surface;     // normalized: trimmed, lowercased, single-spaced
    std::string definition;  // may be empty
};

/// Rooted DAG of is-a edges, immutable after construction. In tree form
/// (after pruning) it also answers depth and ancestor queries.
class Taxonomy {
public:
    Taxonomy() = default;

    /// Builds from (parent, child) surface-name pairs plus an optional
    /// (term, definition) table. Surfaces are normalized before resolution.
    /// Throws LoadError on duplicate edges or duplicate definition rows and
    /// StructuralError on zero/multiple roots or cycles. Terms without a
    /// definition get an empty one and a note in `warnings`.
    static Taxonomy build(const std::vector<std::pair<std::string, std::string>>& edges,
                          const std::vector<std::pair<std::string, std::string>>& definitions = {},
                          std::vector<std::string>* warnings = nullptr);

    std::size_t node_count() const { return records_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    TermId root() const { return root_; }
    bool is_tree() const { return edge_count_ + 1 == records_.size(); }

    const std::vector<TermRecord>& records() const { return records_; }
    const TermRecord& record(TermId id) const;
    std::optional<TermId> find(std::string_view surface) const;

    const std::vector<TermId>& parents(TermId id) const;
    const std::vector<TermId>& children(TermId id) const;
    /// Unique parent in tree form; nullopt for the root.
    std::optional<TermId> parent(TermId id) const;

    /// Root has depth 1. In DAG form this is 1 + the minimal parent depth.
    int depth(TermId id) const;
    int max_depth() const;

    /// Deepest ancestor-or-self of both nodes. Requires tree form.
    TermId lowest_common_ancestor(TermId a, TermId b) const;

    /// Nodes without children, in load order.
    std::vector<TermId> leaves() const;

    /// Copy without the given nodes (and their incident edges). Surviving
    /// nodes keep their relative load order but are re-assigned dense ids.
    Taxonomy without_nodes(const std::vector<TermId>& dropped) const;

private:
    void index_and_validate();
    void check_id(TermId id) const;

    std::vector<TermRecord> records_;
    std::vector<std::vector<TermId>> parents_;
    std::vector<std::vector<TermId>> children_;
    std::vector<int> depths_;
    std::unordered_map<std::string, TermId> by_surface_;
    std::size_t edge_count_ = 0;
    TermId root_ = 0;
};

struct PruneResult {
    Taxonomy tree;
    std::size_t removed_edges = 0;
};

/// Reduces a rooted DAG to its spanning tree: every multi-parent node keeps
/// the edge whose parent is shallowest, ties broken lexicographically on the
/// parent surface name.
PruneResult prune_to_spanning_tree(const Taxonomy& t);

struct SplitSpec {
    double test_fraction = 0.2;  // in (0, 1)
    std::uint64_t seed = 0;
};

struct QueryExample {
    TermRecord term;      // held-out leaf (id refers to the pre-split tree)
    TermId true_parent;   // id in the seed taxonomy returned alongside
};

struct HoldoutSplit {
    Taxonomy seed;
    std::vector<QueryExample> queries;  // in load order of the input tree
};

/// Removes round(test_fraction * |leaves|) leaves, drawn uniformly without
/// replacement under the seeded RNG, and returns them as queries paired with
/// their parents in the remaining seed taxonomy.
HoldoutSplit split_leaf_holdout(const Taxonomy& t, const SplitSpec& spec);

/// Reads a two-column tab-separated file. Throws LoadError with the line
/// number on rows that do not have exactly two non-empty columns.
std::vector<std::pair<std::string, std::string>> read_tsv_pairs(
    const std::filesystem::path& path, std::string_view what);

/// File-based loader: edge file has `parent<TAB>child` rows, definition file
/// `term<TAB>definition` rows.
Taxonomy load_taxonomy(const std::filesystem::path& edge_file,
                       const std::filesystem::path& definition_file,
                       std::vector<std::string>* warnings = nullptr);

}  // namespace taxograft
