#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxograft/sampler.hpp"
#include "taxograft/taxonomy.hpp"

namespace taxograft {

/// Instruction preamble, version 1. Kept verbatim so rendered prompts are
/// byte-stable across releases.
inline constexpr std::string_view kInstructionV1 =
    "You are an assistant to hypernym prediction and sorting.\n"
    "Given a term, its context and a list of candidate hypernym answers to this term, "
    "You need to rank these candidate terms in the list to let candidate answers which "
    "are most possible to be the hypernym or parent term to the given term and return "
    "the list.";

struct PromptInstance {
    enum class Origin { kLocal, kGlobal };
    std::string term;
    std::string context;   // the term's definition
    std::string hypernym;  // its parent surface in the seed taxonomy
    Origin origin = Origin::kLocal;
};

struct Prompt {
    std::string instruction;
    std::vector<std::string> anchors;       // seed surfaces in load order, query removed
    std::vector<PromptInstance> instances;  // length k
    std::string query_term;
    std::string query_context;
};

/// Selects k demonstrations alternately, local first (l, g, l, g, ...);
/// once a pool runs out the rest come from the other. Every instance's
/// hypernym is its parent in the seed taxonomy.
/// Throws std::invalid_argument if k exceeds the combined pool size or a
/// pooled node has no parent.
Prompt build_prompt(const SamplePools& pools, const Taxonomy& seed, const TermRecord& query,
                    std::size_t k);

/// Exact text layout:
///   <instruction>
///   Candidate Hypernym List = [a, b, ...]
///   A few examples of hypernym-hyponyms are given as:     (k > 0 only)
///   TERM: <term>
///   CONTEXT: <term>: <definition>
///   HYPERNYM: <parent>
///   ...
///   TERM: <query>
///   CONTEXT: <query>: <definition>
///   HYPERNYM:
/// The rendered text always ends with the bare `HYPERNYM:`.
std::string render_prompt(const Prompt& p);

struct AugmentationPair {
    std::string hypernym;
    std::string hyponym;
};

/// Non-exact predictions resolve to the anchor with the best fuzzy match
/// total of at least this threshold (out of 4); anything weaker stays
/// unresolved and scores as wrong.
inline constexpr double kAnchorResolveThreshold = 3.0;

struct ParsedCompletion {
    std::string prediction;                      // first line, normalized
    std::optional<std::string> resolved_anchor;  // anchor surface, if any
    std::vector<AugmentationPair> augmentations; // reported, never inserted
    std::string raw;
};

/// Exact anchor match, else the fuzzy-best anchor at or above the threshold
/// (first such anchor wins ties), else nullopt.
std::optional<std::string> resolve_anchor(std::string_view prediction,
                                          const std::vector<std::string>& anchors);

/// Splits the continuation after the trailing `HYPERNYM:` into the
/// prediction (first non-blank line) and any TERM/CONTEXT/HYPERNYM triples
/// the model kept generating, reported as (hypernym, hyponym) pairs.
/// Throws ParseError on an all-whitespace completion.
ParsedCompletion parse_completion(std::string_view raw, const std::vector<std::string>& anchors);

}  // namespace taxograft
