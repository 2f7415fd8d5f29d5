#include "taxograft/prompt.hpp"

#include <stdexcept>

#include "taxograft/errors.hpp"
#include "taxograft/fuzzy.hpp"
#include "taxograft/text.hpp"

namespace taxograft {

namespace {

PromptInstance make_instance(const Taxonomy& seed, TermId id, PromptInstance::Origin origin) {
    const TermRecord& rec = seed.record(id);
    std::optional<TermId> parent = seed.parent(id);
    if (!parent) {
        throw std::invalid_argument("pool term '" + rec.surface +
                                    "' has no hypernym in the seed taxonomy");
    }
    return PromptInstance{rec.surface, rec.definition, seed.record(*parent).surface, origin};
}

}  // namespace

Prompt build_prompt(const SamplePools& pools, const Taxonomy& seed, const TermRecord& query,
                    std::size_t k) {
    if (k > pools.global.size() + pools.local.size()) {
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the " +
                                    std::to_string(pools.global.size() + pools.local.size()) +
                                    " pooled samples");
    }

    Prompt p;
    p.instruction = std::string(kInstructionV1);
    p.query_term = normalize_surface(query.surface);
    p.query_context = query.definition;
    for (const auto& rec : seed.records()) {
        if (rec.surface != p.query_term) p.anchors.push_back(rec.surface);
    }

    std::size_t li = 0, gi = 0;
    bool local_turn = true;
    while (p.instances.size() < k) {
        const bool local_left = li < pools.local.size();
        const bool global_left = gi < pools.global.size();
        if ((local_turn && local_left) || !global_left) {
            p.instances.push_back(
                make_instance(seed, pools.local[li++], PromptInstance::Origin::kLocal));
        } else {
            p.instances.push_back(
                make_instance(seed, pools.global[gi++], PromptInstance::Origin::kGlobal));
        }
        local_turn = !local_turn;
    }
    return p;
}

std::string render_prompt(const Prompt& p) {
    std::string out;
    out += p.instruction;
    out += "\nCandidate Hypernym List = [";
    for (std::size_t i = 0; i < p.anchors.size(); ++i) {
        if (i > 0) out += ", ";
        out += p.anchors[i];
    }
    out += "]\n";
    if (!p.instances.empty()) {
        out += "A few examples of hypernym-hyponyms are given as:\n";
        for (const auto& inst : p.instances) {
            out += "TERM: " + inst.term + "\n";
            out += "CONTEXT: " + inst.term + ":";
            if (!inst.context.empty()) out += " " + inst.context;
            out += "\n";
            out += "HYPERNYM: " + inst.hypernym + "\n";
        }
    }
    out += "TERM: " + p.query_term + "\n";
    out += "CONTEXT: " + p.query_term + ":";
    if (!p.query_context.empty()) out += " " + p.query_context;
    out += "\n";
    out += "HYPERNYM:";
    return out;
}

std::optional<std::string> resolve_anchor(std::string_view prediction,
                                          const std::vector<std::string>& anchors) {
    const std::string needle = normalize_surface(prediction);
    if (needle.empty()) return std::nullopt;
    for (const auto& anchor : anchors) {
        if (anchor == needle) return anchor;
    }
    double best = 0.0;
    const std::string* best_anchor = nullptr;
    for (const auto& anchor : anchors) {
        double score = fuzzy_label_matching(needle, anchor);
        if (score > best) {
            best = score;
            best_anchor = &anchor;
        }
    }
    if (best_anchor != nullptr && best >= kAnchorResolveThreshold) return *best_anchor;
    return std::nullopt;
}

ParsedCompletion parse_completion(std::string_view raw, const std::vector<std::string>& anchors) {
    ParsedCompletion parsed;
    parsed.raw = std::string(raw);

    std::vector<std::string> lines;
    std::string cur;
    for (char c : raw) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);

    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i == lines.size()) throw ParseError("empty completion");
    parsed.prediction = normalize_surface(lines[i]);
    parsed.resolved_anchor = resolve_anchor(parsed.prediction, anchors);
    ++i;

    // The model may keep emitting example blocks; each completed
    // TERM ... HYPERNYM pair becomes a reported augmentation.
    std::optional<std::string> pending_term;
    auto value_after = [](const std::string& line, std::string_view tag) {
        return normalize_surface(trim(line).substr(tag.size()));
    };
    for (; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        if (line.starts_with("TERM:")) {
            pending_term = value_after(line, "TERM:");
        } else if (line.starts_with("HYPERNYM:")) {
            std::string hypernym = value_after(line, "HYPERNYM:");
            if (pending_term && !pending_term->empty() && !hypernym.empty()) {
                parsed.augmentations.push_back(AugmentationPair{hypernym, *pending_term});
            }
            pending_term.reset();
        }
    }
    return parsed;
}

}  // namespace taxograft
