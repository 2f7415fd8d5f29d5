#include "taxograft/bm25.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "taxograft/text.hpp"

namespace taxograft {

Bm25Index::Bm25Index(const std::vector<std::string>& corpus, Bm25Params params)
    : params_(params), doc_count_(corpus.size()) {
    if (corpus.empty()) throw std::invalid_argument("BM25 corpus must be non-empty");
    std::size_t total_len = 0;
    for (const auto& doc : corpus) {
        auto tokens = tokenize(doc);
        total_len += tokens.size();
        std::set<std::string> distinct(tokens.begin(), tokens.end());
        for (const auto& t : distinct) ++doc_freq_[t];
    }
    avgdl_ = static_cast<double>(total_len) / static_cast<double>(doc_count_);
    if (avgdl_ == 0.0) avgdl_ = 1.0;
}

double Bm25Index::idf(const std::string& token) const {
    auto it = doc_freq_.find(token);
    double n = it == doc_freq_.end() ? 0.0 : static_cast<double>(it->second);
    double N = static_cast<double>(doc_count_);
    return std::log(1.0 + (N - n + 0.5) / (n + 0.5));
}

double Bm25Index::score(std::string_view query, std::string_view document) const {
    auto doc_tokens = tokenize(document);
    std::unordered_map<std::string, std::size_t> tf;
    for (const auto& t : doc_tokens) ++tf[t];
    const double dl = static_cast<double>(doc_tokens.size());

    double total = 0.0;
    for (const auto& q : tokenize(query)) {
        auto it = tf.find(q);
        if (it == tf.end()) continue;
        double f = static_cast<double>(it->second);
        double norm = params_.k1 * (1.0 - params_.b + params_.b * dl / avgdl_);
        total += idf(q) * f * (params_.k1 + 1.0) / (f + norm);
    }
    return total;
}

double bm25_score(std::string_view query_definition, std::string_view document_definition,
                  const std::vector<std::string>& corpus, Bm25Params params) {
    return Bm25Index(corpus, params).score(query_definition, document_definition);
}

}  // namespace taxograft
