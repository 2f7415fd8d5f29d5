#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace taxograft {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// Okapi BM25 over a fixed corpus of definition texts. Scoring uses
/// idf(t) = ln(1 + (N - n_t + 0.5) / (n_t + 0.5)) and the (k1+1)-scaled
/// saturated term frequency with document-length normalization.
class Bm25Index {
public:
    explicit Bm25Index(const std::vector<std::string>& corpus, Bm25Params params = {});

    /// Sum over query tokens of their BM25 weight in `document` (tokenized
    /// on the fly; absent terms contribute zero).
    double score(std::string_view query, std::string_view document) const;

    double avg_doc_length() const { return avgdl_; }
    std::size_t doc_count() const { return doc_count_; }

private:
    double idf(const std::string& token) const;

    Bm25Params params_;
    std::size_t doc_count_ = 0;
    double avgdl_ = 0.0;
    std::unordered_map<std::string, std::size_t> doc_freq_;
};

/// One-shot convenience around Bm25Index. Throws std::invalid_argument on an
/// empty corpus.
double bm25_score(std::string_view query_definition, std::string_view document_definition,
                  const std::vector<std::string>& corpus, Bm25Params params = {});

}  // namespace taxograft
