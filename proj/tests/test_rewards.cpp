#include <random>
#include <string>
#include <unordered_map>

#include <doctest.h>

#include "taxograft/rewards.hpp"
#include "taxograft/rng.hpp"
#include "taxograft/text.hpp"

using namespace taxograft;

namespace {

/// Provider returning canned vectors by text, for forcing geometry.
class FixedProvider final : public EmbeddingProvider {
public:
    explicit FixedProvider(std::unordered_map<std::string, EmbeddingVector> table)
        : table_(std::move(table)) {}
    std::size_t dimension() const override { return 2; }
    EmbeddingVector embed(const std::string& text) override { return table_.at(text); }

private:
    std::unordered_map<std::string, EmbeddingVector> table_;
};

std::string random_phrase(std::mt19937_64& rng) {
    static const char* words[] = {"water", "soil", "b", "complex", "vitamin", "of", "resources"};
    std::string s;
    const std::size_t n = 1 + uniform_index(rng, 3);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) s += ' ';
        s += words[uniform_index(rng, 7)];
    }
    return s;
}

}  // namespace

TEST_CASE("label reliability is exact string equality") {
    CHECK(label_reliability("mineral", "mineral resources") == 0);
    CHECK(label_reliability("soup", "soup") == 1);
    CHECK(label_reliability("", "x") == 0);
}

TEST_CASE("semantic consistency follows the provider geometry") {
    MockEmbeddingProvider mock(11);
    CHECK(semantic_consistency(mock, "environmental law", "environmental law") ==
          doctest::Approx(1.0));

    FixedProvider fixed({{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}});
    CHECK(semantic_consistency(fixed, "a", "b") == 0.0);
}

TEST_CASE("length conformity") {
    CHECK(length_conformity("vitamin", "b complex vitamin") == doctest::Approx(-10.0 / 24.0));
    CHECK(length_conformity("abcd", "wxyz") == 0.0);
    CHECK(length_conformity("ab", "abcd") == doctest::Approx(-2.0 / 6.0));
    CHECK(length_conformity("", "") == 0.0);
    CHECK(length_conformity("", "x") == -1.0);
}

TEST_CASE("token count consistency") {
    CHECK(token_count_consistency("over-exploitation of resources", "exploitation of resources") ==
          0.75);
    CHECK(token_count_consistency("soup", "soup") == 1.0);
    CHECK(token_count_consistency("alpha", "beta") == 0.0);
    CHECK(token_count_consistency("", "") == 0.0);
}

TEST_CASE("exact match earns the full 7") {
    MockEmbeddingProvider provider(0);
    auto r = total_reward(provider, "soup", "soup");
    CHECK(r.total == doctest::Approx(7.0));
    CHECK(r.label_reliability == 1.0);
    CHECK(r.semantic_consistency == doctest::Approx(1.0));
    CHECK(r.length_conformity == 0.0);
    CHECK(r.token_overlap == 1.0);
    CHECK(r.fuzzy_total == doctest::Approx(4.0));
}

TEST_CASE("worked component breakdown for (vitamin, b complex vitamin)") {
    MockEmbeddingProvider provider(0);
    auto r = total_reward(provider, "vitamin", "b complex vitamin");
    CHECK(r.label_reliability == 0.0);
    CHECK(r.length_conformity == doctest::Approx(-10.0 / 24.0));
    CHECK(r.token_overlap == doctest::Approx(1.0 / 3.0));
    CHECK(r.semantic_consistency ==
          semantic_consistency(provider, "vitamin", "b complex vitamin"));
    CHECK(r.total == doctest::Approx(r.label_reliability + r.semantic_consistency +
                                     r.length_conformity + r.token_overlap + r.fuzzy_total));
}

TEST_CASE("empty prediction bottoms out at R_c - 1") {
    MockEmbeddingProvider provider(0);
    auto r = total_reward(provider, "", "soup");
    CHECK(r.label_reliability == 0.0);
    CHECK(r.token_overlap == 0.0);
    CHECK(r.fuzzy_total == 0.0);
    CHECK(r.length_conformity == -1.0);
    CHECK(r.total == doctest::Approx(r.semantic_consistency - 1.0));
}

TEST_CASE("inputs are normalized before scoring") {
    MockEmbeddingProvider provider(0);
    auto r = total_reward(provider, "  Mineral  Resources ", "mineral resources");
    CHECK(r.label_reliability == 1.0);
    CHECK(r.total == doctest::Approx(7.0));
}

TEST_CASE("total stays in [-2, 7] and equals the component sum") {
    MockEmbeddingProvider provider(5);
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        auto r = total_reward(provider, random_phrase(rng), random_phrase(rng));
        CHECK(r.total >= -2.0);
        CHECK(r.total <= 7.0);
        CHECK(r.total == doctest::Approx(r.label_reliability + r.semantic_consistency +
                                         r.length_conformity + r.token_overlap + r.fuzzy_total));
        CHECK(r.fuzzy_total == doctest::Approx(r.fuzzy_edit + r.fuzzy_partial +
                                               r.fuzzy_token_sort + r.fuzzy_token_set));
    }
}
