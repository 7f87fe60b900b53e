#include <gtest/gtest.h>

#include <random>

#include "aberrant/error.hpp"
#include "aberrant/search.hpp"
#include "aberrant/wlp.hpp"
#include "oracles.hpp"

using namespace aberrant;

namespace {

std::vector<std::uint64_t> vec(std::span<const std::uint64_t> s) { return {s.begin(), s.end()}; }

// 2^(6-1): 6 = 12345, resolution VI.
FactorAssignment half_fraction_six() {
    std::vector<Column> cols;
    for (int i = 1; i <= 5; ++i) cols.push_back(basis_column(i));
    cols.push_back(Column{0b11111});
    return assignment_from_columns(5, cols);
}

}  // namespace

TEST(Wlp, RequiresEmptyWord) {
    EXPECT_THROW(Wlp({0, 0, 1}), Error);
    EXPECT_THROW(Wlp(std::vector<std::uint64_t>{}), Error);
    const Wlp w({1, 0, 0, 4, 3});
    EXPECT_EQ(w.factor_count(), 4u);
    EXPECT_EQ(w[3], 4u);
    EXPECT_EQ(w[-1], 0u);
    EXPECT_EQ(w[9], 0u);
    EXPECT_EQ(w.total(), 8u);
    EXPECT_EQ(w.tail(3), (std::vector<std::uint64_t>{4, 3}));
}

TEST(Wlp, ResolutionNumerals) {
    EXPECT_EQ(resolution(Wlp({1, 0, 0, 4})).to_string(), "III");
    EXPECT_EQ(resolution(Wlp({1, 0, 0, 0, 1})).to_string(), "IV");
    EXPECT_EQ(resolution(Wlp({1, 0, 0, 0, 0, 0, 0, 0, 0, 1})).to_string(), "IX");
    EXPECT_TRUE(resolution(Wlp({1, 0, 0})).unbounded());
    EXPECT_EQ(resolution(Wlp({1, 0, 0})).to_string(), "unbounded");
}

TEST(Grouping, InteractionCounts) {
    const auto letters = half_fraction_six().letters();
    EXPECT_EQ(interactions(letters, 2).size(), 15u);
    EXPECT_EQ(interactions(letters, 6).size(), 1u);
    EXPECT_TRUE(interactions(letters, 7).empty());
    const EffectGrouping g = hierarchical_grouping(letters, 2);
    EXPECT_EQ(g.fitted().size(), 21u);
    EXPECT_EQ(g.group_count(), 5u);
    EXPECT_EQ(g.group(2).size(), 20u);
    EXPECT_THROW(hierarchical_grouping(letters, 0), Error);
}

TEST(Grouping, RejectsOverlapAndEmptyFitted) {
    EXPECT_THROW(EffectGrouping(std::vector<std::vector<Word>>{{}}), Error);
    EXPECT_THROW(EffectGrouping({{treatment_word({1})}, {treatment_word({1})}}), Error);
}

TEST(WordLengthPattern, SubgroupAndDynamicProgramAgree) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        const auto cols = oracle::random_columns(4, 4 + static_cast<std::size_t>(t) % 8, rng);
        if (gf2_rank(cols) != 4) continue;
        const FactorAssignment a = assignment_from_columns(4, cols);
        const Wlp direct = word_length_pattern(defining_subgroup(a), cols.size());
        EXPECT_EQ(direct, column_wlp(cols, 4));
        EXPECT_EQ(vec(direct.counts()), oracle::brute_wlp(cols));
    }
}

TEST(GeneralWlp, MainEffectsClosedFormOnHalfFraction) {
    const FactorAssignment a = half_fraction_six();
    const Wlp wlp = column_wlp(a.columns(), 5);
    const GeneralWlp closed = n_from_wlp_main(wlp, 6);
    const GeneralWlp oracle = general_wlp_oracle(a, hierarchical_grouping(a.letters(), 1));
    EXPECT_EQ(closed, oracle);
    // Only the 5-factor interactions are aliased with main effects.
    EXPECT_EQ(closed[5], 6u);
    EXPECT_EQ(closed[2], 0u);
}

TEST(GeneralWlp, SecondOrderClosedForm) {
    const FactorAssignment a = half_fraction_six();
    const Wlp wlp = column_wlp(a.columns(), 5);
    const GeneralWlp closed = n_from_wlp_q(wlp, 6, 2);
    const GeneralWlp oracle = general_wlp_oracle(a, hierarchical_grouping(a.letters(), 2));
    EXPECT_EQ(closed, oracle);
    // Each 4-factor interaction is aliased with the complementary 2fi.
    EXPECT_EQ(closed[3], 15u);
}

TEST(GeneralWlp, ClosedFormPreconditions) {
    EXPECT_THROW(n_from_wlp_main(Wlp({1, 0, 1, 0}), 3), Error);
    EXPECT_THROW(n_from_wlp_q(Wlp({1, 0, 0, 1, 0}), 4, 2), Error);
    EXPECT_THROW(n_from_wlp_q(Wlp({1, 0, 0}), 2, 0), Error);
}

TEST(GeneralWlp, BiasNormMatchesAliasCount) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const auto cols = oracle::random_columns(4, 5 + static_cast<std::size_t>(t) % 4, rng);
        if (gf2_rank(cols) != 4) continue;
        const FactorAssignment a = assignment_from_columns(4, cols);
        const EffectGrouping g = hierarchical_grouping(a.letters(), 1);
        const GeneralWlp n = general_wlp_oracle(a, g);
        for (std::size_t j = 2; j <= g.group_count(); ++j) EXPECT_EQ(bias_norm_oracle(a, g, j), n[j]);
    }
}

TEST(GeneralWlp, OracleRejectsNonEstimableModel) {
    const FactorAssignment a(2, {{treatment(1), Column{1}}, {treatment(2), Column{2}}, {treatment(3), Column{3}}});
    EXPECT_THROW(general_wlp_oracle(a, hierarchical_grouping(a.letters(), 2)), Error);
}

TEST(LexCompare, ZeroExtendsShorterVector) {
    const std::vector<std::uint64_t> a{0, 3}, b{0, 3, 0}, c{0, 3, 1}, d{1};
    EXPECT_EQ(lex_compare(a, b), std::strong_ordering::equal);
    EXPECT_EQ(lex_compare(a, c), std::strong_ordering::less);
    EXPECT_EQ(lex_compare(d, c), std::strong_ordering::greater);
}
