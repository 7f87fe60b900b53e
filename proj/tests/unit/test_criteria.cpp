#include <gtest/gtest.h>

#include <random>

#include "aberrant/criteria.hpp"
#include "aberrant/error.hpp"
#include "oracles.hpp"

using namespace aberrant;

namespace {

std::vector<std::uint64_t> vec(std::span<const std::uint64_t> s) { return {s.begin(), s.end()}; }

const Column a1 = basis_column(1), a2 = basis_column(2), a3 = basis_column(3), a4 = basis_column(4);

FactorAssignment nine_factors(Column f8, Column block) {
    return FactorAssignment(4, {{treatment(1), a1},
                                {treatment(2), a2},
                                {treatment(3), a3},
                                {treatment(4), a4},
                                {treatment(5), a1 ^ a2 ^ a3},
                                {treatment(6), a1 ^ a2 ^ a4},
                                {treatment(7), a1 ^ a3 ^ a4},
                                {treatment(8), f8},
                                {treatment(9), a1 ^ a2},
                                {blocking(1), block}});
}

FactorAssignment example1_d1() { return nine_factors(a2 ^ a3 ^ a4, a1 ^ a3); }
FactorAssignment example1_d2() { return nine_factors(a1 ^ a3, a2 ^ a3 ^ a4); }

TwoFiRequirement pairs(std::initializer_list<std::pair<unsigned, unsigned>> list) {
    std::vector<std::pair<Letter, Letter>> out;
    for (auto [x, y] : list) out.emplace_back(treatment(x), treatment(y));
    return TwoFiRequirement(std::move(out));
}

}  // namespace

TEST(Blocked, ExampleOneCounts) {
    const BlockedDesign d1(example1_d1());
    const BlockedDesign d2(example1_d2());
    EXPECT_EQ(d1.counts().A(3), 4u);
    EXPECT_EQ(d1.counts().B(2), 4u);
    EXPECT_EQ(d2.counts().A(3), 6u);
    EXPECT_EQ(d2.counts().B(2), 2u);
    EXPECT_EQ(blocked_n_main(d1.counts(), 9)[2], 16u);
    EXPECT_EQ(blocked_n_main(d2.counts(), 9)[2], 20u);
}

TEST(Blocked, ClosedFormMatchesAliasCount) {
    for (const auto& a : {example1_d1(), example1_d2()}) {
        const BlockedDesign d(a);
        EXPECT_EQ(blocked_n_main(d.counts(), 9), general_wlp_oracle(a, blocked_main_grouping(a)));
    }
}

TEST(Blocked, CountsMatchBruteForce) {
    const FactorAssignment a = example1_d1();
    const auto brute = oracle::brute_blocked(a.columns_of(LetterKind::treatment), a.columns_of(LetterKind::blocking));
    const BlockedCounts c = blocked_counts(a);
    EXPECT_EQ(c.a, brute.a);
    EXPECT_EQ(c.b, brute.b);
}

TEST(Blocked, RejectsNonEstimableBlocking) {
    // Block generator on the column of factor 9.
    EXPECT_THROW(BlockedDesign(nine_factors(a2 ^ a3 ^ a4, a1 ^ a2)), Error);
    const FactorAssignment aux(3, {{treatment(1), Column{1}}, {auxiliary(1), Column{2}}});
    EXPECT_THROW(BlockedDesign{aux}, Error);
}

TEST(Blocked, TwoFactorInteractionForm) {
    // 2^(6-1) with 6 = 12345 in two blocks, b = 123: resolution VI, B_2 = 0 ...
    std::vector<std::pair<Letter, Column>> entries;
    for (unsigned i = 1; i <= 5; ++i) entries.emplace_back(treatment(i), basis_column(static_cast<int>(i)));
    entries.emplace_back(treatment(6), Column{0b11111});
    entries.emplace_back(blocking(1), Column{0b00111});
    const FactorAssignment a(5, entries);
    const BlockedDesign d(a);
    EXPECT_EQ(blocked_n_twofi(d.counts(), 6), general_wlp_oracle(a, blocked_twofi_grouping(a)));
}

TEST(Blocked, RivalVectorsLayout) {
    const BlockedDesign d(example1_d1());
    const RivalVectors r = rival_vectors(d.counts(), 9);
    ASSERT_GE(r.interleaved.size(), 2u);
    EXPECT_EQ(r.interleaved[0], 4u);  // A_3
    EXPECT_EQ(r.interleaved[1], 4u);  // B_2
    EXPECT_EQ(r.merged[0], 16u);      // 3 A_3 + B_2
}

TEST(TwoFi, RequirementValidation) {
    EXPECT_THROW(pairs({{1, 1}}), Error);
    EXPECT_THROW(pairs({{1, 2}, {2, 1}}), Error);
    EXPECT_THROW(TwoFiRequirement({{treatment(1), blocking(1)}}), Error);
    EXPECT_EQ(pairs({{1, 2}, {3, 4}}).words().size(), 2u);
}

TEST(TwoFi, ProfileAndAugmentedFormsAgreeWithAliasCount) {
    std::mt19937_64 rng(3);
    const TwoFiRequirement req = pairs({{1, 2}, {1, 3}});
    int checked = 0;
    for (int t = 0; t < 300 && checked < 40; ++t) {
        const auto cols = oracle::random_columns(5, 7, rng);
        if (gf2_rank(cols) != 5) continue;
        const FactorAssignment a = assignment_from_columns(5, cols);
        const Wlp wlp = column_wlp(cols, 5);
        const auto d2 = twofi_columns(a, req);
        GeneralWlp oracle;
        try {
            oracle = general_wlp_oracle(a, twofi_grouping(a, req));
        } catch (const Error&) {
            continue;
        }
        const AugmentedCounts c = augmented_counts(AugmentedDesign(a, d2));
        EXPECT_EQ(twofi_n_augmented(c.a, c.b, 7, d2.size()), oracle);
        try {
            EXPECT_EQ(twofi_n_direct(twofi_profile(a, req), wlp, 7), oracle);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::precondition);
        }
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(Augmented, RejectsOverlapAndDuplicates) {
    const FactorAssignment a = assignment_from_columns(3, std::vector<Column>{Column{1}, Column{2}, Column{4}});
    EXPECT_THROW(AugmentedDesign(a, {Column{1}}), Error);
    EXPECT_THROW(AugmentedDesign(a, {Column{3}, Column{3}}), Error);
    EXPECT_THROW(AugmentedDesign(a, {kIdentity}), Error);
    EXPECT_NO_THROW(AugmentedDesign(a, {Column{3}}));
}

TEST(Augmented, GeneralNMatchesBruteForceAndOracle) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        const auto split = oracle::random_split(4, 6, 1 + static_cast<std::size_t>(t) % 4, rng);
        if (gf2_rank(split.d1) != 4) continue;
        const AugmentedDesign design(assignment_from_columns(4, split.d1), split.d2);
        const GeneralWlp n = general_n_vector(design);
        EXPECT_EQ(vec(n.counts()), oracle::brute_n_vector(split.d1, split.d2));
        const AugmentedOracleSetup setup = augmented_oracle_setup(design);
        EXPECT_EQ(n, general_wlp_oracle(setup.assignment, setup.grouping));
        EXPECT_EQ(general_n(design, 99), 0u);
    }
}

TEST(Blocked, TwoFactorInteractionFormOnSymbolicCounts) {
    BlockedCounts c;
    c.a = {1, 0, 0, 0, 0, 1, 1};
    c.b = {0, 0, 0, 0, 2, 0, 0};
    const GeneralWlp n = blocked_n_twofi(c, 6);
    EXPECT_EQ(n[2], 10u);  // 10 A_5 + B_3
    EXPECT_EQ(n[3], 22u);  // 15 A_6 + 5 A_5 + B_4
    c.a[4] = 1;
    EXPECT_THROW(blocked_n_twofi(c, 6), Error);
}

TEST(Blocked, ZeroCountsGiveZeroVectors) {
    BlockedCounts c;
    c.a = std::vector<std::uint64_t>(8, 0);
    c.a[0] = 1;
    c.b = std::vector<std::uint64_t>(8, 0);
    const GeneralWlp n = blocked_n_main(c, 7);
    for (auto v : n.counts()) EXPECT_EQ(v, 0u);
    const RivalVectors r = rival_vectors(c, 7);
    for (auto v : r.interleaved) EXPECT_EQ(v, 0u);
    for (auto v : r.merged) EXPECT_EQ(v, 0u);
}

TEST(TwoFi, ProfileCountsWordsOncePerPair) {
    std::vector<Column> cols;
    for (int i = 1; i <= 4; ++i) cols.push_back(basis_column(i));
    cols.push_back(Column{0b1111});
    const FactorAssignment a = assignment_from_columns(4, cols);
    const TwoFiProfile one = twofi_profile(a, pairs({{1, 2}}));
    EXPECT_EQ(one.a2.at(5), 1u);
    const TwoFiProfile two = twofi_profile(a, pairs({{1, 2}, {3, 4}}));
    EXPECT_EQ(two.a2.at(5), 2u);
    const TwoFiProfile none = twofi_profile(a, TwoFiRequirement{});
    for (auto v : none.a2) EXPECT_EQ(v, 0u);
}
