#include <gtest/gtest.h>

#include <random>

#include "aberrant/complementary.hpp"
#include "aberrant/error.hpp"
#include "aberrant/wlp.hpp"
#include "oracles.hpp"

using namespace aberrant;

namespace {

std::vector<std::uint64_t> vec(std::span<const std::uint64_t> s) { return {s.begin(), s.end()}; }

std::vector<Column> complement_of(int k, std::span<const Column> d) {
    std::vector<Column> out;
    for (Column c : saturated_columns(k))
        if (std::find(d.begin(), d.end(), c) == d.end()) out.push_back(c);
    return out;
}

TwoFiRequirement example2_pairs() {
    return TwoFiRequirement({{treatment(1), treatment(2)},
                             {treatment(1), treatment(3)},
                             {treatment(2), treatment(4)},
                             {treatment(3), treatment(5)}});
}

}  // namespace

TEST(Binomial, GeneralizedTop) {
    EXPECT_EQ(generalized_binomial(5, 2), 10);
    EXPECT_EQ(generalized_binomial(2, 5), 0);
    EXPECT_EQ(generalized_binomial(-1, 3), -1);
    EXPECT_EQ(generalized_binomial(-3, 2), 6);
    EXPECT_EQ(generalized_binomial(7, 0), 1);
    EXPECT_EQ(generalized_binomial(7, -1), 0);
}

TEST(Krawtchouk, SmallValues) {
    EXPECT_EQ(krawtchouk({.j = 0, .x = 3, .m = 5}), 1);
    EXPECT_EQ(krawtchouk({.j = 1, .x = 2, .m = 5}), 1);    // m - 2x
    EXPECT_EQ(krawtchouk({.j = 2, .x = 0, .m = 6}), 15);
    EXPECT_EQ(krawtchouk({.j = 1, .x = 7, .m = 5}), -9);
}

TEST(ComplementWlp, MatchesBruteForceOnAllSmallSubsets) {
    for (std::size_t size = 3; size <= 12; ++size) {
        for (const auto& d : oracle::all_subsets(4, size)) {
            const auto bar = complement_of(4, d);
            const Wlp wlp_bar(oracle::brute_wlp(bar));
            EXPECT_EQ(vec(complement_wlp(wlp_bar, d.size(), 4).counts()), oracle::brute_wlp(d));
        }
    }
}

TEST(ComplementWlp, ScaledCoefficientsAreIntegral) {
    const ComplementCoefficients c(9, 4, 9);
    for (std::size_t j = 0; j <= 9; ++j)
        for (std::size_t i = 0; i <= j; ++i) EXPECT_EQ(c(i, j) * 16, Rational(c.scaled(i, j)));
    EXPECT_EQ(c.scaled(5, 2), 0);
}

TEST(SplitTriple, RequiresPartition) {
    EXPECT_THROW(SplitTriple(3, {Column{1}}, {Column{1}}, {}), Error);
    EXPECT_THROW(SplitTriple(3, {Column{1}}, {Column{2}}, {Column{3}}), Error);
    const SplitTriple t = SplitTriple::from_d1_d2(3, {Column{1}, Column{2}, Column{4}}, {Column{3}});
    EXPECT_EQ(t.m3(), 3u);
}

TEST(EProfile, MatchesBruteForceForAnyPartitioning) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        const int k = 4 + t % 2;
        const auto s = oracle::random_split(k, (std::size_t{1} << k) - 7, 1 + static_cast<std::size_t>(t) % 3, rng);
        const SplitTriple split(k, s.d1, s.d2, s.d3);
        const EProfile one = e_profile(split, 1);
        const auto brute = oracle::brute_e_profile(s.d2, s.d3);
        for (std::size_t i = 0; i < brute.size(); ++i)
            for (std::size_t p = 0; p < brute[i].size(); ++p) EXPECT_EQ(one.at(i, p), brute[i][p]) << i << "," << p;
        EXPECT_EQ(e_profile(split, 3), one);
        EXPECT_EQ(e_profile(split, 64), one);
    }
}

TEST(Theorem2, MatchesDirectCounts) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 60; ++t) {
        const int k = 4 + t % 2;
        const std::size_t m = (std::size_t{1} << k) - 4 - static_cast<std::size_t>(t) % 5;
        const auto s = oracle::random_split(k, m, 1 + static_cast<std::size_t>(t) % 3, rng);
        const SplitTriple split(k, s.d1, s.d2, s.d3);
        const GeneralWlp via = theorem2_n_vector(split);
        EXPECT_EQ(via, general_n_vector(s.d1, s.d2, k));
        if (k == 4) EXPECT_EQ(vec(via.counts()), oracle::brute_n_vector(s.d1, s.d2));
        for (std::size_t j = 2; j <= 4; ++j)
            for (const PerLetterCheck& c : theorem2_per_letter(split, j)) EXPECT_TRUE(c.holds());
    }
}

TEST(Theorem2, EmptyExtraSetReducesToComplementWlp) {
    std::mt19937_64 rng(17);
    const auto s = oracle::random_split(5, 25, 0, rng);
    const SplitTriple split(5, s.d1, s.d2, s.d3);
    EXPECT_EQ(theorem2_n_vector(split), general_n_vector(s.d1, s.d2, 5));
    EXPECT_EQ(theorem2_n_vector(split), n_from_wlp_main(column_wlp(s.d1, 5), 25));
}

TEST(WeakCriterion, GAndN2SumIsConstantPerSize) {
    std::mt19937_64 rng(19);
    for (std::size_t s = 1; s <= 3; ++s) {
        std::optional<std::uint64_t> sum;
        for (int t = 0; t < 25; ++t) {
            const auto r = oracle::random_split(4, 9, s, rng);
            const SplitTriple split(4, r.d1, r.d2, r.d3);
            const std::uint64_t total = g_value(split) + oracle::brute_n(r.d1, r.d2, 2);
            if (!sum) sum = total;
            EXPECT_EQ(total, *sum);
        }
    }
}

TEST(WeakCriterion, Lemma3BoundValues) {
    const Lemma3Bounds b = lemma3_bounds(4, 3);
    EXPECT_EQ(b.within_d3, 3u);
    EXPECT_EQ(b.across, Rational(6));
    EXPECT_EQ(b.total, Rational(9));
}

TEST(WeakCriterion, ConstructionForFourInteractions) {
    const WeakConstruction w = construct_weak(4, 3, 8, example2_pairs());
    EXPECT_TRUE(w.spans_subspace);
    const std::vector<Column> expected{Column{0b001}, Column{0b010}, Column{0b101}, Column{0b111}};
    std::vector<Column> d2(w.split.d2().begin(), w.split.d2().end());
    std::sort(d2.begin(), d2.end());
    auto sorted_expected = expected;
    std::sort(sorted_expected.begin(), sorted_expected.end());
    EXPECT_EQ(d2, sorted_expected);
    EXPECT_EQ(g_value(w.split), 9u);
    // N_2 counts the four required interactions as aliased with themselves.
    EXPECT_EQ(theorem2_n(w.split, 2), 16u);
}

TEST(WeakCriterion, InfeasibleSubspaceIsReported) {
    try {
        construct_weak(4, 2, 8, example2_pairs());
        FAIL() << "expected infeasible";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible);
    }
}

TEST(WeakCriterion, BlockConstructionPutsBlocksOnBasis) {
    const WeakConstruction w = construct_weak(4, 2, 12, BlockRequirement{2});
    EXPECT_EQ(w.split.s(), 3u);
    EXPECT_EQ(w.assignment.count(LetterKind::blocking), 2u);
}
