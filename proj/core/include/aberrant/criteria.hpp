#pragma once

// Specialised word length patterns: blocked designs, designs whose fitted model
// includes some two-factor interactions, and the general major/minor framework
// where the fitted model is the main effects of D1 plus extra columns D2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aberrant/gf2.hpp"
#include "aberrant/wlp.hpp"

namespace aberrant {

/// True iff no fitted effect is aliased with the identity and no two fitted
/// effects are aliased with each other.
bool estimability_check(const FactorAssignment& assignment, std::span<const Word> gamma1);

// ---------------------------------------------------------------------------
// Blocked designs

/// Words made of blocking letters only: the 2^{m_1} - 1 block effects.
std::vector<Word> block_effects(std::span<const Letter> blocking_letters);

/// Columns of the block effects, indexed like block_effects().
std::vector<Column> block_effect_columns(std::span<const Column> blocking_columns);

/// Defining words split by blocking content; both vectors are indexed by the
/// number of treatment letters, 0..m. a[j] counts words without blocking
/// letters (the empty word is not counted), b[j] words with at least one.
struct BlockedCounts {
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;

    std::uint64_t A(std::ptrdiff_t j) const noexcept { return at(a, j); }
    std::uint64_t B(std::ptrdiff_t j) const noexcept { return at(b, j); }

    friend bool operator==(const BlockedCounts&, const BlockedCounts&) = default;

private:
    static std::uint64_t at(const std::vector<std::uint64_t>& v, std::ptrdiff_t j) noexcept {
        return (j < 0 || static_cast<std::size_t>(j) >= v.size()) ? 0 : v[static_cast<std::size_t>(j)];
    }
};

/// Classifies the defining relation of treatment + blocking letters without
/// checking estimability.
BlockedCounts blocked_counts(const FactorAssignment& assignment);

/// Treatment and blocking letters with A_1 = A_2 = B_0 = B_1 = 0.
class BlockedDesign {
public:
    explicit BlockedDesign(FactorAssignment assignment);

    const FactorAssignment& assignment() const noexcept { return assignment_; }
    std::size_t treatment_count() const noexcept { return assignment_.count(LetterKind::treatment); }
    std::size_t blocking_count() const noexcept { return assignment_.count(LetterKind::blocking); }
    const BlockedCounts& counts() const noexcept { return counts_; }

private:
    FactorAssignment assignment_;
    BlockedCounts counts_;
};

BlockedCounts blocked_counts(const BlockedDesign& design);

/// Fitted: treatment main effects and block effects; N_j for j-factor
/// treatment interactions, j = 2..m.
GeneralWlp blocked_n_main(const BlockedCounts& counts, std::size_t m);

/// Fitted: treatment main effects, all treatment 2fi's and block effects; N_j
/// for (j+1)-factor treatment interactions, j = 2..m-1.
GeneralWlp blocked_n_twofi(const BlockedCounts& counts, std::size_t m);

/// Two comparison vectors from the blocking literature, for side-by-side
/// reports. `interleaved` sequentially ranks (A_3, B_2, A_4, B_3, ..., A_{m+1},
/// B_m); `merged` is (3A_3 + B_2, A_4, 10A_5 + B_3, A_6).
struct RivalVectors {
    std::vector<std::uint64_t> interleaved;
    std::vector<std::uint64_t> merged;
};

RivalVectors rival_vectors(const BlockedCounts& counts, std::size_t m);

/// Groupings that the blocked closed forms describe, for the direct oracles.
EffectGrouping blocked_main_grouping(const FactorAssignment& assignment);
EffectGrouping blocked_twofi_grouping(const FactorAssignment& assignment);

// ---------------------------------------------------------------------------
// Important two-factor interactions

/// Unordered pairs of distinct treatment letters, no pair repeated.
class TwoFiRequirement {
public:
    TwoFiRequirement() = default;
    explicit TwoFiRequirement(std::vector<std::pair<Letter, Letter>> pairs);

    std::size_t size() const noexcept { return pairs_.size(); }
    std::span<const std::pair<Letter, Letter>> pairs() const noexcept { return pairs_; }
    std::vector<Word> words() const;

    friend bool operator==(const TwoFiRequirement&, const TwoFiRequirement&) = default;

private:
    std::vector<std::pair<Letter, Letter>> pairs_;
};

/// Multiset counts per word length j: a2[j] sums over pairs the length-j words
/// containing both letters, a1[j] exactly one, a0[j] neither. The empty word
/// is excluded.
struct TwoFiProfile {
    std::vector<std::uint64_t> a2;
    std::vector<std::uint64_t> a1;
    std::vector<std::uint64_t> a0;
};

TwoFiProfile twofi_profile(const FactorAssignment& assignment, const TwoFiRequirement& requirement);

/// N_j, j = 2..m, from the word length pattern and the profile.
GeneralWlp twofi_n_direct(const TwoFiProfile& profile, const Wlp& wlp, std::size_t m);

/// Fitted: mains + required 2fi's; g_2 = remaining 2fi's; g_j = j-factor
/// interactions for j >= 3.
EffectGrouping twofi_grouping(const FactorAssignment& assignment, const TwoFiRequirement& requirement);

/// Product column of each required pair, in requirement order.
std::vector<Column> twofi_columns(const FactorAssignment& assignment, const TwoFiRequirement& requirement);

// ---------------------------------------------------------------------------
// Major factors D1 plus S extra fitted columns D2

class AugmentedDesign {
public:
    /// d1 holds the major factors (treatment letters); d2 columns must be
    /// nonzero, distinct, and disjoint from d1.
    AugmentedDesign(FactorAssignment d1, std::vector<Column> d2);

    const FactorAssignment& d1() const noexcept { return d1_; }
    std::span<const Column> d2() const noexcept { return d2_; }
    std::size_t major_count() const noexcept { return d1_.size(); }
    int exponent() const noexcept { return d1_.exponent(); }

private:
    FactorAssignment d1_;
    std::vector<Column> d2_;
};

/// a: word length pattern of D1. b[j]: words with j letters from D1 and
/// exactly one from D2, j = 0..m.
struct AugmentedCounts {
    Wlp a;
    std::vector<std::uint64_t> b;
};

AugmentedCounts augmented_counts(const AugmentedDesign& design);

/// N_2 = 3A_3 + B_2 - S, then N_j = (j+1)A_{j+1} + (m-j+1)A_{j-1} + B_j.
GeneralWlp twofi_n_augmented(const Wlp& a, std::span<const std::uint64_t> b, std::size_t m, std::size_t s);

/// (j+1)A_{j+1}(D1) + (m-j+1)A_{j-1}(D1) + B_j(D1, D2).
std::uint64_t general_n(const AugmentedDesign& design, std::size_t j);

/// general_n for j = 2..m.
GeneralWlp general_n_vector(const AugmentedDesign& design);

/// general_n_vector straight from column lists, without building a design.
GeneralWlp general_n_vector(std::span<const Column> d1, std::span<const Column> d2, int k);

/// The D2 columns as auxiliary letters x1..xS next to the major letters, with
/// fitted group mains + auxiliaries and g_j = j-factor major interactions.
struct AugmentedOracleSetup {
    FactorAssignment assignment;
    EffectGrouping grouping;
};

AugmentedOracleSetup augmented_oracle_setup(const AugmentedDesign& design);

}  // namespace aberrant
