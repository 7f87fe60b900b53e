#pragma once

// Word length patterns and the general aberration criterion.
//
// For an effect grouping (g_1, ..., g_J), N_j counts the effects of g_j that are
// aliased with some effect of the fitted model g_1. Two routes compute it
// directly from a design (alias lookup, and the squared norm of the bias matrix
// built from +/-1 model matrices); the rest of this header holds closed forms in
// terms of the word length pattern.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aberrant/gf2.hpp"

namespace aberrant {

/// (A_0, A_1, ..., A_m). A_0 = 1 always (the empty word).
class Wlp {
public:
    Wlp() : counts_{1} {}
    explicit Wlp(std::vector<std::uint64_t> counts);

    std::size_t factor_count() const noexcept { return counts_.size() - 1; }
    /// A_i, zero outside [0, m].
    std::uint64_t operator[](std::ptrdiff_t i) const noexcept {
        return (i < 0 || static_cast<std::size_t>(i) >= counts_.size()) ? 0 : counts_[static_cast<std::size_t>(i)];
    }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept;

    /// (A_from, ..., A_m).
    std::vector<std::uint64_t> tail(std::size_t from) const;

    friend bool operator==(const Wlp&, const Wlp&) = default;

private:
    std::vector<std::uint64_t> counts_;
};

/// Smallest positive length with a defining word; empty for the full factorial.
struct Resolution {
    std::optional<unsigned> value;

    bool unbounded() const noexcept { return !value.has_value(); }
    std::string to_string() const;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// (N_2, ..., N_J).
class GeneralWlp {
public:
    GeneralWlp() = default;
    explicit GeneralWlp(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {}

    /// N_j for j >= 2, zero past the end.
    std::uint64_t operator[](std::size_t j) const noexcept {
        return (j < 2 || j - 2 >= counts_.size()) ? 0 : counts_[j - 2];
    }
    std::size_t size() const noexcept { return counts_.size(); }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    friend bool operator==(const GeneralWlp&, const GeneralWlp&) = default;

private:
    std::vector<std::uint64_t> counts_;
};

/// Ordered, pairwise-disjoint groups of effects; groups()[0] is the fitted
/// model and must be nonempty.
class EffectGrouping {
public:
    explicit EffectGrouping(std::vector<std::vector<Word>> groups);

    std::size_t group_count() const noexcept { return groups_.size(); }
    /// Group j for 1 <= j <= J.
    std::span<const Word> group(std::size_t j) const { return groups_.at(j - 1); }
    std::span<const Word> fitted() const { return groups_.front(); }

private:
    std::vector<std::vector<Word>> groups_;
};

/// All interactions of exactly `order` letters drawn from `letters`.
std::vector<Word> interactions(std::span<const Letter> letters, std::size_t order);

/// g_1 = all effects of order 1..q, g_j = (q - 1 + j)-factor interactions for
/// j = 2 .. m - q + 1.
EffectGrouping hierarchical_grouping(std::span<const Letter> letters, std::size_t q);

Wlp word_length_pattern(const DefiningSubgroup& subgroup, std::size_t m);

/// Same counts as word_length_pattern(defining_subgroup(...)), computed by a
/// subset-XOR dynamic program instead of expanding the subgroup.
Wlp column_wlp(std::span<const Column> columns, int k);

Resolution resolution(const Wlp& wlp);

GeneralWlp general_wlp_oracle(const FactorAssignment& assignment, const EffectGrouping& grouping);

/// ||C_j||^2 with C_j = n^-1 W_1^T W_j.
std::uint64_t bias_norm_oracle(const FactorAssignment& assignment, const EffectGrouping& grouping, std::size_t j);

/// Main effects fitted, g_j = j-factor interactions: N_j for j = 2..m.
GeneralWlp n_from_wlp_main(const Wlp& wlp, std::size_t m);

/// Effects up to order q fitted, g_j = (q - 1 + j)-factor interactions:
/// N_j for j = 2 .. m - q + 1. Needs A_i = 0 for 1 <= i <= 2q.
GeneralWlp n_from_wlp_q(const Wlp& wlp, std::size_t m, std::size_t q);

/// Lexicographic order with the shorter vector zero-extended; `less` means
/// strictly better.
std::strong_ordering lex_compare(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y);
std::strong_ordering lex_compare(const GeneralWlp& x, const GeneralWlp& y);

}  // namespace aberrant
