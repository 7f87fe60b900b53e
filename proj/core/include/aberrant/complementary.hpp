#pragma once

// Complementary design theory.
//
// H_k is split into D1 (major factors), D2 (extra fitted columns) and D3 (the
// rest). The word length pattern of (D1, D2) is recovered from counts over the
// usually much smaller D2 and D3, using Krawtchouk-polynomial coefficients that
// relate a column set to its complement. Arithmetic is exact: coefficients carry
// a 2^-k term, and every final count is checked to be a nonnegative integer.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aberrant/criteria.hpp"
#include "aberrant/gf2.hpp"
#include "aberrant/wlp.hpp"

namespace aberrant {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(top, r) = top (top-1) ... (top-r+1) / r!, defined for any integer top;
/// zero for r < 0.
Integer generalized_binomial(const Integer& top, std::int64_t r);

struct KrawtchoukQuery {
    std::int64_t j = 0;
    std::int64_t x = 0;
    std::int64_t m = 0;
};

/// P_j(x; m) = sum_s (-1)^s C(x, s) C(m - x, j - s), with generalized
/// binomials so that x > m is allowed.
Integer krawtchouk(const KrawtchoukQuery& q);

/// c_m(i, j), the weight of A_i(complement) in A_j(D) for a design D of m
/// columns inside H_k.
Rational lemma2_coefficient(std::int64_t m, int k, std::int64_t i, std::int64_t j);

/// Table of c_m(i, j) for 0 <= i <= j <= max_j, stored as 2^k c_m(i, j) (always
/// an integer).
class ComplementCoefficients {
public:
    ComplementCoefficients(std::int64_t m, int k, std::size_t max_j);

    std::int64_t m() const noexcept { return m_; }
    int exponent() const noexcept { return k_; }
    std::size_t max_j() const noexcept { return max_j_; }

    /// 2^k c_m(i, j); zero for i > j.
    const Integer& scaled(std::size_t i, std::size_t j) const;
    Rational operator()(std::size_t i, std::size_t j) const;

private:
    std::int64_t m_;
    int k_;
    std::size_t max_j_;
    std::vector<Integer> scaled_;
};

/// Word length pattern of D (m columns) from that of its complement in H_k.
Wlp complement_wlp(const Wlp& wlp_bar, std::size_t m, int k);
Wlp complement_wlp(const Wlp& wlp_bar, const ComplementCoefficients& coefficients);

/// A partition (D1, D2, D3) of the columns of H_k.
class SplitTriple {
public:
    SplitTriple(int k, std::vector<Column> d1, std::vector<Column> d2, std::vector<Column> d3);

    /// D3 = H_k minus D1 and D2.
    static SplitTriple from_d1_d2(int k, std::vector<Column> d1, std::vector<Column> d2);

    int exponent() const noexcept { return k_; }
    std::span<const Column> d1() const noexcept { return d1_; }
    std::span<const Column> d2() const noexcept { return d2_; }
    std::span<const Column> d3() const noexcept { return d3_; }
    std::size_t m() const noexcept { return d1_.size(); }
    std::size_t s() const noexcept { return d2_.size(); }
    std::size_t m3() const noexcept { return d3_.size(); }

    friend bool operator==(const SplitTriple&, const SplitTriple&) = default;

private:
    int k_;
    std::vector<Column> d1_;
    std::vector<Column> d2_;
    std::vector<Column> d3_;
};

/// E_i^(p): defining words of the column set D2 u D3 by length i and number p
/// of D2 letters. Column p = 0 is kept as well: it counts the words of D3 alone
/// (and the empty word at i = 0).
class EProfile {
public:
    EProfile(std::size_t max_length, std::size_t d2_size);

    std::size_t max_length() const noexcept { return max_length_; }
    std::size_t d2_size() const noexcept { return d2_size_; }

    std::uint64_t at(std::size_t i, std::size_t p) const noexcept {
        return (i > max_length_ || p > d2_size_) ? 0 : counts_[i * (d2_size_ + 1) + p];
    }
    std::uint64_t& cell(std::size_t i, std::size_t p) { return counts_[i * (d2_size_ + 1) + p]; }

    /// E_i = sum_{p >= 1} p E_i^(p).
    std::uint64_t aggregate(std::size_t i) const noexcept;
    /// A_i(D2 u D3) = sum_p E_i^(p).
    std::uint64_t union_count(std::size_t i) const noexcept;
    /// A_i(D3) = E_i^(0).
    std::uint64_t d3_count(std::size_t i) const noexcept { return at(i, 0); }

    EProfile& operator+=(const EProfile& other);
    friend bool operator==(const EProfile&, const EProfile&) = default;

private:
    std::size_t max_length_;
    std::size_t d2_size_;
    std::vector<std::uint64_t> counts_;
};

inline constexpr std::size_t kMaxProfileColumns = 24;

/// Enumerates the defining words of D2 u D3. The enumeration may be split into
/// `partitions` contiguous ranges run on separate threads; the merged tallies do
/// not depend on the split.
EProfile e_profile(const SplitTriple& split, unsigned partitions = 1);
EProfile e_profile(std::span<const Column> d2, std::span<const Column> d3, int k, unsigned partitions = 1);

/// Evaluates N_j(D1, D2) from (D2, D3) counts, for fixed m, S and k.
class Theorem2Evaluator {
public:
    Theorem2Evaluator(std::size_t m, std::size_t s, int k);

    std::size_t m() const noexcept { return m_; }
    std::size_t s() const noexcept { return s_; }

    Rational evaluate_exact(const EProfile& profile, std::size_t j) const;
    /// Throws identity_violation unless the result is a nonnegative integer.
    std::uint64_t evaluate(const EProfile& profile, std::size_t j) const;
    /// j = 2..m.
    GeneralWlp evaluate_all(const EProfile& profile) const;

private:
    std::size_t m_;
    std::size_t s_;
    int k_;
    ComplementCoefficients cm_;
    ComplementCoefficients cm1_;
    // Machine-word copies of the scaled tables, used when every entry fits.
    bool fast_ = false;
    std::vector<std::int64_t> fast_cm_;
    std::vector<std::int64_t> fast_cm1_;
};

std::uint64_t theorem2_n(const SplitTriple& split, std::size_t j);
GeneralWlp theorem2_n_vector(const SplitTriple& split);

/// Proof-level identity for one D2 letter d: A_j(D1) + B_{j-1}(d, D1) equals
/// T_j(d, D2, D3) = sum_i c_{m+1}(i, j) A_i((D2 - d) u D3).
struct PerLetterCheck {
    Column d;
    std::uint64_t a_j_d1 = 0;
    std::uint64_t b_j_minus_1 = 0;
    Rational t_j;

    bool holds() const { return Rational(a_j_d1 + b_j_minus_1) == t_j; }
};

std::vector<PerLetterCheck> theorem2_per_letter(const SplitTriple& split, std::size_t j);

/// g = 3 A_3(D3) + 2 E_3^(1) + E_3^(2); maximising g minimises N_2.
std::uint64_t g_value(const EProfile& profile);
std::uint64_t g_value(const SplitTriple& split);

/// (i) C(m3, 2)  (ii) m2 m3 / 2  (iii) m3 (m2 + m3 - 1) / 2 = (i) + (ii).
struct Lemma3Bounds {
    std::uint64_t within_d3 = 0;
    Rational across = 0;
    Rational total = 0;
};

Lemma3Bounds lemma3_bounds(std::size_t m2, std::size_t m3);

struct BlockRequirement {
    std::size_t blocking_factors = 0;
};

using WeakRequirement = std::variant<BlockRequirement, TwoFiRequirement>;

struct WeakConstruction {
    SplitTriple split;
    /// Treatment letters 1..m on D1; for blocks, also blocking letters b_i on a_i.
    FactorAssignment assignment;
    int r = 0;
    /// D2 u D3 = H_r exactly, i.e. m = 2^k - 2^r.
    bool spans_subspace = false;
};

/// D1 drawn from H_k minus H_r, D2 inside H_r. Major factors take the
/// lexicographically smallest feasible columns.
WeakConstruction construct_weak(int k, int r, std::size_t m, const WeakRequirement& requirement);

}  // namespace aberrant
