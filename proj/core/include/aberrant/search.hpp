#pragma once

// Exhaustive search over designs of H_k.
//
// A candidate is a pair (D1, D2): D1 holds the major factors, D2 the extra
// fitted columns (empty for plain designs, block effects for blocked designs,
// required interaction columns for 2fi designs). Direct search walks D1 sets;
// complement search walks D3 sets and scores (D2, D3) through Theorem 2.
// Searches cover k <= 6.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "aberrant/criteria.hpp"
#include "aberrant/gf2.hpp"

namespace aberrant {

inline constexpr int kMaxSearchExponent = 6;

struct CandidateDesign {
    /// Major factor columns in factor order.
    std::vector<Column> d1;
    /// Extra fitted columns, ascending.
    std::vector<Column> d2;

    friend bool operator==(const CandidateDesign&, const CandidateDesign&) = default;
};

/// Sort key for reporting: (sorted D1, D2, D1 in factor order).
bool candidate_less(const CandidateDesign& a, const CandidateDesign& b);

struct PlainVariant {};
struct BlockedVariant {
    std::size_t m1 = 1;
};
struct TwoFiVariant {
    /// 1-based factor pairs.
    std::vector<std::pair<unsigned, unsigned>> pairs;
};
struct GeneralVariant {
    std::size_t s = 0;
};

using SearchVariant = std::variant<PlainVariant, BlockedVariant, TwoFiVariant, GeneralVariant>;

/// Number of extra fitted columns the variant adds.
std::size_t extra_columns(const SearchVariant& variant);

enum class Criterion {
    /// Sequential minimisation of (N_2, ..., N_m).
    sequential,
    /// Sequential minimisation of (A_3, ..., A_m) of D1.
    minimum_aberration,
    /// N_2 alone.
    weak,
};

struct SearchLimits {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    double max_seconds = std::numeric_limits<double>::infinity();
    unsigned threads = 1;
    bool symmetry_pruning = false;
};

struct SearchSpec {
    int k = 0;
    std::size_t m = 0;
    SearchVariant variant = PlainVariant{};
    Criterion criterion = Criterion::sequential;
    SearchLimits limits;
};

void validate(const SearchSpec& spec);

struct SearchResult {
    /// All optima found, sorted by candidate_less.
    std::vector<CandidateDesign> best;
    std::vector<std::uint64_t> objective;
    std::uint64_t explored = 0;
    bool exhaustive = true;
    /// Set by weak_search.
    std::optional<std::uint64_t> g;
};

/// m-subsets of the column indices {0, ..., n-1} in lexicographic order,
/// starting from a given rank.
class SubsetCursor {
public:
    SubsetCursor(std::size_t n, std::size_t m, std::uint64_t rank = 0);

    std::span<const std::size_t> current() const noexcept { return idx_; }
    /// Advances; false once past the last subset.
    bool next();

private:
    std::size_t n_;
    std::vector<std::size_t> idx_;
};

/// True iff the sorted column set is lexicographically smallest among its
/// images under permutations of the basis letters a_1..a_k.
class BasisPermutationFilter {
public:
    explicit BasisPermutationFilter(int k);
    bool is_canonical(std::span<const Column> sorted_columns) const;

private:
    int k_;
    std::vector<std::vector<std::uint32_t>> images_;
};

/// m-subsets of H_k of GF(2) rank min(m, k), in lexicographic order of
/// encodings; with pruning, only basis-permutation-canonical subsets.
std::vector<std::vector<Column>> enumerate_designs(int k, std::size_t m, bool symmetry_pruning = false);

using Objective = std::function<std::vector<std::uint64_t>(const CandidateDesign&)>;

/// All candidates achieving the lexicographic minimum of the objective.
SearchResult minimize_sequential(std::span<const CandidateDesign> candidates, const Objective& objective);

/// Direct search: D1 from enumerate_designs, D2 per variant.
SearchResult direct_search(const SearchSpec& spec);

/// Enumerates D3, then D2 within H_k minus D3, scoring via Theorem 2.
SearchResult complement_search(const SearchSpec& spec);

/// Maximises g(D2, D3) over the same splits as complement_search.
SearchResult weak_search(const SearchSpec& spec);

/// Objective of one candidate under the spec, from closed forms.
std::vector<std::uint64_t> closed_form_objective(const SearchSpec& spec, const CandidateDesign& candidate);

/// The same objective recomputed by general_wlp_oracle on explicit letters.
std::vector<std::uint64_t> oracle_objective(const SearchSpec& spec, const CandidateDesign& candidate);

/// Treatment letters 1..m on D1 plus, for blocked variants, blocking letters
/// b1..b_{m1} on a basis of D2.
FactorAssignment candidate_assignment(const SearchSpec& spec, const CandidateDesign& candidate);

}  // namespace aberrant
