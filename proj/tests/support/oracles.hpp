#pragma once

// Brute-force reference counts for tests. Everything here enumerates letter
// subsets directly and shares no code with the library's counting routines.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "aberrant/gf2.hpp"

namespace aberrant::oracle {

/// Word length pattern by enumerating all 2^m subsets; m <= 22.
std::vector<std::uint64_t> brute_wlp(std::span<const Column> columns);

/// Number of j-subsets of d1 whose product is a main effect of d1 or a
/// column of d2.
std::uint64_t brute_n(std::span<const Column> d1, std::span<const Column> d2, std::size_t j);

/// brute_n for j = 2..|d1|.
std::vector<std::uint64_t> brute_n_vector(std::span<const Column> d1, std::span<const Column> d2);

/// Defining words of treatment + blocking columns, split as (A, B) by the
/// number of treatment letters; the empty word is not counted.
struct BruteBlocked {
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;
};
BruteBlocked brute_blocked(std::span<const Column> treatment, std::span<const Column> blocking);

/// E_i^(p) over d2 u d3 by subset enumeration; [i][p].
std::vector<std::vector<std::uint64_t>> brute_e_profile(std::span<const Column> d2, std::span<const Column> d3);

/// Uniformly random `size`-subset of H_k, ascending.
std::vector<Column> random_columns(int k, std::size_t size, std::mt19937_64& rng);

/// Random partition of H_k into (d1, d2, d3) with the given sizes.
struct RandomSplit {
    std::vector<Column> d1;
    std::vector<Column> d2;
    std::vector<Column> d3;
};
RandomSplit random_split(int k, std::size_t m, std::size_t s, std::mt19937_64& rng);

/// All subsets of H_k of a given size, ascending encodings.
std::vector<std::vector<Column>> all_subsets(int k, std::size_t size);

}  // namespace aberrant::oracle
