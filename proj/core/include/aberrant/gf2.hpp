#pragma once

// Exact GF(2) algebra for two-level regular designs.
//
// A column of the saturated design H_k is a nonzero vector of GF(2)^k stored as
// an integer whose binary digits are coordinates over the basis a_1 ... a_k
// (a_i has encoding 1 << (i - 1)). Column products are XORs; the zero vector is
// the identity column I and only appears as the result of a product.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aberrant {

inline constexpr int kMaxExponent = 16;
inline constexpr std::size_t kMaxLetters = 64;

struct Column {
    std::uint32_t bits = 0;

    constexpr bool is_identity() const noexcept { return bits == 0; }

    friend constexpr Column operator^(Column a, Column b) noexcept { return Column{a.bits ^ b.bits}; }
    constexpr Column& operator^=(Column other) noexcept {
        bits ^= other.bits;
        return *this;
    }
    friend constexpr auto operator<=>(const Column&, const Column&) = default;
};

inline constexpr Column kIdentity{0};

/// a_i for 1 <= i <= kMaxExponent.
constexpr Column basis_column(int i) noexcept { return Column{std::uint32_t{1} << (i - 1)}; }

/// Renders a column as its product of basis generators, e.g. "a1a3"; the
/// identity renders as "I".
std::string to_string(Column c);

/// All 2^k - 1 columns of H_k in increasing encoding.
std::vector<Column> saturated_columns(int k);

int gf2_rank(std::span<const Column> columns);

void check_exponent(int k);

enum class LetterKind : std::uint8_t { treatment, blocking, auxiliary };

struct Letter {
    LetterKind kind = LetterKind::treatment;
    unsigned index = 0;

    friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

constexpr Letter treatment(unsigned i) noexcept { return {LetterKind::treatment, i}; }
constexpr Letter blocking(unsigned i) noexcept { return {LetterKind::blocking, i}; }
constexpr Letter auxiliary(unsigned i) noexcept { return {LetterKind::auxiliary, i}; }

/// "3" for treatment factors, "b1" for blocking factors, "x1" for auxiliary.
std::string to_string(Letter letter);

/// A set of letters. Kept sorted so equality is structural.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters);
    explicit Word(std::vector<Letter> letters);

    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    bool contains(Letter letter) const;
    std::size_t count(LetterKind kind) const;
    std::span<const Letter> letters() const noexcept { return letters_; }

    friend Word symmetric_difference(const Word& a, const Word& b);

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Shorthand for a word of treatment letters, e.g. treatment_word({1, 2, 3}).
Word treatment_word(std::initializer_list<unsigned> indices);

/// Orders words by length first, then lexicographically.
bool shortlex_less(const Word& a, const Word& b);

std::string to_string(const Word& word);

/// Map from letters to nonzero columns of H_k. Distinct letters never share a
/// column, since that would alias two main effects.
class FactorAssignment {
public:
    FactorAssignment() = default;
    FactorAssignment(int k, std::vector<std::pair<Letter, Column>> entries);

    int exponent() const noexcept { return k_; }
    std::size_t runs() const noexcept { return std::size_t{1} << k_; }
    std::size_t size() const noexcept { return letters_.size(); }
    std::size_t count(LetterKind kind) const;

    std::span<const Letter> letters() const noexcept { return letters_; }
    std::span<const Column> columns() const noexcept { return columns_; }

    std::optional<std::size_t> position(Letter letter) const;
    Column column(Letter letter) const;

    /// Letters of one kind with their columns, in the original order.
    FactorAssignment restricted(LetterKind kind) const;
    std::vector<Letter> letters_of(LetterKind kind) const;
    std::vector<Column> columns_of(LetterKind kind) const;

    /// Bit i of the mask stands for letters()[i].
    std::uint64_t mask_of(const Word& word) const;
    Word word_of(std::uint64_t mask) const;

    friend bool operator==(const FactorAssignment&, const FactorAssignment&) = default;

private:
    int k_ = 1;
    std::vector<Letter> letters_;
    std::vector<Column> columns_;
};

/// Treatment letters 1..m on the given columns.
FactorAssignment assignment_from_columns(int k, std::span<const Column> columns);

Column word_column(const FactorAssignment& assignment, const Word& word);

bool is_aliased(const FactorAssignment& assignment, const Word& e1, const Word& e2);

/// Dense matrix of +1/-1 entries, row-major.
class SignMatrix {
public:
    SignMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 1) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::int8_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    /// Inner product of two columns.
    std::int64_t column_dot(std::size_t c1, const SignMatrix& other, std::size_t c2) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int8_t> data_;
};

/// Row r, effect e: +1 when <r, word_column(e)> = 0 over GF(2), else -1.
SignMatrix model_matrix(const FactorAssignment& assignment, std::span<const Word> effects);

/// The full defining relation: 2^p words closed under symmetric difference,
/// including the empty word, sorted shortlex.
class DefiningSubgroup {
public:
    DefiningSubgroup() : words_{Word{}} {}
    DefiningSubgroup(std::vector<Word> words, int generator_count);

    std::span<const Word> words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    int generator_count() const noexcept { return p_; }
    bool contains(const Word& word) const;

private:
    std::vector<Word> words_;
    int p_ = 0;
};

DefiningSubgroup expand_defining_subgroup(std::span<const Word> generators, const FactorAssignment& assignment);

/// Independent defining words of an assignment, found by elimination; one per
/// dependent letter, so p = size - rank.
std::vector<Word> independent_defining_words(const FactorAssignment& assignment);

DefiningSubgroup defining_subgroup(const FactorAssignment& assignment);

/// Letter masks (over an indexed column list) spanning the kernel of the map
/// "subset -> XOR of its columns".
std::vector<std::uint64_t> kernel_basis(std::span<const Column> columns);

/// counts(size, target) = number of subsets of the column list with the given
/// size whose XOR is `target`. Built by a dynamic program over the columns, so
/// the cost is linear in 2^k rather than in the subgroup size.
class SubsetXorTable {
public:
    SubsetXorTable(std::span<const Column> columns, int k);

    std::size_t max_size() const noexcept { return max_size_; }
    std::uint64_t operator()(std::size_t size, Column target) const {
        return size > max_size_ ? 0 : table_[size * width_ + target.bits];
    }

private:
    std::size_t max_size_;
    std::size_t width_;
    std::vector<std::uint64_t> table_;
};

}  // namespace aberrant
