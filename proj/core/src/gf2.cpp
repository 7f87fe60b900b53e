#include "aberrant/gf2.hpp"

#include <algorithm>
#include <bit>

#include "aberrant/error.hpp"

namespace aberrant {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::unknown_letter: return "unknown-letter";
    case ErrorKind::dependent_generators: return "dependent-generators";
    case ErrorKind::inconsistent_generator: return "inconsistent-generator";
    case ErrorKind::estimability: return "estimability";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::identity_violation: return "identity-violation";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::domain: return "domain";
    case ErrorKind::no_candidate: return "no-candidate";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    }
    return "unknown";
}

void check_exponent(int k) {
    if (k < 1 || k > kMaxExponent) {
        fail(ErrorKind::capacity, "run-size exponent k=" + std::to_string(k) + " outside [1, " +
                                      std::to_string(kMaxExponent) + "]");
    }
}

std::string to_string(Column c) {
    if (c.is_identity()) return "I";
    std::string out;
    for (int i = 1; i <= kMaxExponent; ++i) {
        if (c.bits & basis_column(i).bits) out += "a" + std::to_string(i);
    }
    return out;
}

std::vector<Column> saturated_columns(int k) {
    check_exponent(k);
    std::vector<Column> cols;
    cols.reserve((std::size_t{1} << k) - 1);
    for (std::uint32_t v = 1; v < (std::uint32_t{1} << k); ++v) cols.push_back(Column{v});
    return cols;
}

int gf2_rank(std::span<const Column> columns) {
    // pivots[b] holds a reduced vector whose highest set bit is b.
    std::uint32_t pivots[32] = {};
    int rank = 0;
    for (Column c : columns) {
        std::uint32_t v = c.bits;
        while (v != 0) {
            const int top = 31 - std::countl_zero(v);
            if (pivots[top] == 0) {
                pivots[top] = v;
                ++rank;
                break;
            }
            v ^= pivots[top];
        }
    }
    return rank;
}

std::string to_string(Letter letter) {
    switch (letter.kind) {
    case LetterKind::treatment: return std::to_string(letter.index);
    case LetterKind::blocking: return "b" + std::to_string(letter.index);
    case LetterKind::auxiliary: return "x" + std::to_string(letter.index);
    }
    return "?";
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    std::sort(letters_.begin(), letters_.end());
    letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
}

bool Word::contains(Letter letter) const {
    return std::binary_search(letters_.begin(), letters_.end(), letter);
}

std::size_t Word::count(LetterKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(letters_.begin(), letters_.end(), [kind](Letter l) { return l.kind == kind; }));
}

Word symmetric_difference(const Word& a, const Word& b) {
    Word out;
    std::set_symmetric_difference(a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end(),
                                  std::back_inserter(out.letters_));
    return out;
}

Word treatment_word(std::initializer_list<unsigned> indices) {
    std::vector<Letter> letters;
    for (unsigned i : indices) letters.push_back(treatment(i));
    return Word(std::move(letters));
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
}

std::string to_string(const Word& word) {
    if (word.empty()) return "I";
    std::string out;
    bool multi_char = false;
    for (Letter l : word.letters()) multi_char |= to_string(l).size() > 1;
    for (Letter l : word.letters()) {
        if (multi_char && !out.empty()) out += '.';
        out += to_string(l);
    }
    return out;
}

FactorAssignment::FactorAssignment(int k, std::vector<std::pair<Letter, Column>> entries) : k_(k) {
    check_exponent(k);
    if (entries.size() > kMaxLetters) {
        fail(ErrorKind::capacity,
             "design has " + std::to_string(entries.size()) + " letters; at most " + std::to_string(kMaxLetters));
    }
    const std::uint32_t limit = std::uint32_t{1} << k;
    for (const auto& [letter, column] : entries) {
        if (column.is_identity() || column.bits >= limit) {
            fail(ErrorKind::validation, "letter " + to_string(letter) + " is not assigned a nonzero column of H_" +
                                            std::to_string(k));
        }
        letters_.push_back(letter);
        columns_.push_back(column);
    }
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        for (std::size_t j = i + 1; j < letters_.size(); ++j) {
            if (letters_[i] == letters_[j]) fail(ErrorKind::validation, "duplicate letter " + to_string(letters_[i]));
            if (columns_[i] == columns_[j]) {
                fail(ErrorKind::validation, "letters " + to_string(letters_[i]) + " and " + to_string(letters_[j]) +
                                                " share column " + to_string(columns_[i]));
            }
        }
    }
}

std::size_t FactorAssignment::count(LetterKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(letters_.begin(), letters_.end(), [kind](Letter l) { return l.kind == kind; }));
}

std::optional<std::size_t> FactorAssignment::position(Letter letter) const {
    const auto it = std::find(letters_.begin(), letters_.end(), letter);
    if (it == letters_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - letters_.begin());
}

Column FactorAssignment::column(Letter letter) const {
    const auto pos = position(letter);
    if (!pos) fail(ErrorKind::unknown_letter, "letter " + to_string(letter) + " is not assigned");
    return columns_[*pos];
}

FactorAssignment FactorAssignment::restricted(LetterKind kind) const {
    std::vector<std::pair<Letter, Column>> entries;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].kind == kind) entries.emplace_back(letters_[i], columns_[i]);
    }
    return FactorAssignment(k_, std::move(entries));
}

std::vector<Letter> FactorAssignment::letters_of(LetterKind kind) const {
    std::vector<Letter> out;
    for (Letter l : letters_) {
        if (l.kind == kind) out.push_back(l);
    }
    return out;
}

std::vector<Column> FactorAssignment::columns_of(LetterKind kind) const {
    std::vector<Column> out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].kind == kind) out.push_back(columns_[i]);
    }
    return out;
}

std::uint64_t FactorAssignment::mask_of(const Word& word) const {
    std::uint64_t mask = 0;
    for (Letter l : word.letters()) {
        const auto pos = position(l);
        if (!pos) fail(ErrorKind::unknown_letter, "letter " + to_string(l) + " is not assigned");
        mask |= std::uint64_t{1} << *pos;
    }
    return mask;
}

Word FactorAssignment::word_of(std::uint64_t mask) const {
    std::vector<Letter> letters;
    while (mask != 0) {
        letters.push_back(letters_[static_cast<std::size_t>(std::countr_zero(mask))]);
        mask &= mask - 1;
    }
    return Word(std::move(letters));
}

FactorAssignment assignment_from_columns(int k, std::span<const Column> columns) {
    std::vector<std::pair<Letter, Column>> entries;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        entries.emplace_back(treatment(static_cast<unsigned>(i + 1)), columns[i]);
    }
    return FactorAssignment(k, std::move(entries));
}

Column word_column(const FactorAssignment& assignment, const Word& word) {
    Column c = kIdentity;
    for (Letter l : word.letters()) c ^= assignment.column(l);
    return c;
}

bool is_aliased(const FactorAssignment& assignment, const Word& e1, const Word& e2) {
    return (word_column(assignment, e1) ^ word_column(assignment, e2)).is_identity();
}

std::int64_t SignMatrix::column_dot(std::size_t c1, const SignMatrix& other, std::size_t c2) const {
    std::int64_t sum = 0;
    for (std::size_t r = 0; r < rows_; ++r) sum += (*this)(r, c1) * other(r, c2);
    return sum;
}

SignMatrix model_matrix(const FactorAssignment& assignment, std::span<const Word> effects) {
    SignMatrix m(assignment.runs(), effects.size());
    for (std::size_t e = 0; e < effects.size(); ++e) {
        const std::uint32_t col = word_column(assignment, effects[e]).bits;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            m(r, e) = (std::popcount(static_cast<std::uint32_t>(r) & col) & 1) ? std::int8_t{-1} : std::int8_t{1};
        }
    }
    return m;
}

DefiningSubgroup::DefiningSubgroup(std::vector<Word> words, int generator_count)
    : words_(std::move(words)), p_(generator_count) {
    std::sort(words_.begin(), words_.end(), shortlex_less);
}

bool DefiningSubgroup::contains(const Word& word) const {
    return std::binary_search(words_.begin(), words_.end(), word, shortlex_less);
}

namespace {

// Rank of a set of 64-bit GF(2) vectors.
int mask_rank(std::span<const std::uint64_t> masks) {
    std::vector<std::uint64_t> pivots(64, 0);
    int rank = 0;
    for (std::uint64_t v : masks) {
        while (v != 0) {
            const int top = 63 - std::countl_zero(v);
            if (pivots[top] == 0) {
                pivots[top] = v;
                ++rank;
                break;
            }
            v ^= pivots[top];
        }
    }
    return rank;
}

std::vector<std::uint64_t> gray_span(std::span<const std::uint64_t> basis) {
    const std::size_t count = std::size_t{1} << basis.size();
    std::vector<std::uint64_t> out;
    out.reserve(count);
    std::uint64_t current = 0;
    out.push_back(current);
    for (std::size_t i = 1; i < count; ++i) {
        current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        out.push_back(current);
    }
    return out;
}

}  // namespace

DefiningSubgroup expand_defining_subgroup(std::span<const Word> generators, const FactorAssignment& assignment) {
    if (generators.size() > 24) fail(ErrorKind::capacity, "more than 24 generators; subgroup too large to expand");
    std::vector<std::uint64_t> masks;
    for (const Word& g : generators) {
        if (!word_column(assignment, g).is_identity()) {
            fail(ErrorKind::inconsistent_generator, "generator " + to_string(g) + " is not a defining word");
        }
        masks.push_back(assignment.mask_of(g));
    }
    if (mask_rank(masks) != static_cast<int>(masks.size())) {
        fail(ErrorKind::dependent_generators, "generators are not independent");
    }
    std::vector<Word> words;
    for (std::uint64_t mask : gray_span(masks)) words.push_back(assignment.word_of(mask));
    return DefiningSubgroup(std::move(words), static_cast<int>(generators.size()));
}

std::vector<std::uint64_t> kernel_basis(std::span<const Column> columns) {
    if (columns.size() > kMaxLetters) fail(ErrorKind::capacity, "more than 64 columns");
    struct Pivot {
        std::uint32_t value = 0;
        std::uint64_t combination = 0;
    };
    Pivot pivots[32] = {};
    std::vector<std::uint64_t> kernel;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        std::uint32_t v = columns[i].bits;
        std::uint64_t combo = std::uint64_t{1} << i;
        while (v != 0) {
            const int top = 31 - std::countl_zero(v);
            if (pivots[top].value == 0) {
                pivots[top] = {v, combo};
                break;
            }
            v ^= pivots[top].value;
            combo ^= pivots[top].combination;
        }
        if (v == 0) kernel.push_back(combo);
    }
    return kernel;
}

std::vector<Word> independent_defining_words(const FactorAssignment& assignment) {
    std::vector<Word> words;
    for (std::uint64_t mask : kernel_basis(assignment.columns())) words.push_back(assignment.word_of(mask));
    return words;
}

DefiningSubgroup defining_subgroup(const FactorAssignment& assignment) {
    const auto generators = independent_defining_words(assignment);
    return expand_defining_subgroup(generators, assignment);
}

SubsetXorTable::SubsetXorTable(std::span<const Column> columns, int k)
    : max_size_(columns.size()), width_(std::size_t{1} << k), table_((columns.size() + 1) * width_, 0) {
    check_exponent(k);
    table_[0] = 1;
    // Process columns one at a time; iterate sizes downwards so each column is
    // used at most once.
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::uint32_t col = columns[c].bits;
        for (std::size_t size = c + 1; size >= 1; --size) {
            std::uint64_t* dst = &table_[size * width_];
            const std::uint64_t* src = &table_[(size - 1) * width_];
            for (std::size_t x = 0; x < width_; ++x) dst[x ^ col] += src[x];
        }
    }
}

}  // namespace aberrant
