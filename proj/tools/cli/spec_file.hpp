#pragma once

// Plain-text design files:
//
//   runs: 16
//   factors: 1 2 3 4 5 6 7 8 9
//   generators:
//     5 = 123
//     6 = 124
//   blocks:
//     b = 13
//   interactions: (1,2) (1,3)
//   grouping: q=2
//
// '#' starts a comment. Factors that no generator defines are basic and take
// a1, a2, ... in order of appearance; a bare name under `blocks:` is a basic
// blocking factor.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aberrant/criteria.hpp"
#include "aberrant/gf2.hpp"

namespace aberrant::cli {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// A name with where it was read. Equality is textual.
struct Token {
    std::string text;
    SourcePos pos;

    friend bool operator==(const Token& a, const Token& b) { return a.text == b.text; }
};

struct GeneratorLine {
    Token name;
    /// Empty for a basic blocking factor.
    std::vector<Token> rhs;

    friend bool operator==(const GeneratorLine&, const GeneratorLine&) = default;
};

struct DesignSpecFile {
    std::uint64_t runs = 0;
    std::vector<Token> factors;
    std::vector<GeneratorLine> generators;
    std::vector<GeneratorLine> blocks;
    std::vector<std::pair<Token, Token>> interactions;
    std::optional<std::size_t> grouping_q;

    int exponent() const;

    friend bool operator==(const DesignSpecFile&, const DesignSpecFile&) = default;
};

DesignSpecFile parse_spec(std::string_view text);
DesignSpecFile read_spec_file(const std::string& path);

/// Right-hand side as written by emit_spec: glued when every name is one
/// character, space-separated otherwise.
std::string rhs_text(const std::vector<Token>& tokens);

/// Canonical text; parse_spec(emit_spec(s)) == s.
std::string emit_spec(const DesignSpecFile& spec);

/// Letters and columns of a parsed spec.
struct ResolvedDesign {
    int k = 0;
    /// Treatment letters 1..m in factor order, then blocking letters b1.. in
    /// block order.
    FactorAssignment assignment;
    std::vector<std::string> treatment_names;
    std::vector<std::string> blocking_names;
    TwoFiRequirement interactions;

    const std::string& name(Letter letter) const;
    std::string word_name(const Word& word) const;
};

ResolvedDesign resolve(const DesignSpecFile& spec);

}  // namespace aberrant::cli
