#include "spec_file.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "aberrant/error.hpp"

namespace aberrant::cli {

namespace {

[[noreturn]] void parse_error(SourcePos pos, const std::string& msg) {
    fail(ErrorKind::parse, "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg);
}

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over one line with 1-based columns.
class LineReader {
public:
    LineReader(std::string_view text, std::size_t line, std::size_t offset = 0)
        : text_(text), line_(line), i_(offset) {}

    void skip_space() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    }
    bool done() {
        skip_space();
        return i_ >= text_.size();
    }
    SourcePos pos() const { return {line_, i_ + 1}; }
    char peek() {
        skip_space();
        return i_ < text_.size() ? text_[i_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) parse_error(pos(), std::string("expected '") + c + "'");
        ++i_;
    }
    Token name() {
        skip_space();
        const SourcePos start = pos();
        const std::size_t from = i_;
        while (i_ < text_.size() && name_char(text_[i_])) ++i_;
        if (from == i_) parse_error(start, "expected a factor name");
        return {std::string(text_.substr(from, i_ - from)), start};
    }
    std::string_view rest() {
        skip_space();
        return text_.substr(i_);
    }
    std::size_t offset() const { return i_; }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t i_;
};

constexpr std::string_view kKeys[] = {"runs", "factors", "generators", "blocks", "interactions", "grouping"};

// "key:" at the start of a line, or empty.
std::string_view key_of(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && std::isalpha(static_cast<unsigned char>(line[j]))) ++j;
    std::size_t c = j;
    while (c < line.size() && (line[c] == ' ' || line[c] == '\t')) ++c;
    if (c >= line.size() || line[c] != ':') return {};
    const std::string_view key = line.substr(i, j - i);
    for (std::string_view k : kKeys) {
        if (k == key) return k;
    }
    return {};
}

GeneratorLine generator_line(std::string_view text, std::size_t line, bool allow_bare) {
    LineReader r(text, line);
    GeneratorLine g;
    g.name = r.name();
    if (r.done()) {
        if (!allow_bare) parse_error(r.pos(), "expected '=' after " + g.name.text);
        return g;
    }
    r.expect('=');
    if (r.done()) parse_error(r.pos(), "empty right-hand side for " + g.name.text);
    // Split later against known names; keep raw pieces with positions here.
    while (!r.done()) {
        if (r.peek() == '*' || r.peek() == '.') {
            r.expect(r.peek());
            continue;
        }
        g.rhs.push_back(r.name());
    }
    return g;
}

}  // namespace

int DesignSpecFile::exponent() const { return std::countr_zero(runs); }

DesignSpecFile parse_spec(std::string_view text) {
    DesignSpecFile spec;
    enum class Section { none, generators, blocks } section = Section::none;
    bool seen_runs = false;
    bool seen_factors = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    auto add_entry = [&](std::string_view entry, std::size_t line_no) {
        (section == Section::generators ? spec.generators : spec.blocks)
            .push_back(generator_line(entry, line_no, section == Section::blocks));
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        const std::string_view key = key_of(line);
        if (key.empty()) {
            if (section == Section::none) {
                LineReader r(line, line_no);
                r.skip_space();
                parse_error(r.pos(), "expected one of runs, factors, generators, blocks, interactions, grouping");
            }
            add_entry(line, line_no);
            continue;
        }
        LineReader r(line, line_no, line.find(':') + 1);
        section = Section::none;
        if (key == "runs") {
            if (seen_runs) parse_error({line_no, 1}, "runs given twice");
            seen_runs = true;
            const Token t = r.name();
            if (!std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                t.text.size() > 18) {
                parse_error(t.pos, "runs must be a positive integer");
            }
            spec.runs = std::stoull(t.text);
            if (spec.runs < 2 || !std::has_single_bit(spec.runs)) parse_error(t.pos, "runs must be a power of two");
            if (!r.done()) parse_error(r.pos(), "unexpected text after runs");
        } else if (key == "factors") {
            if (seen_factors) parse_error({line_no, 1}, "factors given twice");
            seen_factors = true;
            while (!r.done()) {
                if (r.peek() == ',') {
                    r.expect(',');
                    continue;
                }
                spec.factors.push_back(r.name());
            }
        } else if (key == "generators" || key == "blocks") {
            section = key == "generators" ? Section::generators : Section::blocks;
            if (!r.done()) {
                // A first entry may share the key's line; blank out the key so
                // columns stay right.
                std::string entry(line);
                std::fill(entry.begin(), entry.begin() + static_cast<std::ptrdiff_t>(r.offset()), ' ');
                add_entry(entry, line_no);
            }
        } else if (key == "interactions") {
            while (!r.done()) {
                r.expect('(');
                Token a = r.name();
                r.expect(',');
                Token b = r.name();
                r.expect(')');
                if (r.peek() == ',') r.expect(',');
                spec.interactions.emplace_back(std::move(a), std::move(b));
            }
        } else {
            const Token q = r.name();
            if (q.text != "q") parse_error(q.pos, "grouping takes q=<order>");
            r.expect('=');
            const Token v = r.name();
            if (!std::all_of(v.text.begin(), v.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                v.text.size() > 3 || std::stoul(v.text) == 0) {
                parse_error(v.pos, "q must be a positive integer");
            }
            spec.grouping_q = std::stoul(v.text);
            if (!r.done()) parse_error(r.pos(), "unexpected text after grouping");
        }
    }
    if (!seen_runs) parse_error({line_no + 1, 1}, "missing runs");
    if (!seen_factors || spec.factors.empty()) parse_error({line_no + 1, 1}, "missing factors");

    std::map<std::string, SourcePos> names;
    auto declare = [&](const Token& t) {
        if (!names.emplace(t.text, t.pos).second) parse_error(t.pos, "duplicate factor name " + t.text);
    };
    for (const Token& t : spec.factors) declare(t);
    for (const GeneratorLine& g : spec.blocks) declare(g.name);
    std::map<std::string, bool> defined;
    for (const GeneratorLine& g : spec.generators) {
        if (std::find(spec.factors.begin(), spec.factors.end(), g.name) == spec.factors.end()) {
            parse_error(g.name.pos, "generator defines undeclared factor " + g.name.text);
        }
        if (!defined.emplace(g.name.text, true).second) parse_error(g.name.pos, "factor " + g.name.text + " defined twice");
    }
    for (const auto& [a, b] : spec.interactions) {
        for (const Token* t : {&a, &b}) {
            if (std::find(spec.factors.begin(), spec.factors.end(), *t) == spec.factors.end()) {
                parse_error(t->pos, "interaction names unknown factor " + t->text);
            }
        }
        if (a == b) parse_error(b.pos, "interaction repeats factor " + a.text);
    }

    // Split glued right-hand sides ("123") greedily into known names.
    auto split = [&](std::vector<Token>& rhs) {
        std::vector<Token> out;
        for (const Token& t : rhs) {
            if (names.count(t.text)) {
                out.push_back(t);
                continue;
            }
            std::size_t i = 0;
            while (i < t.text.size()) {
                std::size_t best = 0;
                for (std::size_t len = t.text.size() - i; len > 0; --len) {
                    if (names.count(t.text.substr(i, len))) {
                        best = len;
                        break;
                    }
                }
                const SourcePos at{t.pos.line, t.pos.column + i};
                if (best == 0) parse_error(at, "unknown letter in '" + t.text.substr(i) + "'");
                out.push_back({t.text.substr(i, best), at});
                i += best;
            }
        }
        rhs = std::move(out);
    };
    for (GeneratorLine& g : spec.generators) split(g.rhs);
    for (GeneratorLine& g : spec.blocks) split(g.rhs);
    return spec;
}

DesignSpecFile read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::validation, "cannot open spec file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_spec(text.str());
}

std::string rhs_text(const std::vector<Token>& tokens) {
    const bool glue = std::all_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.text.size() == 1; });
    std::string out;
    for (const Token& t : tokens) {
        if (!out.empty() && !glue) out += ' ';
        out += t.text;
    }
    return out;
}

std::string emit_spec(const DesignSpecFile& spec) {
    std::ostringstream out;
    out << "runs: " << spec.runs << "\nfactors:";
    for (const Token& t : spec.factors) out << ' ' << t.text;
    out << '\n';
    if (!spec.generators.empty()) {
        out << "generators:\n";
        for (const GeneratorLine& g : spec.generators) out << "  " << g.name.text << " = " << rhs_text(g.rhs) << '\n';
    }
    if (!spec.blocks.empty()) {
        out << "blocks:\n";
        for (const GeneratorLine& g : spec.blocks) {
            out << "  " << g.name.text;
            if (!g.rhs.empty()) out << " = " << rhs_text(g.rhs);
            out << '\n';
        }
    }
    if (!spec.interactions.empty()) {
        out << "interactions:";
        for (const auto& [a, b] : spec.interactions) out << " (" << a.text << ',' << b.text << ')';
        out << '\n';
    }
    if (spec.grouping_q) out << "grouping: q=" << *spec.grouping_q << '\n';
    return out.str();
}

const std::string& ResolvedDesign::name(Letter letter) const {
    const auto& names = letter.kind == LetterKind::blocking ? blocking_names : treatment_names;
    if (letter.index == 0 || letter.index > names.size()) fail(ErrorKind::unknown_letter, "no name for " + to_string(letter));
    return names[letter.index - 1];
}

std::string ResolvedDesign::word_name(const Word& word) const {
    if (word.empty()) return "I";
    bool glue = true;
    for (Letter l : word.letters()) glue = glue && name(l).size() == 1;
    std::string out;
    for (Letter l : word.letters()) {
        if (!out.empty() && !glue) out += '.';
        out += name(l);
    }
    return out;
}

ResolvedDesign resolve(const DesignSpecFile& spec) {
    const int k = spec.exponent();
    if (k > kMaxExponent) fail(ErrorKind::capacity, "runs exceed 2^" + std::to_string(kMaxExponent));
    ResolvedDesign out;
    out.k = k;

    std::map<std::string, Letter> letter_of;
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        out.treatment_names.push_back(spec.factors[i].text);
        letter_of[spec.factors[i].text] = treatment(static_cast<unsigned>(i + 1));
    }
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        out.blocking_names.push_back(spec.blocks[i].name.text);
        letter_of[spec.blocks[i].name.text] = blocking(static_cast<unsigned>(i + 1));
    }

    std::map<std::string, const GeneratorLine*> generated;
    for (const GeneratorLine& g : spec.generators) generated[g.name.text] = &g;

    std::map<std::string, Column> column;
    int next_basis = 1;
    auto take_basis = [&](const Token& t) {
        if (next_basis > k) {
            parse_error(t.pos, "more than " + std::to_string(k) + " basic factors for " + std::to_string(spec.runs) +
                                   " runs (rank inconsistency at " + t.text + ")");
        }
        column[t.text] = basis_column(next_basis++);
    };
    for (const Token& t : spec.factors) {
        if (!generated.count(t.text)) take_basis(t);
    }
    for (const GeneratorLine& b : spec.blocks) {
        if (b.rhs.empty()) take_basis(b.name);
    }
    if (next_basis <= k) {
        fail(ErrorKind::parse, "line 1, column 1: " + std::to_string(next_basis - 1) + " basic factors for " +
                                   std::to_string(spec.runs) + " runs; rank inconsistency (need " +
                                   std::to_string(k) + ")");
    }
    auto evaluate = [&](const GeneratorLine& g) {
        Column c = kIdentity;
        for (const Token& t : g.rhs) {
            const auto it = column.find(t.text);
            if (it == column.end()) parse_error(t.pos, "letter " + t.text + " is used before it is defined");
            c = c ^ it->second;
        }
        if (c.is_identity()) parse_error(g.name.pos, g.name.text + " is defined as the identity");
        column[g.name.text] = c;
    };
    for (const GeneratorLine& g : spec.generators) evaluate(g);
    for (const GeneratorLine& b : spec.blocks) {
        if (!b.rhs.empty()) evaluate(b);
    }

    std::vector<std::pair<Letter, Column>> entries;
    for (const Token& t : spec.factors) entries.emplace_back(letter_of.at(t.text), column.at(t.text));
    for (const GeneratorLine& b : spec.blocks) entries.emplace_back(letter_of.at(b.name.text), column.at(b.name.text));
    std::map<std::uint32_t, std::string> owner;
    for (const auto& [l, c] : entries) {
        const std::string& n = l.kind == LetterKind::blocking ? out.blocking_names[l.index - 1]
                                                              : out.treatment_names[l.index - 1];
        if (const auto [it, fresh] = owner.emplace(c.bits, n); !fresh) {
            fail(ErrorKind::validation, "factors " + it->second + " and " + n + " share column " + to_string(c));
        }
    }
    out.assignment = FactorAssignment(k, std::move(entries));

    std::vector<std::pair<Letter, Letter>> pairs;
    for (const auto& [a, b] : spec.interactions) pairs.emplace_back(letter_of.at(a.text), letter_of.at(b.text));
    out.interactions = TwoFiRequirement(std::move(pairs));
    return out;
}

}  // namespace aberrant::cli
