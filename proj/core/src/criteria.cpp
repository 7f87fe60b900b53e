#include "aberrant/criteria.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "aberrant/combinatorics.hpp"
#include "aberrant/error.hpp"

namespace aberrant {

bool estimability_check(const FactorAssignment& assignment, std::span<const Word> gamma1) {
    std::vector<std::uint32_t> cols;
    cols.reserve(gamma1.size());
    for (const Word& e : gamma1) {
        const Column c = word_column(assignment, e);
        if (c.is_identity()) return false;
        cols.push_back(c.bits);
    }
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

std::vector<Word> block_effects(std::span<const Letter> blocking_letters) {
    std::vector<Word> out;
    for (std::size_t order = 1; order <= blocking_letters.size(); ++order) {
        auto words = interactions(blocking_letters, order);
        out.insert(out.end(), words.begin(), words.end());
    }
    return out;
}

std::vector<Column> block_effect_columns(std::span<const Column> blocking_columns) {
    std::vector<Column> out;
    const std::size_t n = blocking_columns.size();
    for (std::size_t order = 1; order <= n; ++order) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != order) continue;
            Column c = kIdentity;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) c ^= blocking_columns[i];
            }
            out.push_back(c);
        }
    }
    return out;
}

BlockedCounts blocked_counts(const FactorAssignment& assignment) {
    const std::size_t m = assignment.count(LetterKind::treatment);
    BlockedCounts counts{std::vector<std::uint64_t>(m + 1, 0), std::vector<std::uint64_t>(m + 1, 0)};
    const DefiningSubgroup subgroup = defining_subgroup(assignment);
    for (const Word& w : subgroup.words()) {
        if (w.empty()) continue;
        const std::size_t t = w.count(LetterKind::treatment);
        if (w.count(LetterKind::blocking) == 0) {
            ++counts.a[t];
        } else {
            ++counts.b[t];
        }
    }
    return counts;
}

BlockedDesign::BlockedDesign(FactorAssignment assignment)
    : assignment_(std::move(assignment)), counts_(blocked_counts(assignment_)) {
    if (assignment_.count(LetterKind::auxiliary) != 0) {
        fail(ErrorKind::validation, "blocked designs take treatment and blocking letters only");
    }
    if (counts_.A(1) || counts_.A(2) || counts_.B(0) || counts_.B(1)) {
        fail(ErrorKind::estimability, "blocked design needs A_1 = A_2 = B_0 = B_1 = 0");
    }
}

BlockedCounts blocked_counts(const BlockedDesign& design) { return design.counts(); }

GeneralWlp blocked_n_main(const BlockedCounts& c, std::size_t m) {
    if (c.A(1) || c.A(2) || c.B(0) || c.B(1)) {
        fail(ErrorKind::precondition, "main-effect blocked pattern needs A_1 = A_2 = B_0 = B_1 = 0");
    }
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j <= m; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        n.push_back((j + 1) * c.A(jj + 1) + (m - j + 1) * c.A(jj - 1) + c.B(jj));
    }
    return GeneralWlp(std::move(n));
}

GeneralWlp blocked_n_twofi(const BlockedCounts& c, std::size_t m) {
    for (std::ptrdiff_t i = 1; i <= 4; ++i) {
        if (c.A(i)) fail(ErrorKind::precondition, "2fi blocked pattern needs A_1..A_4 = 0");
    }
    for (std::ptrdiff_t i = 0; i <= 2; ++i) {
        if (c.B(i)) fail(ErrorKind::precondition, "2fi blocked pattern needs B_0..B_2 = 0");
    }
    const auto mm = static_cast<std::int64_t>(m);
    std::vector<std::uint64_t> n;
    for (std::int64_t j = 2; j + 1 <= mm; ++j) {
        // The interaction has j+1 letters; its block-aliased words carry j+1
        // treatment letters.
        n.push_back(static_cast<std::uint64_t>(j + 2) * c.A(j + 2) + binomial(j + 3, 2) * c.A(j + 3) + c.B(j + 1) +
                    static_cast<std::uint64_t>(mm - j) * c.A(j) +
                    static_cast<std::uint64_t>((mm - j - 1) * (j + 1)) * c.A(j + 1) +
                    binomial(mm - j + 1, 2) * c.A(j - 1));
    }
    return GeneralWlp(std::move(n));
}

RivalVectors rival_vectors(const BlockedCounts& c, std::size_t m) {
    RivalVectors r;
    for (std::ptrdiff_t i = 2; i <= static_cast<std::ptrdiff_t>(m); ++i) {
        r.interleaved.push_back(c.A(i + 1));
        r.interleaved.push_back(c.B(i));
    }
    r.merged = {3 * c.A(3) + c.B(2), c.A(4), 10 * c.A(5) + c.B(3), c.A(6)};
    return r;
}

EffectGrouping blocked_main_grouping(const FactorAssignment& assignment) {
    const auto trt = assignment.letters_of(LetterKind::treatment);
    const auto blk = assignment.letters_of(LetterKind::blocking);
    std::vector<std::vector<Word>> groups(1);
    groups[0] = interactions(trt, 1);
    const auto be = block_effects(blk);
    groups[0].insert(groups[0].end(), be.begin(), be.end());
    for (std::size_t j = 2; j <= trt.size(); ++j) groups.push_back(interactions(trt, j));
    return EffectGrouping(std::move(groups));
}

EffectGrouping blocked_twofi_grouping(const FactorAssignment& assignment) {
    const auto trt = assignment.letters_of(LetterKind::treatment);
    const auto blk = assignment.letters_of(LetterKind::blocking);
    std::vector<std::vector<Word>> groups(1);
    groups[0] = interactions(trt, 1);
    const auto two = interactions(trt, 2);
    groups[0].insert(groups[0].end(), two.begin(), two.end());
    const auto be = block_effects(blk);
    groups[0].insert(groups[0].end(), be.begin(), be.end());
    for (std::size_t j = 2; j + 1 <= trt.size(); ++j) groups.push_back(interactions(trt, j + 1));
    return EffectGrouping(std::move(groups));
}

TwoFiRequirement::TwoFiRequirement(std::vector<std::pair<Letter, Letter>> pairs) : pairs_(std::move(pairs)) {
    std::set<std::pair<Letter, Letter>> seen;
    for (auto& [c, d] : pairs_) {
        if (c == d) fail(ErrorKind::validation, "interaction pair repeats letter " + to_string(c));
        if (c.kind != LetterKind::treatment || d.kind != LetterKind::treatment) {
            fail(ErrorKind::validation, "required interactions must involve treatment letters");
        }
        const auto key = std::minmax(c, d);
        if (!seen.insert(key).second) {
            fail(ErrorKind::validation, "interaction " + to_string(c) + to_string(d) + " listed twice");
        }
    }
}

std::vector<Word> TwoFiRequirement::words() const {
    std::vector<Word> out;
    for (const auto& [c, d] : pairs_) out.push_back(Word{c, d});
    return out;
}

TwoFiProfile twofi_profile(const FactorAssignment& assignment, const TwoFiRequirement& requirement) {
    const FactorAssignment trt = assignment.restricted(LetterKind::treatment);
    for (const auto& [c, d] : requirement.pairs()) {
        trt.column(c);
        trt.column(d);
    }
    const std::size_t m = trt.size();
    TwoFiProfile p{std::vector<std::uint64_t>(m + 1, 0), std::vector<std::uint64_t>(m + 1, 0),
                   std::vector<std::uint64_t>(m + 1, 0)};
    const DefiningSubgroup subgroup = defining_subgroup(trt);
    for (const Word& w : subgroup.words()) {
        if (w.empty()) continue;
        const std::size_t j = w.length();
        for (const auto& [c, d] : requirement.pairs()) {
            const int hits = (w.contains(c) ? 1 : 0) + (w.contains(d) ? 1 : 0);
            (hits == 2 ? p.a2 : hits == 1 ? p.a1 : p.a0)[j] += 1;
        }
    }
    return p;
}

namespace {

std::uint64_t at(const std::vector<std::uint64_t>& v, std::ptrdiff_t j) {
    return (j < 0 || static_cast<std::size_t>(j) >= v.size()) ? 0 : v[static_cast<std::size_t>(j)];
}

}  // namespace

GeneralWlp twofi_n_direct(const TwoFiProfile& profile, const Wlp& wlp, std::size_t m) {
    if (wlp[1] || wlp[2] || at(profile.a2, 3)) {
        fail(ErrorKind::precondition, "required interactions are not estimable (A_1, A_2 or A_3^(2) nonzero)");
    }
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j <= m; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        // A_0^(0) would count the empty word; it never contributes.
        const std::uint64_t neither = jj - 2 >= 1 ? at(profile.a0, jj - 2) : 0;
        n.push_back((j + 1) * wlp[jj + 1] + (m - j + 1) * wlp[jj - 1] + at(profile.a2, jj + 2) + at(profile.a1, jj) +
                    neither);
    }
    return GeneralWlp(std::move(n));
}

EffectGrouping twofi_grouping(const FactorAssignment& assignment, const TwoFiRequirement& requirement) {
    const auto trt = assignment.letters_of(LetterKind::treatment);
    const auto important = requirement.words();
    std::vector<std::vector<Word>> groups(2);
    groups[0] = interactions(trt, 1);
    groups[0].insert(groups[0].end(), important.begin(), important.end());
    for (Word& w : interactions(trt, 2)) {
        if (std::find(important.begin(), important.end(), w) == important.end()) groups[1].push_back(std::move(w));
    }
    for (std::size_t j = 3; j <= trt.size(); ++j) groups.push_back(interactions(trt, j));
    return EffectGrouping(std::move(groups));
}

std::vector<Column> twofi_columns(const FactorAssignment& assignment, const TwoFiRequirement& requirement) {
    std::vector<Column> out;
    for (const auto& [c, d] : requirement.pairs()) out.push_back(assignment.column(c) ^ assignment.column(d));
    return out;
}

AugmentedDesign::AugmentedDesign(FactorAssignment d1, std::vector<Column> d2) : d1_(std::move(d1)), d2_(std::move(d2)) {
    if (d1_.count(LetterKind::treatment) != d1_.size()) {
        fail(ErrorKind::validation, "major factors must be treatment letters");
    }
    const std::uint32_t limit = std::uint32_t{1} << d1_.exponent();
    std::vector<std::uint32_t> all;
    for (Column c : d1_.columns()) all.push_back(c.bits);
    for (Column c : d2_) {
        if (c.is_identity() || c.bits >= limit) fail(ErrorKind::validation, "extra column is not a column of H_k");
        all.push_back(c.bits);
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        fail(ErrorKind::estimability, "extra columns must be distinct from each other and from the major factors");
    }
}

AugmentedCounts augmented_counts(const AugmentedDesign& design) {
    const auto d1 = design.d1().columns();
    const SubsetXorTable table(d1, design.exponent());
    const std::size_t m = d1.size();
    std::vector<std::uint64_t> a(m + 1), b(m + 1, 0);
    for (std::size_t j = 0; j <= m; ++j) {
        a[j] = table(j, kIdentity);
        for (Column d : design.d2()) b[j] += table(j, d);
    }
    return {Wlp(std::move(a)), std::move(b)};
}

GeneralWlp twofi_n_augmented(const Wlp& a, std::span<const std::uint64_t> b, std::size_t m, std::size_t s) {
    if (a[1] || a[2]) fail(ErrorKind::precondition, "augmented 2fi pattern needs A_1 = A_2 = 0");
    auto b_at = [&](std::size_t j) -> std::uint64_t { return j < b.size() ? b[j] : 0; };
    if (m >= 2 && b_at(2) < s) fail(ErrorKind::precondition, "B_2 must count every required interaction");
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j <= m; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        std::uint64_t v = (j + 1) * a[jj + 1] + (m - j + 1) * a[jj - 1] + b_at(j);
        if (j == 2) v -= s;
        n.push_back(v);
    }
    return GeneralWlp(std::move(n));
}

GeneralWlp general_n_vector(std::span<const Column> d1, std::span<const Column> d2, int k) {
    const SubsetXorTable table(d1, k);
    const std::size_t m = d1.size();
    auto a = [&](std::size_t i) -> std::uint64_t { return i <= m ? table(i, kIdentity) : 0; };
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j <= m; ++j) {
        std::uint64_t b = 0;
        for (Column d : d2) b += table(j, d);
        n.push_back((j + 1) * a(j + 1) + (m - j + 1) * a(j - 1) + b);
    }
    return GeneralWlp(std::move(n));
}

GeneralWlp general_n_vector(const AugmentedDesign& design) {
    return general_n_vector(design.d1().columns(), design.d2(), design.exponent());
}

std::uint64_t general_n(const AugmentedDesign& design, std::size_t j) {
    if (j < 2) fail(ErrorKind::domain, "general pattern is defined for j >= 2");
    const std::size_t m = design.major_count();
    // Past m every term vanishes: A_{j+1} = B_j = 0 and (m-j+1) A_{j-1} = 0.
    if (j > m) return 0;
    const auto c = augmented_counts(design);
    const auto jj = static_cast<std::ptrdiff_t>(j);
    const std::uint64_t b = c.b[j];
    return (j + 1) * c.a[jj + 1] + (m - j + 1) * c.a[jj - 1] + b;
}

AugmentedOracleSetup augmented_oracle_setup(const AugmentedDesign& design) {
    std::vector<std::pair<Letter, Column>> entries;
    const auto letters = design.d1().letters();
    const auto cols = design.d1().columns();
    for (std::size_t i = 0; i < letters.size(); ++i) entries.emplace_back(letters[i], cols[i]);
    std::vector<Letter> aux;
    for (std::size_t s = 0; s < design.d2().size(); ++s) {
        aux.push_back(auxiliary(static_cast<unsigned>(s + 1)));
        entries.emplace_back(aux.back(), design.d2()[s]);
    }
    FactorAssignment assignment(design.exponent(), std::move(entries));

    std::vector<std::vector<Word>> groups(1);
    groups[0] = interactions(letters, 1);
    for (Letter x : aux) groups[0].push_back(Word{x});
    for (std::size_t j = 2; j <= letters.size(); ++j) groups.push_back(interactions(letters, j));
    return {std::move(assignment), EffectGrouping(std::move(groups))};
}

}  // namespace aberrant
