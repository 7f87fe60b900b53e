#include "aberrant/wlp.hpp"

#include <algorithm>
#include <numeric>

#include "aberrant/combinatorics.hpp"
#include "aberrant/criteria.hpp"
#include "aberrant/error.hpp"

namespace aberrant {

Wlp::Wlp(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty() || counts_[0] != 1) fail(ErrorKind::validation, "word length pattern must have A_0 = 1");
}

std::uint64_t Wlp::total() const noexcept { return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }

std::vector<std::uint64_t> Wlp::tail(std::size_t from) const {
    if (from >= counts_.size()) return {};
    return {counts_.begin() + static_cast<std::ptrdiff_t>(from), counts_.end()};
}

std::string Resolution::to_string() const {
    if (!value) return "unbounded";
    static constexpr std::pair<unsigned, const char*> numerals[] = {
        {10, "X"}, {9, "IX"}, {5, "V"}, {4, "IV"}, {1, "I"}};
    std::string out;
    unsigned v = *value;
    while (v >= 40) {
        out += "XL";
        v -= 40;
    }
    for (const auto& [n, s] : numerals) {
        while (v >= n) {
            out += s;
            v -= n;
        }
    }
    return out;
}

EffectGrouping::EffectGrouping(std::vector<std::vector<Word>> groups) : groups_(std::move(groups)) {
    if (groups_.empty() || groups_.front().empty()) fail(ErrorKind::validation, "the fitted group must be nonempty");
    std::vector<Word> all;
    for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        fail(ErrorKind::validation, "effect groups overlap");
    }
}

std::vector<Word> interactions(std::span<const Letter> letters, std::size_t order) {
    std::vector<Word> out;
    const std::size_t n = letters.size();
    if (order == 0 || order > n) return out;
    std::vector<std::size_t> idx(order);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        std::vector<Letter> w;
        w.reserve(order);
        for (std::size_t i : idx) w.push_back(letters[i]);
        out.emplace_back(std::move(w));
        std::size_t pos = order;
        while (pos > 0 && idx[pos - 1] == n - order + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < order; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

EffectGrouping hierarchical_grouping(std::span<const Letter> letters, std::size_t q) {
    if (q == 0) fail(ErrorKind::domain, "interaction order q must be at least 1");
    const std::size_t m = letters.size();
    std::vector<std::vector<Word>> groups(1);
    for (std::size_t order = 1; order <= std::min(q, m); ++order) {
        auto words = interactions(letters, order);
        groups[0].insert(groups[0].end(), words.begin(), words.end());
    }
    for (std::size_t order = q + 1; order <= m; ++order) groups.push_back(interactions(letters, order));
    return EffectGrouping(std::move(groups));
}

Wlp word_length_pattern(const DefiningSubgroup& subgroup, std::size_t m) {
    std::vector<std::uint64_t> counts(m + 1, 0);
    for (const Word& w : subgroup.words()) {
        if (w.length() > m) fail(ErrorKind::validation, "defining word longer than the factor count");
        ++counts[w.length()];
    }
    return Wlp(std::move(counts));
}

Wlp column_wlp(std::span<const Column> columns, int k) {
    const SubsetXorTable table(columns, k);
    std::vector<std::uint64_t> counts(columns.size() + 1);
    for (std::size_t i = 0; i <= columns.size(); ++i) counts[i] = table(i, kIdentity);
    return Wlp(std::move(counts));
}

Resolution resolution(const Wlp& wlp) {
    for (std::size_t i = 1; i <= wlp.factor_count(); ++i) {
        if (wlp[static_cast<std::ptrdiff_t>(i)] > 0) return Resolution{static_cast<unsigned>(i)};
    }
    return Resolution{};
}

GeneralWlp general_wlp_oracle(const FactorAssignment& assignment, const EffectGrouping& grouping) {
    if (!estimability_check(assignment, grouping.fitted())) {
        fail(ErrorKind::estimability, "fitted effects are not estimable under this design");
    }
    std::vector<bool> fitted(assignment.runs(), false);
    for (const Word& f : grouping.fitted()) fitted[word_column(assignment, f).bits] = true;

    std::vector<std::uint64_t> counts;
    for (std::size_t j = 2; j <= grouping.group_count(); ++j) {
        std::uint64_t n = 0;
        for (const Word& e : grouping.group(j)) n += fitted[word_column(assignment, e).bits] ? 1 : 0;
        counts.push_back(n);
    }
    return GeneralWlp(std::move(counts));
}

std::uint64_t bias_norm_oracle(const FactorAssignment& assignment, const EffectGrouping& grouping, std::size_t j) {
    if (j < 2 || j > grouping.group_count()) fail(ErrorKind::domain, "group index out of range");
    if (!estimability_check(assignment, grouping.fitted())) {
        fail(ErrorKind::estimability, "fitted effects are not estimable under this design");
    }
    const SignMatrix w1 = model_matrix(assignment, grouping.fitted());
    const SignMatrix wj = model_matrix(assignment, grouping.group(j));
    const auto n = static_cast<std::int64_t>(assignment.runs());

    // ||C_j||^2 = sum over entries of (W_1^T W_j)^2 / n^2.
    std::int64_t sum_sq = 0;
    for (std::size_t a = 0; a < w1.cols(); ++a) {
        for (std::size_t b = 0; b < wj.cols(); ++b) {
            const std::int64_t dot = w1.column_dot(a, wj, b);
            sum_sq += dot * dot;
        }
    }
    if (sum_sq % (n * n) != 0) fail(ErrorKind::identity_violation, "bias norm is not an integer");
    return static_cast<std::uint64_t>(sum_sq / (n * n));
}

namespace {

void require_zero(const Wlp& wlp, std::size_t upto, const char* what) {
    for (std::size_t i = 1; i <= upto; ++i) {
        if (wlp[static_cast<std::ptrdiff_t>(i)] != 0) {
            fail(ErrorKind::precondition, std::string(what) + ": A_" + std::to_string(i) + " must be zero");
        }
    }
}

}  // namespace

GeneralWlp n_from_wlp_main(const Wlp& wlp, std::size_t m) {
    require_zero(wlp, 2, "main-effect pattern needs resolution III or higher");
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j + 1 <= m; ++j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        n.push_back((j + 1) * wlp[jj + 1] + (m - j + 1) * wlp[jj - 1]);
    }
    if (m >= 2) n.push_back(wlp[static_cast<std::ptrdiff_t>(m) - 1]);
    return GeneralWlp(std::move(n));
}

GeneralWlp n_from_wlp_q(const Wlp& wlp, std::size_t m, std::size_t q) {
    if (q == 0) fail(ErrorKind::domain, "interaction order q must be at least 1");
    require_zero(wlp, 2 * q, "order-q pattern needs resolution 2q+1 or higher");
    const auto mm = static_cast<std::int64_t>(m);
    const auto qq = static_cast<std::int64_t>(q);
    std::vector<std::uint64_t> n;
    // An interaction e of order q-1+j is aliased with a fitted effect f of order
    // i through the word e + f. With t letters of f outside the word, the word
    // has length l = q-1+j+i-2t, f keeps i-t of its letters, and each such word
    // accounts for C(l, i-t) C(m-l, t) aliased pairs.
    for (std::int64_t j = 2; qq - 1 + j <= mm; ++j) {
        std::uint64_t total = 0;
        for (std::int64_t t = 0; t <= qq; ++t) {
            for (std::int64_t i = std::max<std::int64_t>(t, 1); i <= qq; ++i) {
                const std::int64_t l = qq - 1 + j + i - 2 * t;
                if (l < 0 || l > mm) continue;
                total += binomial(l, i - t) * binomial(mm - l, t) * wlp[l];
            }
        }
        n.push_back(total);
    }
    return GeneralWlp(std::move(n));
}

std::strong_ordering lex_compare(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
    const std::size_t len = std::max(x.size(), y.size());
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t a = i < x.size() ? x[i] : 0;
        const std::uint64_t b = i < y.size() ? y[i] : 0;
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const GeneralWlp& x, const GeneralWlp& y) { return lex_compare(x.counts(), y.counts()); }

}  // namespace aberrant
