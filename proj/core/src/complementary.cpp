#include "aberrant/complementary.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <thread>

#include "aberrant/combinatorics.hpp"
#include "aberrant/error.hpp"

namespace aberrant {

Integer generalized_binomial(const Integer& top, std::int64_t r) {
    if (r < 0) return 0;
    Integer num = 1;
    Integer den = 1;
    for (std::int64_t i = 0; i < r; ++i) {
        num *= top - i;
        den *= i + 1;
    }
    return num / den;
}

Integer krawtchouk(const KrawtchoukQuery& q) {
    if (q.j < 0) fail(ErrorKind::domain, "Krawtchouk degree must be nonnegative");
    Integer sum = 0;
    for (std::int64_t s = 0; s <= q.j; ++s) {
        Integer term = generalized_binomial(q.x, s) * generalized_binomial(q.m - q.x, q.j - s);
        if (s % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

namespace {

Integer signed_power(std::int64_t exponent) { return (exponent % 2 == 0) ? Integer(1) : Integer(-1); }

// 2^k c_m(i, j), always an integer.
Integer scaled_coefficient(std::int64_t m, int k, std::int64_t i, std::int64_t j) {
    const Integer n = Integer(1) << k;
    const std::int64_t half = std::int64_t{1} << (k - 1);
    if (i == 1 || i == 2) return 0;
    if (i >= 3) {
        const std::int64_t t = (j - i) / 2;
        return n * signed_power(j - t) * generalized_binomial(m - half, t);
    }
    const std::int64_t t = j / 2;
    return n * signed_power(j - t) * generalized_binomial(m - half, t) + krawtchouk({j, 0, m}) -
           krawtchouk({j, half, m});
}

}  // namespace

Rational lemma2_coefficient(std::int64_t m, int k, std::int64_t i, std::int64_t j) {
    check_exponent(k);
    if (i < 0 || i > j) fail(ErrorKind::domain, "c_m(i, j) needs 0 <= i <= j");
    return Rational(scaled_coefficient(m, k, i, j), Integer(1) << k);
}

ComplementCoefficients::ComplementCoefficients(std::int64_t m, int k, std::size_t max_j)
    : m_(m), k_(k), max_j_(max_j), scaled_((max_j + 1) * (max_j + 1), 0) {
    check_exponent(k);
    for (std::size_t j = 0; j <= max_j; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            scaled_[j * (max_j + 1) + i] =
                scaled_coefficient(m, k, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
        }
    }
}

const Integer& ComplementCoefficients::scaled(std::size_t i, std::size_t j) const {
    static const Integer zero = 0;
    if (j > max_j_) fail(ErrorKind::domain, "coefficient index beyond table");
    if (i > j) return zero;
    return scaled_[j * (max_j_ + 1) + i];
}

Rational ComplementCoefficients::operator()(std::size_t i, std::size_t j) const {
    return Rational(scaled(i, j), Integer(1) << k_);
}

namespace {

std::uint64_t to_count(const Integer& scaled_total, int k, const char* what) {
    const Integer n = Integer(1) << k;
    if (scaled_total < 0 || scaled_total % n != 0) {
        fail(ErrorKind::identity_violation,
             std::string(what) + " is not a nonnegative integer: " + Rational(scaled_total, n).str());
    }
    return static_cast<std::uint64_t>(scaled_total / n);
}

}  // namespace

Wlp complement_wlp(const Wlp& wlp_bar, const ComplementCoefficients& coefficients) {
    const int k = coefficients.exponent();
    const auto m = static_cast<std::size_t>(coefficients.m());
    if (m + wlp_bar.factor_count() != (std::size_t{1} << k) - 1) {
        fail(ErrorKind::domain, "design and complement must together fill H_k");
    }
    if (coefficients.max_j() < m) fail(ErrorKind::domain, "coefficient table too small");
    std::vector<std::uint64_t> counts(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        Integer total = 0;
        for (std::size_t i = 0; i <= j; ++i) {
            const std::uint64_t a = wlp_bar[static_cast<std::ptrdiff_t>(i)];
            if (a != 0) total += coefficients.scaled(i, j) * a;
        }
        counts[j] = to_count(total, k, ("A_" + std::to_string(j)).c_str());
    }
    return Wlp(std::move(counts));
}

Wlp complement_wlp(const Wlp& wlp_bar, std::size_t m, int k) {
    return complement_wlp(wlp_bar, ComplementCoefficients(static_cast<std::int64_t>(m), k, m));
}

SplitTriple::SplitTriple(int k, std::vector<Column> d1, std::vector<Column> d2, std::vector<Column> d3)
    : k_(k), d1_(std::move(d1)), d2_(std::move(d2)), d3_(std::move(d3)) {
    check_exponent(k);
    const std::size_t n = std::size_t{1} << k;
    std::vector<bool> seen(n, false);
    for (const auto* part : {&d1_, &d2_, &d3_}) {
        for (Column c : *part) {
            if (c.is_identity() || c.bits >= n) fail(ErrorKind::validation, "split holds a column outside H_k");
            if (seen[c.bits]) fail(ErrorKind::validation, "split parts overlap at column " + to_string(c));
            seen[c.bits] = true;
        }
    }
    if (d1_.size() + d2_.size() + d3_.size() != n - 1) {
        fail(ErrorKind::validation, "split does not cover H_k");
    }
}

SplitTriple SplitTriple::from_d1_d2(int k, std::vector<Column> d1, std::vector<Column> d2) {
    check_exponent(k);
    std::vector<bool> used(std::size_t{1} << k, false);
    for (Column c : d1) used.at(c.bits) = true;
    for (Column c : d2) used.at(c.bits) = true;
    std::vector<Column> d3;
    for (Column c : saturated_columns(k)) {
        if (!used[c.bits]) d3.push_back(c);
    }
    return SplitTriple(k, std::move(d1), std::move(d2), std::move(d3));
}

EProfile::EProfile(std::size_t max_length, std::size_t d2_size)
    : max_length_(max_length), d2_size_(d2_size), counts_((max_length + 1) * (d2_size + 1), 0) {}

std::uint64_t EProfile::aggregate(std::size_t i) const noexcept {
    std::uint64_t sum = 0;
    for (std::size_t p = 1; p <= d2_size_; ++p) sum += p * at(i, p);
    return sum;
}

std::uint64_t EProfile::union_count(std::size_t i) const noexcept {
    std::uint64_t sum = 0;
    for (std::size_t p = 0; p <= d2_size_; ++p) sum += at(i, p);
    return sum;
}

EProfile& EProfile::operator+=(const EProfile& other) {
    if (other.max_length_ != max_length_ || other.d2_size_ != d2_size_) {
        fail(ErrorKind::domain, "cannot merge profiles of different shape");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    return *this;
}

EProfile e_profile(std::span<const Column> d2, std::span<const Column> d3, int k, unsigned partitions) {
    check_exponent(k);
    const std::size_t n = d2.size() + d3.size();
    if (n > kMaxProfileColumns) {
        fail(ErrorKind::capacity, "D2 u D3 has " + std::to_string(n) + " columns; enumeration is capped at " +
                                      std::to_string(kMaxProfileColumns));
    }
    std::vector<Column> cols(d2.begin(), d2.end());
    cols.insert(cols.end(), d3.begin(), d3.end());
    const std::uint64_t d2_mask = (std::uint64_t{1} << d2.size()) - 1;
    const std::vector<std::uint64_t> basis = kernel_basis(cols);
    const std::uint64_t total = std::uint64_t{1} << basis.size();

    auto tally = [&](std::uint64_t begin, std::uint64_t end) {
        EProfile profile(n, d2.size());
        if (begin >= end) return profile;
        std::uint64_t current = 0;
        const std::uint64_t gray = begin ^ (begin >> 1);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (gray >> b & 1) current ^= basis[b];
        }
        for (std::uint64_t i = begin;;) {
            profile.cell(static_cast<std::size_t>(std::popcount(current)),
                         static_cast<std::size_t>(std::popcount(current & d2_mask))) += 1;
            if (++i == end) break;
            current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        }
        return profile;
    };

    const std::uint64_t parts = std::clamp<std::uint64_t>(partitions, 1, total);
    if (parts == 1) return tally(0, total);

    std::vector<EProfile> partial(parts, EProfile(n, d2.size()));
    {
        std::vector<std::jthread> workers;
        for (std::uint64_t t = 0; t < parts; ++t) {
            const std::uint64_t begin = total * t / parts;
            const std::uint64_t end = total * (t + 1) / parts;
            workers.emplace_back([&, t, begin, end] { partial[t] = tally(begin, end); });
        }
    }
    EProfile merged(n, d2.size());
    for (const EProfile& p : partial) merged += p;
    return merged;
}

EProfile e_profile(const SplitTriple& split, unsigned partitions) {
    return e_profile(split.d2(), split.d3(), split.exponent(), partitions);
}

Theorem2Evaluator::Theorem2Evaluator(std::size_t m, std::size_t s, int k)
    : m_(m),
      s_(s),
      k_(k),
      cm_(static_cast<std::int64_t>(m), k, m + 1),
      cm1_(static_cast<std::int64_t>(m) + 1, k, m + 1) {
    const std::size_t width = m + 2;
    fast_cm_.assign(width * width, 0);
    fast_cm1_.assign(width * width, 0);
    const Integer limit = Integer(1) << 62;
    fast_ = true;
    for (std::size_t j = 0; j < width && fast_; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            const Integer& a = cm_.scaled(i, j);
            const Integer& b = cm1_.scaled(i, j);
            if (abs(a) >= limit || abs(b) >= limit) {
                fast_ = false;
                break;
            }
            fast_cm_[j * width + i] = static_cast<std::int64_t>(a);
            fast_cm1_[j * width + i] = static_cast<std::int64_t>(b);
        }
    }
}

namespace {

Integer theorem2_scaled(const ComplementCoefficients& cm, const ComplementCoefficients& cm1, std::size_t m,
                        std::size_t s, const EProfile& profile, std::size_t j) {
    const auto jj = static_cast<std::int64_t>(j);
    const auto ss = static_cast<std::int64_t>(s);
    Integer total = 0;
    for (std::size_t i = 0; i <= j + 1; ++i) {
        const std::uint64_t a = profile.union_count(i);
        const std::uint64_t e = profile.aggregate(i);
        if (a != 0) total += ((jj + 1 - ss) * cm.scaled(i, j + 1) + ss * cm1.scaled(i, j + 1)) * a;
        if (e != 0) total -= cm1.scaled(i, j + 1) * e;
    }
    Integer tail = 0;
    for (std::size_t i = 0; i + 1 <= j; ++i) {
        const std::uint64_t a = profile.union_count(i);
        if (a != 0) tail += cm.scaled(i, j - 1) * a;
    }
    total += static_cast<std::int64_t>(m - j + 1) * tail;
    return total;
}

}  // namespace

Rational Theorem2Evaluator::evaluate_exact(const EProfile& profile, std::size_t j) const {
    if (j < 2 || j > m_) fail(ErrorKind::domain, "N_j is defined for 2 <= j <= m");
    if (profile.d2_size() != s_) fail(ErrorKind::domain, "profile has a different D2 size");
    return Rational(theorem2_scaled(cm_, cm1_, m_, s_, profile, j), Integer(1) << k_);
}

std::uint64_t Theorem2Evaluator::evaluate(const EProfile& profile, std::size_t j) const {
    if (j < 2 || j > m_) fail(ErrorKind::domain, "N_j is defined for 2 <= j <= m");
    if (profile.d2_size() != s_) fail(ErrorKind::domain, "profile has a different D2 size");
    if (fast_ && profile.max_length() <= 40) {
        __extension__ using wide = __int128;
        const std::size_t width = m_ + 2;
        const auto jj = static_cast<wide>(j);
        const auto ss = static_cast<wide>(s_);
        wide total = 0;
        for (std::size_t i = 0; i <= j + 1; ++i) {
            const auto a = static_cast<wide>(profile.union_count(i));
            const auto e = static_cast<wide>(profile.aggregate(i));
            const wide c = fast_cm_[(j + 1) * width + i];
            const wide c1 = fast_cm1_[(j + 1) * width + i];
            total += ((jj + 1 - ss) * c + ss * c1) * a - c1 * e;
        }
        wide tail = 0;
        for (std::size_t i = 0; i + 1 <= j; ++i) {
            tail += static_cast<wide>(fast_cm_[(j - 1) * width + i]) * static_cast<wide>(profile.union_count(i));
        }
        total += static_cast<wide>(m_ - j + 1) * tail;
        const wide n = wide{1} << k_;
        if (total < 0 || total % n != 0) {
            fail(ErrorKind::identity_violation, "N_" + std::to_string(j) + " is not a nonnegative integer");
        }
        return static_cast<std::uint64_t>(total / n);
    }
    return to_count(theorem2_scaled(cm_, cm1_, m_, s_, profile, j), k_, ("N_" + std::to_string(j)).c_str());
}

GeneralWlp Theorem2Evaluator::evaluate_all(const EProfile& profile) const {
    std::vector<std::uint64_t> n;
    for (std::size_t j = 2; j <= m_; ++j) n.push_back(evaluate(profile, j));
    return GeneralWlp(std::move(n));
}

std::uint64_t theorem2_n(const SplitTriple& split, std::size_t j) {
    const Theorem2Evaluator evaluator(split.m(), split.s(), split.exponent());
    const std::uint64_t n = evaluator.evaluate(e_profile(split), j);
#ifndef NDEBUG
    for (std::size_t jj = j; jj <= j + 1; ++jj) {
        for (const PerLetterCheck& check : theorem2_per_letter(split, jj)) assert(check.holds());
    }
#endif
    return n;
}

GeneralWlp theorem2_n_vector(const SplitTriple& split) {
    const Theorem2Evaluator evaluator(split.m(), split.s(), split.exponent());
    return evaluator.evaluate_all(e_profile(split));
}

std::vector<PerLetterCheck> theorem2_per_letter(const SplitTriple& split, std::size_t j) {
    const int k = split.exponent();
    const std::size_t m = split.m();
    const ComplementCoefficients cm1(static_cast<std::int64_t>(m) + 1, k, j);
    const SubsetXorTable d1_table(split.d1(), k);
    std::vector<PerLetterCheck> out;
    for (Column d : split.d2()) {
        std::vector<Column> rest;
        for (Column c : split.d2()) {
            if (c != d) rest.push_back(c);
        }
        rest.insert(rest.end(), split.d3().begin(), split.d3().end());
        const Wlp rest_wlp = column_wlp(rest, k);
        Integer scaled = 0;
        for (std::size_t i = 0; i <= j; ++i) scaled += cm1.scaled(i, j) * rest_wlp[static_cast<std::ptrdiff_t>(i)];
        PerLetterCheck check;
        check.d = d;
        check.a_j_d1 = d1_table(j, kIdentity);
        check.b_j_minus_1 = j >= 1 ? d1_table(j - 1, d) : 0;
        check.t_j = Rational(scaled, Integer(1) << k);
        out.push_back(check);
    }
    return out;
}

std::uint64_t g_value(const EProfile& profile) {
    return 3 * profile.at(3, 0) + 2 * profile.at(3, 1) + profile.at(3, 2);
}

std::uint64_t g_value(const SplitTriple& split) { return g_value(e_profile(split)); }

Lemma3Bounds lemma3_bounds(std::size_t m2, std::size_t m3) {
    const auto a = static_cast<std::int64_t>(m2);
    const auto b = static_cast<std::int64_t>(m3);
    Lemma3Bounds bounds;
    bounds.within_d3 = binomial(b, 2);
    bounds.across = Rational(Integer(a * b), Integer(2));
    bounds.total = Rational(Integer(b * (a + b - 1)), Integer(2));
    return bounds;
}

namespace {

// Depth-first assignment of factors 1..m to pool columns (ascending) so that
// every required pair multiplies to a distinct column of H_r. The first
// complete assignment found is the lexicographically smallest.
class PairAssigner {
public:
    PairAssigner(std::span<const Column> pool, std::size_t m, std::span<const std::pair<Letter, Letter>> pairs,
                 std::uint32_t subspace_limit)
        : pool_(pool), m_(m), limit_(subspace_limit), assigned_(m, kIdentity), used_(pool.size(), false) {
        for (const auto& [c, d] : pairs) {
            const auto a = std::min(c.index, d.index);
            const auto b = std::max(c.index, d.index);
            if (a == 0 || b > m) fail(ErrorKind::validation, "required interaction names a factor outside 1..m");
            // Checked once the later factor of the pair is placed.
            closing_[b - 1].push_back(a - 1);
        }
    }

    bool run() { return place(0); }
    std::span<const Column> assignment() const { return assigned_; }

private:
    bool place(std::size_t factor) {
        if (factor == m_) return true;
        for (std::size_t c = 0; c < pool_.size(); ++c) {
            if (used_[c]) continue;
            const Column col = pool_[c];
            std::size_t added = 0;
            bool ok = true;
            for (std::size_t partner : closing_[factor]) {
                const Column product = col ^ assigned_[partner];
                if (product.bits >= limit_ ||
                    std::find(products_.begin(), products_.end(), product) != products_.end()) {
                    ok = false;
                    break;
                }
                products_.push_back(product);
                ++added;
            }
            if (ok) {
                used_[c] = true;
                assigned_[factor] = col;
                if (place(factor + 1)) return true;
                used_[c] = false;
            }
            products_.resize(products_.size() - added);
        }
        return false;
    }

    std::span<const Column> pool_;
    std::size_t m_;
    std::uint32_t limit_;
    std::vector<Column> assigned_;
    std::vector<bool> used_;
    std::vector<Column> products_;
    std::map<std::size_t, std::vector<std::size_t>> closing_;
};

}  // namespace

WeakConstruction construct_weak(int k, int r, std::size_t m, const WeakRequirement& requirement) {
    check_exponent(k);
    if (r < 1 || r > k - 1) fail(ErrorKind::domain, "sub-exponent r must lie in [1, k-1]");
    const std::uint32_t sub_limit = std::uint32_t{1} << r;
    std::vector<Column> pool;
    for (Column c : saturated_columns(k)) {
        if (c.bits >= sub_limit) pool.push_back(c);
    }
    if (m > pool.size()) {
        fail(ErrorKind::infeasible, std::to_string(m) + " major factors do not fit in the " +
                                        std::to_string(pool.size()) + " columns outside H_" + std::to_string(r));
    }

    std::vector<Column> d1;
    std::vector<Column> d2;
    std::vector<std::pair<Letter, Column>> entries;

    if (const auto* blocks = std::get_if<BlockRequirement>(&requirement)) {
        if (blocks->blocking_factors > static_cast<std::size_t>(r)) {
            fail(ErrorKind::infeasible, "block effects of " + std::to_string(blocks->blocking_factors) +
                                            " blocking factors do not fit in H_" + std::to_string(r));
        }
        d1.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
        for (std::uint32_t v = 1; v < (std::uint32_t{1} << blocks->blocking_factors); ++v) d2.push_back(Column{v});
        for (std::size_t i = 0; i < m; ++i) entries.emplace_back(treatment(static_cast<unsigned>(i + 1)), d1[i]);
        for (std::size_t b = 1; b <= blocks->blocking_factors; ++b) {
            entries.emplace_back(blocking(static_cast<unsigned>(b)), basis_column(static_cast<int>(b)));
        }
    } else {
        const auto& twofi = std::get<TwoFiRequirement>(requirement);
        if (twofi.size() > sub_limit - 1) {
            fail(ErrorKind::infeasible, std::to_string(twofi.size()) + " required interactions exceed the " +
                                            std::to_string(sub_limit - 1) + " columns of H_" + std::to_string(r));
        }
        PairAssigner assigner(pool, m, twofi.pairs(), sub_limit);
        if (!assigner.run()) {
            fail(ErrorKind::infeasible, "no assignment puts every required interaction on a distinct column of H_" +
                                            std::to_string(r));
        }
        d1.assign(assigner.assignment().begin(), assigner.assignment().end());
        for (std::size_t i = 0; i < m; ++i) entries.emplace_back(treatment(static_cast<unsigned>(i + 1)), d1[i]);
        FactorAssignment majors(k, entries);
        d2 = twofi_columns(majors, twofi);
    }

    std::vector<bool> taken(std::size_t{1} << k, false);
    for (Column c : d1) taken[c.bits] = true;
    for (Column c : d2) taken[c.bits] = true;
    std::vector<Column> d3;
    for (Column c : saturated_columns(k)) {
        if (!taken[c.bits]) d3.push_back(c);
    }
    const bool spans = m == pool.size();
    return WeakConstruction{SplitTriple(k, std::move(d1), std::move(d2), std::move(d3)),
                            FactorAssignment(k, std::move(entries)), r, spans};
}

}  // namespace aberrant
