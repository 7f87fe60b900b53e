#include "aberrant/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <numeric>
#include <set>
#include <thread>

#include "aberrant/combinatorics.hpp"
#include "aberrant/complementary.hpp"
#include "aberrant/error.hpp"
#include "aberrant/wlp.hpp"

namespace aberrant {

bool candidate_less(const CandidateDesign& a, const CandidateDesign& b) {
    auto sa = a.d1;
    auto sb = b.d1;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return std::tie(sa, a.d2, a.d1) < std::tie(sb, b.d2, b.d1);
}

std::size_t extra_columns(const SearchVariant& variant) {
    struct {
        std::size_t operator()(const PlainVariant&) const { return 0; }
        std::size_t operator()(const BlockedVariant& v) const { return (std::size_t{1} << v.m1) - 1; }
        std::size_t operator()(const TwoFiVariant& v) const { return v.pairs.size(); }
        std::size_t operator()(const GeneralVariant& v) const { return v.s; }
    } visitor;
    return std::visit(visitor, variant);
}

namespace {

TwoFiRequirement requirement_of(const TwoFiVariant& v) {
    std::vector<std::pair<Letter, Letter>> pairs;
    for (auto [a, b] : v.pairs) pairs.emplace_back(treatment(a), treatment(b));
    return TwoFiRequirement(std::move(pairs));
}

// Distinct factors named by the pairs, ascending, 0-based.
std::vector<std::size_t> involved_factors(const TwoFiVariant& v) {
    std::vector<std::size_t> f;
    for (auto [a, b] : v.pairs) {
        f.push_back(a - 1);
        f.push_back(b - 1);
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

}  // namespace

void validate(const SearchSpec& spec) {
    check_exponent(spec.k);
    if (spec.k > kMaxSearchExponent) {
        fail(ErrorKind::capacity, "exhaustive search covers k <= " + std::to_string(kMaxSearchExponent));
    }
    const std::size_t columns = (std::size_t{1} << spec.k) - 1;
    if (spec.m < 2) fail(ErrorKind::domain, "search needs at least two major factors");
    if (const auto* b = std::get_if<BlockedVariant>(&spec.variant); b && (b->m1 == 0 || b->m1 >= 31)) {
        fail(ErrorKind::domain, "blocked search needs 1 <= m1");
    }
    const std::size_t s = extra_columns(spec.variant);
    if (spec.m + s > columns) {
        fail(ErrorKind::capacity, std::to_string(spec.m) + " factors plus " + std::to_string(s) +
                                      " extra columns exceed the " + std::to_string(columns) + " columns of H_" +
                                      std::to_string(spec.k));
    }
    if (const auto* t = std::get_if<TwoFiVariant>(&spec.variant)) {
        requirement_of(*t);
        for (auto [a, b] : t->pairs) {
            if (a == 0 || b == 0 || a > spec.m || b > spec.m) {
                fail(ErrorKind::validation, "required interaction names a factor outside 1.." + std::to_string(spec.m));
            }
        }
    }
    if (spec.criterion == Criterion::minimum_aberration && !std::holds_alternative<PlainVariant>(spec.variant)) {
        fail(ErrorKind::domain, "minimum aberration ranks plain designs only");
    }
    if (spec.limits.max_nodes == 0 || !(spec.limits.max_seconds > 0) || spec.limits.threads == 0) {
        fail(ErrorKind::domain, "search budgets must be positive");
    }
}

SubsetCursor::SubsetCursor(std::size_t n, std::size_t m, std::uint64_t rank) : n_(n), idx_(m) {
    // Unrank in the combinatorial number system, lexicographic order.
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        while (true) {
            const std::uint64_t after = binomial(static_cast<std::int64_t>(n - next - 1),
                                                 static_cast<std::int64_t>(m - pos - 1));
            if (rank < after || next + 1 >= n) break;
            rank -= after;
            ++next;
        }
        idx_[pos] = next++;
    }
}

bool SubsetCursor::next() {
    const std::size_t m = idx_.size();
    std::size_t pos = m;
    while (pos > 0 && idx_[pos - 1] == n_ - m + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx_[pos - 1];
    for (std::size_t i = pos; i < m; ++i) idx_[i] = idx_[i - 1] + 1;
    return true;
}

BasisPermutationFilter::BasisPermutationFilter(int k) : k_(k) {
    check_exponent(k);
    if (k > kMaxSearchExponent) fail(ErrorKind::capacity, "basis permutation pruning covers k <= 6");
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    const std::uint32_t n = std::uint32_t{1} << k;
    do {
        std::vector<std::uint32_t> image(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            std::uint32_t w = 0;
            for (int b = 0; b < k; ++b) {
                if (v >> b & 1) w |= std::uint32_t{1} << perm[static_cast<std::size_t>(b)];
            }
            image[v] = w;
        }
        images_.push_back(std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

bool BasisPermutationFilter::is_canonical(std::span<const Column> sorted_columns) const {
    std::vector<std::uint32_t> mapped(sorted_columns.size());
    for (const auto& image : images_) {
        for (std::size_t i = 0; i < sorted_columns.size(); ++i) mapped[i] = image[sorted_columns[i].bits];
        std::sort(mapped.begin(), mapped.end());
        for (std::size_t i = 0; i < mapped.size(); ++i) {
            if (mapped[i] != sorted_columns[i].bits) {
                if (mapped[i] < sorted_columns[i].bits) return false;
                break;
            }
        }
    }
    return true;
}

std::vector<std::vector<Column>> enumerate_designs(int k, std::size_t m, bool symmetry_pruning) {
    check_exponent(k);
    const std::size_t n = (std::size_t{1} << k) - 1;
    if (m > n) fail(ErrorKind::capacity, "cannot choose " + std::to_string(m) + " of " + std::to_string(n) + " columns");
    if (m == 0) return {{}};
    std::optional<BasisPermutationFilter> filter;
    if (symmetry_pruning) filter.emplace(k);
    const int rank = static_cast<int>(std::min<std::size_t>(m, static_cast<std::size_t>(k)));
    std::vector<std::vector<Column>> out;
    SubsetCursor cursor(n, m);
    std::vector<Column> cols(m);
    do {
        for (std::size_t i = 0; i < m; ++i) cols[i] = Column{static_cast<std::uint32_t>(cursor.current()[i] + 1)};
        if (gf2_rank(cols) != rank) continue;
        if (filter && !filter->is_canonical(cols)) continue;
        out.push_back(cols);
    } while (cursor.next());
    return out;
}

SearchResult minimize_sequential(std::span<const CandidateDesign> candidates, const Objective& objective) {
    if (candidates.empty()) fail(ErrorKind::no_candidate, "no candidate designs to compare");
    SearchResult result;
    for (const CandidateDesign& c : candidates) {
        auto value = objective(c);
        ++result.explored;
        if (result.best.empty()) {
            result.objective = std::move(value);
            result.best.push_back(c);
            continue;
        }
        const auto order = lex_compare(value, result.objective);
        if (order < 0) {
            result.objective = std::move(value);
            result.best.assign(1, c);
        } else if (order == 0) {
            result.best.push_back(c);
        }
    }
    std::sort(result.best.begin(), result.best.end(), candidate_less);
    return result;
}

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
public:
    explicit Budget(const SearchLimits& limits) : max_nodes_(limits.max_nodes) {
        if (limits.max_seconds < 1e9) {
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(limits.max_seconds));
        }
    }

    /// Reserves one node; false once a budget is exhausted.
    bool charge() {
        if (stopped_.load(std::memory_order_relaxed)) return false;
        const std::uint64_t n = taken_.fetch_add(1, std::memory_order_relaxed);
        if (n >= max_nodes_) {
            stopped_ = true;
            return false;
        }
        if (deadline_ && (n & 63) == 0 && Clock::now() > *deadline_) {
            stopped_ = true;
            return false;
        }
        scored_.fetch_add(1, std::memory_order_relaxed);
        return true;
    }

    bool stopped() const { return stopped_.load(std::memory_order_relaxed); }
    std::uint64_t scored() const { return scored_.load(); }

private:
    std::uint64_t max_nodes_;
    std::optional<Clock::time_point> deadline_;
    std::atomic<std::uint64_t> taken_{0};
    std::atomic<std::uint64_t> scored_{0};
    std::atomic<bool> stopped_{false};
};

// Running optimum; `maximize` flips the lexicographic direction.
struct Best {
    bool maximize = false;
    std::vector<std::uint64_t> objective;
    std::vector<CandidateDesign> designs;

    void offer(std::vector<std::uint64_t> value, CandidateDesign candidate) {
        if (designs.empty()) {
            objective = std::move(value);
            designs.push_back(std::move(candidate));
            return;
        }
        auto order = lex_compare(value, objective);
        if (maximize) order = 0 <=> order;
        if (order < 0) {
            objective = std::move(value);
            designs.assign(1, std::move(candidate));
        } else if (order == 0) {
            designs.push_back(std::move(candidate));
        }
    }

    void merge(Best&& other) {
        if (other.designs.empty()) return;
        if (designs.empty()) {
            *this = std::move(other);
            return;
        }
        auto order = lex_compare(other.objective, objective);
        if (maximize) order = 0 <=> order;
        if (order < 0) {
            *this = std::move(other);
        } else if (order == 0) {
            designs.insert(designs.end(), std::make_move_iterator(other.designs.begin()),
                           std::make_move_iterator(other.designs.end()));
        }
    }
};

std::vector<Column> columns_of(std::span<const std::size_t> idx) {
    std::vector<Column> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = Column{static_cast<std::uint32_t>(idx[i] + 1)};
    return out;
}

std::vector<Column> complement_of(std::span<const Column> sorted, int k) {
    std::vector<Column> out;
    std::size_t p = 0;
    for (std::uint32_t v = 1; v < (std::uint32_t{1} << k); ++v) {
        if (p < sorted.size() && sorted[p].bits == v) {
            ++p;
        } else {
            out.push_back(Column{v});
        }
    }
    return out;
}

// Nonzero sets of the m1-dimensional subspaces contained in pool u {I}.
std::vector<std::vector<Column>> subspaces_within(std::span<const Column> pool, std::size_t m1, int k) {
    std::vector<bool> in_pool(std::size_t{1} << k, false);
    for (Column c : pool) in_pool[c.bits] = true;
    std::set<std::vector<Column>> found;
    std::vector<Column> span{kIdentity};
    auto grow = [&](auto&& self, std::size_t dim, std::uint32_t floor) -> void {
        if (dim == m1) {
            std::vector<Column> nonzero(span.begin() + 1, span.end());
            std::sort(nonzero.begin(), nonzero.end());
            found.insert(std::move(nonzero));
            return;
        }
        for (Column v : pool) {
            if (v.bits <= floor) continue;
            bool ok = true;
            for (Column s : span) {
                if (!in_pool[(s ^ v).bits]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const std::size_t size = span.size();
            for (std::size_t i = 0; i < size; ++i) span.push_back(span[i] ^ v);
            self(self, dim + 1, v.bits);
            span.resize(size);
        }
    };
    grow(grow, 0, 0);
    return {found.begin(), found.end()};
}

// First labelling (ascending columns, factors in order) of the involved
// factors with D1 columns whose pair products are distinct and avoid D1. With
// `target`, the products must also lie in it.
class LabelSearch {
public:
    LabelSearch(const TwoFiVariant& v, std::size_t m) : involved_(involved_factors(v)), slot_(m, 0) {
        for (std::size_t i = 0; i < involved_.size(); ++i) slot_[involved_[i]] = i;
        closing_.resize(involved_.size());
        for (auto [a, b] : v.pairs) {
            const std::size_t x = slot_[a - 1];
            const std::size_t y = slot_[b - 1];
            closing_[std::max(x, y)].push_back(std::min(x, y));
        }
    }

    std::size_t involved_count() const noexcept { return involved_.size(); }

    /// Calls visit(labels, products) for every valid labelling, in
    /// lexicographic order; visit returns false to stop.
    template <typename Visit>
    void each(std::span<const Column> d1, const std::vector<bool>& forbidden, const std::vector<bool>* target,
              Visit&& visit) {
        labels_.assign(involved_.size(), kIdentity);
        used_.assign(d1.size(), false);
        products_.clear();
        taken_.assign(forbidden.size(), false);
        place(0, d1, forbidden, target, visit);
    }

    /// D1 in factor order for a labelling.
    std::vector<Column> factor_order(std::span<const Column> d1, std::span<const Column> labels) const {
        std::vector<Column> out(slot_.size(), kIdentity);
        std::vector<bool> used(d1.size(), false);
        for (std::size_t i = 0; i < involved_.size(); ++i) {
            out[involved_[i]] = labels[i];
            for (std::size_t c = 0; c < d1.size(); ++c) {
                if (d1[c] == labels[i]) used[c] = true;
            }
        }
        std::size_t c = 0;
        for (std::size_t f = 0; f < out.size(); ++f) {
            if (std::find(involved_.begin(), involved_.end(), f) != involved_.end()) continue;
            while (used[c]) ++c;
            out[f] = d1[c++];
        }
        return out;
    }

private:
    template <typename Visit>
    bool place(std::size_t pos, std::span<const Column> d1, const std::vector<bool>& forbidden,
               const std::vector<bool>* target, Visit& visit) {
        if (pos == involved_.size()) return visit(std::span<const Column>(labels_), std::span<const Column>(products_));
        for (std::size_t c = 0; c < d1.size(); ++c) {
            if (used_[c]) continue;
            const Column col = d1[c];
            std::size_t added = 0;
            bool ok = true;
            for (std::size_t partner : closing_[pos]) {
                const Column p = col ^ labels_[partner];
                if (forbidden[p.bits] || taken_[p.bits] || (target && !(*target)[p.bits])) {
                    ok = false;
                    break;
                }
                taken_[p.bits] = true;
                products_.push_back(p);
                ++added;
            }
            if (ok) {
                used_[c] = true;
                labels_[pos] = col;
                if (!place(pos + 1, d1, forbidden, target, visit)) return false;
                used_[c] = false;
            }
            for (std::size_t i = 0; i < added; ++i) {
                taken_[products_.back().bits] = false;
                products_.pop_back();
            }
        }
        return true;
    }

    std::vector<std::size_t> involved_;
    std::vector<std::size_t> slot_;
    std::vector<std::vector<std::size_t>> closing_;
    std::vector<Column> labels_;
    std::vector<bool> used_;
    std::vector<Column> products_;
    std::vector<bool> taken_;
};

std::vector<std::uint64_t> direct_objective(const SearchSpec& spec, const SubsetXorTable& t1,
                                            std::span<const Column> d2) {
    const std::size_t m = spec.m;
    auto a = [&](std::size_t i) { return t1(i, kIdentity); };
    if (spec.criterion == Criterion::minimum_aberration) {
        std::vector<std::uint64_t> out;
        for (std::size_t i = 3; i <= m; ++i) out.push_back(a(i));
        return out;
    }
    const std::size_t last = spec.criterion == Criterion::weak ? 2 : m;
    std::vector<std::uint64_t> out;
    for (std::size_t j = 2; j <= last; ++j) {
        std::uint64_t n = (j + 1) * a(j + 1) + (m - j + 1) * a(j - 1);
        for (Column d : d2) n += t1(j, d);
        out.push_back(n);
    }
    if (std::holds_alternative<TwoFiVariant>(spec.variant)) out[0] -= d2.size();
    return out;
}

// Splits [0, total) into contiguous ranges, one per thread, and merges the
// per-range optima.
template <typename Work>
Best run_partitioned(std::uint64_t total, unsigned threads, bool maximize, Work&& work) {
    const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
    std::vector<Best> partial(parts);
    for (Best& b : partial) b.maximize = maximize;
    if (parts == 1) {
        work(0, total, partial[0]);
    } else {
        std::vector<std::jthread> workers;
        for (std::uint64_t t = 0; t < parts; ++t) {
            workers.emplace_back([&, t] { work(total * t / parts, total * (t + 1) / parts, partial[t]); });
        }
    }
    Best merged;
    merged.maximize = maximize;
    for (Best& b : partial) merged.merge(std::move(b));
    return merged;
}

SearchResult finish(Best&& best, const Budget& budget) {
    SearchResult result;
    std::sort(best.designs.begin(), best.designs.end(), candidate_less);
    best.designs.erase(std::unique(best.designs.begin(), best.designs.end()), best.designs.end());
    result.best = std::move(best.designs);
    result.objective = std::move(best.objective);
    result.explored = budget.scored();
    result.exhaustive = !budget.stopped();
    if (result.best.empty() && result.exhaustive) fail(ErrorKind::no_candidate, "no design satisfies the search spec");
    return result;
}

int full_rank(std::size_t m, int k) { return static_cast<int>(std::min<std::size_t>(m, static_cast<std::size_t>(k))); }

}  // namespace

SearchResult direct_search(const SearchSpec& spec) {
    validate(spec);
    const int k = spec.k;
    const std::size_t n = (std::size_t{1} << k) - 1;
    const std::size_t m = spec.m;
    const std::size_t s = extra_columns(spec.variant);
    std::optional<BasisPermutationFilter> filter;
    if (spec.limits.symmetry_pruning) filter.emplace(k);
    Budget budget(spec.limits);

    auto work = [&](std::uint64_t begin, std::uint64_t end, Best& best) {
        if (begin >= end) return;
        SubsetCursor cursor(n, m, begin);
        std::optional<LabelSearch> labels;
        if (const auto* t = std::get_if<TwoFiVariant>(&spec.variant)) labels.emplace(*t, m);
        for (std::uint64_t r = begin; r < end && !budget.stopped(); ++r, cursor.next()) {
            const std::vector<Column> d1 = columns_of(cursor.current());
            if (gf2_rank(d1) != full_rank(m, k)) continue;
            if (filter && !filter->is_canonical(d1)) continue;
            const SubsetXorTable t1(d1, k);
            const std::vector<Column> rest = complement_of(d1, k);
            auto score = [&](std::vector<Column> factor_d1, std::vector<Column> d2) {
                if (!budget.charge()) return false;
                auto value = direct_objective(spec, t1, d2);
                best.offer(std::move(value), CandidateDesign{std::move(factor_d1), std::move(d2)});
                return true;
            };
            if (std::holds_alternative<PlainVariant>(spec.variant)) {
                score(d1, {});
            } else if (std::holds_alternative<GeneralVariant>(spec.variant)) {
                if (s == 0) {
                    score(d1, {});
                    continue;
                }
                SubsetCursor inner(rest.size(), s);
                do {
                    std::vector<Column> d2;
                    for (std::size_t i : inner.current()) d2.push_back(rest[i]);
                    if (!score(d1, std::move(d2))) break;
                } while (inner.next());
            } else if (const auto* b = std::get_if<BlockedVariant>(&spec.variant)) {
                for (auto& d2 : subspaces_within(rest, b->m1, k)) {
                    if (!score(d1, std::move(d2))) break;
                }
            } else {
                std::vector<bool> in_d1(n + 1, false);
                for (Column c : d1) in_d1[c.bits] = true;
                std::set<std::vector<Column>> seen;
                bool go = true;
                labels->each(d1, in_d1, nullptr, [&](std::span<const Column> lab, std::span<const Column> prod) {
                    std::vector<Column> d2(prod.begin(), prod.end());
                    std::sort(d2.begin(), d2.end());
                    if (!seen.insert(d2).second) return true;
                    go = score(labels->factor_order(d1, lab), std::move(d2));
                    return go;
                });
            }
        }
    };
    const std::uint64_t total = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m));
    (void)s;
    return finish(run_partitioned(total, spec.limits.threads, false, work), budget);
}

namespace {

// Shared walk over (D2, D3) splits for complement and weak search. `score`
// receives the factor-ordered D1, D2 and D3.
template <typename Score>
Best walk_splits(const SearchSpec& spec, Budget& budget, bool maximize, Score&& score) {
    const int k = spec.k;
    const std::size_t n = (std::size_t{1} << k) - 1;
    const std::size_t m = spec.m;
    const std::size_t s = extra_columns(spec.variant);
    const std::size_t m3 = n - m - s;
    std::optional<BasisPermutationFilter> filter;
    if (spec.limits.symmetry_pruning) filter.emplace(k);

    auto work = [&](std::uint64_t begin, std::uint64_t end, Best& best) {
        if (begin >= end) return;
        SubsetCursor cursor(n, m3, begin);
        std::optional<LabelSearch> labels;
        if (const auto* t = std::get_if<TwoFiVariant>(&spec.variant)) labels.emplace(*t, m);
        for (std::uint64_t r = begin; r < end && !budget.stopped(); ++r, cursor.next()) {
            const std::vector<Column> d3 = columns_of(cursor.current());
            if (filter && !filter->is_canonical(d3)) continue;
            const std::vector<Column> rest = complement_of(d3, k);
            auto take = [&](std::vector<Column> d1, std::vector<Column> d2, std::vector<Column> factor_d1) {
                if (gf2_rank(d1) != full_rank(m, k)) return true;
                if (!budget.charge()) return false;
                score(best, std::move(factor_d1), std::move(d2), d3);
                return true;
            };
            auto split_off = [&](const std::vector<Column>& d2) {
                std::vector<Column> d1;
                std::set_difference(rest.begin(), rest.end(), d2.begin(), d2.end(), std::back_inserter(d1));
                return d1;
            };
            if (s == 0) {
                if (!labels) {
                    take(rest, {}, rest);
                    continue;
                }
            }
            if (std::holds_alternative<GeneralVariant>(spec.variant)) {
                SubsetCursor inner(rest.size(), s);
                do {
                    std::vector<Column> d2;
                    for (std::size_t i : inner.current()) d2.push_back(rest[i]);
                    auto d1 = split_off(d2);
                    if (!take(d1, std::move(d2), d1)) break;
                } while (inner.next());
            } else if (const auto* b = std::get_if<BlockedVariant>(&spec.variant)) {
                for (auto& d2 : subspaces_within(rest, b->m1, k)) {
                    auto d1 = split_off(d2);
                    if (!take(d1, std::move(d2), d1)) break;
                }
            } else if (labels) {
                SubsetCursor inner(rest.size(), s);
                bool go = true;
                do {
                    std::vector<Column> d2;
                    for (std::size_t i : inner.current()) d2.push_back(rest[i]);
                    const auto d1 = split_off(d2);
                    std::vector<bool> in_d1(n + 1, false);
                    std::vector<bool> in_d2(n + 1, false);
                    for (Column c : d1) in_d1[c.bits] = true;
                    for (Column c : d2) in_d2[c.bits] = true;
                    std::optional<std::vector<Column>> factor_d1;
                    labels->each(d1, in_d1, &in_d2, [&](std::span<const Column> lab, std::span<const Column>) {
                        factor_d1 = labels->factor_order(d1, lab);
                        return false;
                    });
                    if (factor_d1) go = take(d1, std::move(d2), std::move(*factor_d1));
                } while (go && inner.next());
            }
        }
    };
    const std::uint64_t total = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m3));
    return run_partitioned(total, spec.limits.threads, maximize, work);
}

}  // namespace

SearchResult complement_search(const SearchSpec& spec) {
    validate(spec);
    const std::size_t s = extra_columns(spec.variant);
    const bool twofi = std::holds_alternative<TwoFiVariant>(spec.variant);
    const Theorem2Evaluator evaluator(spec.m, s, spec.k);
    Budget budget(spec.limits);
    Best best = walk_splits(spec, budget, false,
                            [&](Best& sink, std::vector<Column> d1, std::vector<Column> d2, std::span<const Column> d3) {
                                const EProfile profile = e_profile(d2, d3, spec.k);
                                std::vector<std::uint64_t> value;
                                if (spec.criterion == Criterion::minimum_aberration) {
                                    const Wlp wlp = complement_wlp(column_wlp(d3, spec.k), spec.m, spec.k);
                                    value = wlp.tail(3);
                                    value.resize(spec.m - 2, 0);
                                } else {
                                    const std::size_t last = spec.criterion == Criterion::weak ? 2 : spec.m;
                                    for (std::size_t j = 2; j <= last; ++j) value.push_back(evaluator.evaluate(profile, j));
                                    if (twofi) value[0] -= s;
                                }
                                sink.offer(std::move(value), CandidateDesign{std::move(d1), std::move(d2)});
                            });
    return finish(std::move(best), budget);
}

SearchResult weak_search(const SearchSpec& spec) {
    validate(spec);
    if (spec.criterion == Criterion::minimum_aberration) fail(ErrorKind::domain, "weak search ranks by N_2");
    const std::size_t s = extra_columns(spec.variant);
    const bool twofi = std::holds_alternative<TwoFiVariant>(spec.variant);
    const Theorem2Evaluator evaluator(spec.m, s, spec.k);
    Budget budget(spec.limits);
    Best best = walk_splits(spec, budget, true,
                            [&](Best& sink, std::vector<Column> d1, std::vector<Column> d2, std::span<const Column> d3) {
                                const EProfile profile = e_profile(d2, d3, spec.k);
                                sink.offer({g_value(profile)}, CandidateDesign{std::move(d1), std::move(d2)});
                            });
    SearchResult result = finish(std::move(best), budget);
    if (!result.best.empty()) {
        result.g = result.objective.front();
        const CandidateDesign& first = result.best.front();
        std::vector<Column> used(first.d1.begin(), first.d1.end());
        used.insert(used.end(), first.d2.begin(), first.d2.end());
        std::sort(used.begin(), used.end());
        const std::vector<Column> d3 = complement_of(used, spec.k);
        std::uint64_t n2 = evaluator.evaluate(e_profile(first.d2, d3, spec.k), 2);
        if (twofi) n2 -= s;
        result.objective = {n2};
    }
    return result;
}

std::vector<std::uint64_t> closed_form_objective(const SearchSpec& spec, const CandidateDesign& candidate) {
    const SubsetXorTable t1(candidate.d1, spec.k);
    return direct_objective(spec, t1, candidate.d2);
}

FactorAssignment candidate_assignment(const SearchSpec& spec, const CandidateDesign& candidate) {
    std::vector<std::pair<Letter, Column>> entries;
    for (std::size_t i = 0; i < candidate.d1.size(); ++i) {
        entries.emplace_back(treatment(static_cast<unsigned>(i + 1)), candidate.d1[i]);
    }
    if (std::holds_alternative<BlockedVariant>(spec.variant)) {
        std::vector<Column> basis;
        for (Column c : candidate.d2) {
            basis.push_back(c);
            if (gf2_rank(basis) != static_cast<int>(basis.size())) basis.pop_back();
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            entries.emplace_back(blocking(static_cast<unsigned>(i + 1)), basis[i]);
        }
    }
    return FactorAssignment(spec.k, std::move(entries));
}

std::vector<std::uint64_t> oracle_objective(const SearchSpec& spec, const CandidateDesign& candidate) {
    std::vector<std::uint64_t> out;
    if (spec.criterion == Criterion::minimum_aberration) {
        const FactorAssignment a = candidate_assignment(spec, candidate);
        const Wlp wlp = word_length_pattern(defining_subgroup(a), candidate.d1.size());
        out = wlp.tail(3);
        out.resize(spec.m - 2, 0);
        return out;
    }
    GeneralWlp n{std::vector<std::uint64_t>{}};
    if (std::holds_alternative<PlainVariant>(spec.variant)) {
        const FactorAssignment a = candidate_assignment(spec, candidate);
        n = general_wlp_oracle(a, hierarchical_grouping(a.letters(), 1));
    } else if (std::holds_alternative<BlockedVariant>(spec.variant)) {
        const FactorAssignment a = candidate_assignment(spec, candidate);
        n = general_wlp_oracle(a, blocked_main_grouping(a));
    } else if (const auto* t = std::get_if<TwoFiVariant>(&spec.variant)) {
        const FactorAssignment a = candidate_assignment(spec, candidate);
        n = general_wlp_oracle(a, twofi_grouping(a, requirement_of(*t)));
    } else {
        const AugmentedOracleSetup setup =
            augmented_oracle_setup(AugmentedDesign(assignment_from_columns(spec.k, candidate.d1), candidate.d2));
        n = general_wlp_oracle(setup.assignment, setup.grouping);
    }
    out.assign(n.counts().begin(), n.counts().end());
    if (spec.criterion == Criterion::weak) out.resize(1);
    return out;
}

}  // namespace aberrant
