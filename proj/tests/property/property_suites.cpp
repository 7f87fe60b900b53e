#include "property_suites.hpp"

#include <algorithm>
#include <random>

#include "aberrant/complementary.hpp"
#include "aberrant/gf2.hpp"
#include "oracles.hpp"

namespace aberrant::oracle {

namespace {

class Tally {
public:
    explicit Tally(std::string name) { r_.name = std::move(name); }

    void expect(bool ok, const std::string& what) {
        ++r_.checks;
        if (ok) return;
        if (r_.failures++ == 0) r_.first_failure = what;
    }
    SuiteResult result() && { return std::move(r_); }

private:
    SuiteResult r_;
};

// Random full-rank design with k basis letters and m >= k factors.
FactorAssignment random_design(int k, std::size_t m, std::mt19937_64& rng) {
    m = std::min(m, (std::size_t{1} << k) - 1);
    for (;;) {
        auto cols = random_columns(k, m, rng);
        if (gf2_rank(cols) != k) continue;
        std::shuffle(cols.begin(), cols.end(), rng);
        return assignment_from_columns(k, cols);
    }
}

Word random_effect(std::size_t m, std::mt19937_64& rng) {
    std::vector<Letter> letters;
    while (letters.empty()) {
        for (unsigned i = 1; i <= m; ++i)
            if (rng() & 1) letters.push_back(treatment(i));
    }
    return Word(std::move(letters));
}

SuiteResult krawtchouk_suite() {
    Tally t("krawtchouk");
    for (std::int64_t m = 0; m <= 12; ++m) {
        for (std::int64_t j = 0; j <= m; ++j) {
            t.expect(krawtchouk({.j = j, .x = 0, .m = m}) == generalized_binomial(m, j),
                     "P_j(0;m) != C(m,j) at m=" + std::to_string(m) + " j=" + std::to_string(j));
        }
        for (std::int64_t x = 0; x <= m + 3; ++x) {
            t.expect(krawtchouk({.j = 0, .x = x, .m = m}) == 1, "P_0 != 1 at m=" + std::to_string(m));
        }
        for (std::int64_t x = 0; x <= m; ++x) {
            for (std::int64_t j = 0; j <= m; ++j) {
                const Integer lhs = generalized_binomial(m, x) * krawtchouk({.j = j, .x = x, .m = m});
                const Integer rhs = generalized_binomial(m, j) * krawtchouk({.j = x, .x = j, .m = m});
                t.expect(lhs == rhs, "reciprocity at m=" + std::to_string(m));
            }
        }
    }
    return std::move(t).result();
}

SuiteResult subgroup_suite(std::mt19937_64& rng) {
    Tally t("defining subgroup");
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 3 + trial % 3;
        const std::size_t m = static_cast<std::size_t>(k) + 1 + static_cast<std::size_t>(trial) % 5;
        const FactorAssignment a = random_design(k, m, rng);
        const DefiningSubgroup g = defining_subgroup(a);
        const std::size_t p = a.size() - static_cast<std::size_t>(k);
        t.expect(g.size() == (std::size_t{1} << p), "cardinality 2^p");
        t.expect(g.generator_count() == static_cast<int>(p), "generator count");
        t.expect(g.contains(Word{}), "identity word");
        for (const Word& w : g.words()) t.expect(word_column(a, w).is_identity(), "word column is I");
        for (const Word& x : g.words())
            for (const Word& y : g.words()) t.expect(g.contains(symmetric_difference(x, y)), "closure");
    }
    return std::move(t).result();
}

SuiteResult alias_suite(std::mt19937_64& rng) {
    Tally t("alias relation");
    for (int trial = 0; trial < 80; ++trial) {
        const int k = 3 + trial % 2;
        const std::size_t m = static_cast<std::size_t>(k) + 2 + static_cast<std::size_t>(trial) % 3;
        const FactorAssignment a = random_design(k, m, rng);
        std::vector<Word> effects;
        for (int i = 0; i < 12; ++i) effects.push_back(random_effect(a.size(), rng));
        for (const Word& x : effects) {
            t.expect(is_aliased(a, x, x), "reflexive");
            for (const Word& y : effects) {
                const bool xy = is_aliased(a, x, y);
                t.expect(xy == is_aliased(a, y, x), "symmetric");
                for (const Word& z : effects) {
                    if (xy && is_aliased(a, y, z)) t.expect(is_aliased(a, x, z), "transitive");
                }
            }
        }
    }
    return std::move(t).result();
}

SuiteResult model_matrix_suite(std::mt19937_64& rng) {
    Tally t("model matrix vs alias");
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 2 + trial % 3;
        const std::size_t m = static_cast<std::size_t>(k) + static_cast<std::size_t>(trial) % 4;
        const FactorAssignment a = random_design(k, m, rng);
        std::vector<Word> effects;
        for (int i = 0; i < 10; ++i) effects.push_back(random_effect(a.size(), rng));
        const SignMatrix x = model_matrix(a, effects);
        const auto n = static_cast<std::int64_t>(a.runs());
        t.expect(x.rows() == a.runs() && x.cols() == effects.size(), "shape");
        for (std::size_t i = 0; i < effects.size(); ++i) {
            for (std::size_t j = 0; j < effects.size(); ++j) {
                const std::int64_t dot = x.column_dot(i, x, j);
                const bool aliased = is_aliased(a, effects[i], effects[j]);
                t.expect(aliased ? dot == n : dot == 0, "columns equal iff aliased, orthogonal otherwise");
            }
        }
    }
    return std::move(t).result();
}

}  // namespace

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(krawtchouk_suite());
    out.push_back(subgroup_suite(rng));
    out.push_back(alias_suite(rng));
    out.push_back(model_matrix_suite(rng));
    return out;
}

}  // namespace aberrant::oracle
