#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "aberrant/complementary.hpp"
#include "aberrant/criteria.hpp"
#include "aberrant/search.hpp"
#include "aberrant/wlp.hpp"

namespace aberrant::cli {

namespace {

Report indexed(std::string_view symbol, std::span<const std::uint64_t> values, std::size_t first) {
    Report out = Report::object();
    for (std::size_t i = 0; i < values.size(); ++i) out[std::string(symbol) + std::to_string(first + i)] = values[i];
    return out;
}

Report wlp_object(const Wlp& wlp) {
    const auto c = wlp.counts();
    return indexed("A", c.subspan(1), 1);
}

Report n_object(const GeneralWlp& n) { return indexed("N", n.counts(), 2); }

Report columns(std::span<const Column> cols) {
    Report out = Report::array();
    for (Column c : cols) out.push_back(to_string(c));
    return out;
}

Report echo(const DesignSpecFile& spec) {
    Report in = Report::object();
    in["runs"] = spec.runs;
    Report factors = Report::array();
    for (const Token& t : spec.factors) factors.push_back(t.text);
    in["factors"] = factors;
    auto lines = [](const std::vector<GeneratorLine>& gs) {
        Report out = Report::array();
        for (const GeneratorLine& g : gs) {
            std::string s = g.name.text;
            if (!g.rhs.empty()) s += " = " + rhs_text(g.rhs);
            out.push_back(s);
        }
        return out;
    };
    if (!spec.generators.empty()) in["generators"] = lines(spec.generators);
    if (!spec.blocks.empty()) in["blocks"] = lines(spec.blocks);
    if (!spec.interactions.empty()) {
        Report pairs = Report::array();
        for (const auto& [a, b] : spec.interactions) pairs.push_back("(" + a.text + "," + b.text + ")");
        in["interactions"] = pairs;
    }
    if (spec.grouping_q) in["grouping"] = "q=" + std::to_string(*spec.grouping_q);
    return in;
}

void require_criterion(std::string_view command, const std::string& criterion,
                       std::initializer_list<std::string_view> allowed) {
    if (criterion.empty()) return;
    if (std::find(allowed.begin(), allowed.end(), criterion) == allowed.end()) {
        fail(ErrorKind::validation, "criterion " + criterion + " does not apply to " + std::string(command));
    }
}

std::string pick(const std::string& criterion, std::string_view fallback) {
    return criterion.empty() ? std::string(fallback) : criterion;
}

Report word_list(const ResolvedDesign& design, std::span<const Word> words) {
    Report out = Report::array();
    for (const Word& w : words) out.push_back(design.word_name(w));
    return out;
}

Report cmd_wlp(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("wlp", opt.criterion, {"main", "q2"});
    const ResolvedDesign design = resolve(spec);
    const FactorAssignment trt = design.assignment.restricted(LetterKind::treatment);
    const std::size_t m = trt.size();
    const DefiningSubgroup subgroup = defining_subgroup(trt);
    const Wlp wlp = word_length_pattern(subgroup, m);
    Report r = Report::object();
    r["k"] = design.k;
    r["p"] = subgroup.generator_count();
    r["resolution"] = resolution(wlp).to_string();
    r["wlp"] = wlp_object(wlp);
    r["defining_words"] = word_list(design, independent_defining_words(trt));
    if (subgroup.size() <= 64) {
        std::vector<Word> words(subgroup.words().begin() + 1, subgroup.words().end());
        r["defining_relation"] = word_list(design, words);
    }
    const std::string criterion = pick(opt.criterion, "main");
    r["criterion"] = criterion;
    r["N"] = n_object(criterion == "main" ? n_from_wlp_main(wlp, m) : n_from_wlp_q(wlp, m, 2));
    return r;
}

bool bias_norm_feasible(const FactorAssignment& a) { return a.runs() <= 256 && a.size() <= 16; }

Report cmd_general_wlp(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("general-wlp", opt.criterion, {"main", "q2"});
    const ResolvedDesign design = resolve(spec);
    const FactorAssignment trt = design.assignment.restricted(LetterKind::treatment);
    const std::size_t m = trt.size();
    std::size_t q = spec.grouping_q.value_or(1);
    if (opt.criterion == "main") q = 1;
    if (opt.criterion == "q2") q = 2;
    const EffectGrouping grouping = hierarchical_grouping(trt.letters(), q);
    const Wlp wlp = column_wlp(trt.columns(), trt.exponent());
    Report r = Report::object();
    r["grouping"] = "q=" + std::to_string(q);
    r["wlp"] = wlp_object(wlp);
    const GeneralWlp oracle = general_wlp_oracle(trt, grouping);
    r["N_alias"] = n_object(oracle);
    try {
        r["N_closed_form"] = n_object(n_from_wlp_q(wlp, m, q));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::precondition) throw;
        r["N_closed_form"] = std::string("not applicable: ") + e.what();
    }
    if (bias_norm_feasible(trt)) {
        std::vector<std::uint64_t> norms;
        for (std::size_t j = 2; j <= grouping.group_count(); ++j) norms.push_back(bias_norm_oracle(trt, grouping, j));
        r["N_bias_norm"] = indexed("N", norms, 2);
    }
    return r;
}

Report cmd_blocked_wlp(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("blocked-wlp", opt.criterion, {"blocked-main", "blocked-2fi"});
    const ResolvedDesign resolved = resolve(spec);
    if (resolved.assignment.count(LetterKind::blocking) == 0) {
        fail(ErrorKind::validation, "blocked-wlp needs a blocks: section");
    }
    const BlockedDesign design(resolved.assignment);
    const BlockedCounts& counts = design.counts();
    const std::size_t m = design.treatment_count();
    const std::string criterion = pick(opt.criterion, "blocked-main");
    Report r = Report::object();
    r["criterion"] = criterion;
    r["A"] = indexed("A", std::span(counts.a).subspan(1), 1);
    r["B"] = indexed("B", counts.b, 0);
    if (criterion == "blocked-main") {
        r["N"] = n_object(blocked_n_main(counts, m));
        r["N_alias"] = n_object(general_wlp_oracle(resolved.assignment, blocked_main_grouping(resolved.assignment)));
    } else {
        r["N"] = n_object(blocked_n_twofi(counts, m));
        r["N_alias"] = n_object(general_wlp_oracle(resolved.assignment, blocked_twofi_grouping(resolved.assignment)));
    }
    const RivalVectors rivals = rival_vectors(counts, m);
    Report rv = Report::object();
    rv["interleaved"] = rivals.interleaved;
    rv["merged"] = rivals.merged;
    r["rival_vectors"] = rv;
    return r;
}

Report cmd_twofi_wlp(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("twofi-wlp", opt.criterion, {"twofi"});
    const ResolvedDesign design = resolve(spec);
    if (design.interactions.size() == 0) fail(ErrorKind::validation, "twofi-wlp needs an interactions: line");
    const FactorAssignment trt = design.assignment.restricted(LetterKind::treatment);
    const std::size_t m = trt.size();
    const Wlp wlp = column_wlp(trt.columns(), trt.exponent());
    const std::vector<Column> d2 = twofi_columns(trt, design.interactions);
    const GeneralWlp oracle = general_wlp_oracle(trt, twofi_grouping(trt, design.interactions));
    Report r = Report::object();
    r["wlp"] = wlp_object(wlp);
    r["interaction_columns"] = columns(d2);
    r["N_alias"] = n_object(oracle);
    try {
        r["N_profile"] = n_object(twofi_n_direct(twofi_profile(trt, design.interactions), wlp, m));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::precondition) throw;
        r["N_profile"] = std::string("not applicable: ") + e.what();
    }
    const AugmentedDesign augmented(trt, d2);
    const AugmentedCounts counts = augmented_counts(augmented);
    r["N_augmented"] = n_object(twofi_n_augmented(counts.a, counts.b, m, d2.size()));
    return r;
}

// D2 for complement-side evaluation: block effects or required 2fi columns.
std::vector<Column> extra_columns_of(const ResolvedDesign& design) {
    const auto blk = design.assignment.columns_of(LetterKind::blocking);
    if (!blk.empty()) return block_effect_columns(blk);
    if (design.interactions.size() > 0) {
        return twofi_columns(design.assignment.restricted(LetterKind::treatment), design.interactions);
    }
    return {};
}

Report profile_table(const EProfile& profile) {
    Report rows = Report::array();
    for (std::size_t i = 1; i <= profile.max_length(); ++i) {
        if (profile.union_count(i) == 0) continue;
        Report row = Report::object();
        row["i"] = i;
        for (std::size_t p = 0; p <= profile.d2_size(); ++p) row["p=" + std::to_string(p)] = profile.at(i, p);
        row["E_i"] = profile.aggregate(i);
        rows.push_back(row);
    }
    return rows;
}

Report lemma3_object(const Lemma3Bounds& b) {
    Report out = Report::object();
    out["within_d3"] = b.within_d3;
    out["across"] = b.across.str();
    out["total"] = b.total.str();
    return out;
}

Report cmd_complement(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("complement", opt.criterion, {"general"});
    const ResolvedDesign design = resolve(spec);
    const int k = design.k;
    std::vector<Column> d1 = design.assignment.columns_of(LetterKind::treatment);
    const std::size_t m = d1.size();
    std::vector<Column> sorted = d1;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Column> bar;
    for (Column c : saturated_columns(k)) {
        if (!std::binary_search(sorted.begin(), sorted.end(), c)) bar.push_back(c);
    }
    Report r = Report::object();
    r["D"] = columns(d1);
    r["complement"] = columns(bar);
    const Wlp wlp_bar = column_wlp(bar, k);
    r["complement_wlp"] = wlp_object(wlp_bar);
    r["wlp_from_complement"] = wlp_object(complement_wlp(wlp_bar, m, k));

    const std::vector<Column> d2 = extra_columns_of(design);
    const SplitTriple split = SplitTriple::from_d1_d2(k, d1, d2);
    Report s = Report::object();
    s["D1"] = columns(split.d1());
    s["D2"] = columns(split.d2());
    s["D3"] = columns(split.d3());
    r["split"] = s;
    if (split.s() + split.m3() > kMaxProfileColumns) {
        r["theorem"] = "skipped: D2 u D3 exceeds " + std::to_string(kMaxProfileColumns) + " columns";
        return r;
    }
    const EProfile profile = e_profile(split);
    r["E_profile"] = profile_table(profile);
    GeneralWlp n = theorem2_n_vector(split);
    r["N_from_complement"] = n_object(n);
    r["N_direct"] = n_object(general_n_vector(d1, d2, k));
    r["g"] = g_value(profile);
    r["lemma3_bounds"] = lemma3_object(lemma3_bounds(split.s(), split.m3()));
    return r;
}

std::size_t factor_index(const DesignSpecFile& spec, const Token& t) {
    return static_cast<std::size_t>(std::find(spec.factors.begin(), spec.factors.end(), t) - spec.factors.begin()) + 1;
}

Report cmd_construct_weak(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("construct-weak", opt.criterion, {"general", "twofi", "blocked-main"});
    if (!opt.r) fail(ErrorKind::validation, "construct-weak needs --r");
    const int k = spec.exponent();
    const std::size_t m = spec.factors.size();
    WeakRequirement requirement;
    if (!spec.blocks.empty()) {
        requirement = BlockRequirement{spec.blocks.size()};
    } else if (!spec.interactions.empty()) {
        std::vector<std::pair<Letter, Letter>> pairs;
        for (const auto& [a, b] : spec.interactions) {
            pairs.emplace_back(treatment(static_cast<unsigned>(factor_index(spec, a))),
                               treatment(static_cast<unsigned>(factor_index(spec, b))));
        }
        requirement = TwoFiRequirement(std::move(pairs));
    } else {
        fail(ErrorKind::validation, "construct-weak needs a blocks: section or an interactions: line");
    }
    const WeakConstruction w = construct_weak(k, *opt.r, m, requirement);
    Report r = Report::object();
    r["k"] = k;
    r["r"] = w.r;
    Report assignment = Report::array();
    for (std::size_t i = 0; i < m; ++i) {
        Report row = Report::object();
        row["factor"] = spec.factors[i].text;
        row["column"] = to_string(w.split.d1()[i]);
        assignment.push_back(row);
    }
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        Report row = Report::object();
        row["factor"] = spec.blocks[i].name.text;
        row["column"] = to_string(w.assignment.column(blocking(static_cast<unsigned>(i + 1))));
        assignment.push_back(row);
    }
    r["assignment"] = assignment;
    r["D2"] = columns(w.split.d2());
    r["D3"] = columns(w.split.d3());
    r["spans_subspace"] = w.spans_subspace;
    const std::uint64_t g = g_value(w.split);
    const Lemma3Bounds bounds = lemma3_bounds(w.split.s(), w.split.m3());
    r["g"] = g;
    r["lemma3_bounds"] = lemma3_object(bounds);
    r["attains_bound"] = Rational(g) == bounds.total;
    if (w.split.s() + w.split.m3() <= kMaxProfileColumns) {
        GeneralWlp n = theorem2_n_vector(w.split);
        if (std::holds_alternative<TwoFiRequirement>(requirement)) {
            std::vector<std::uint64_t> v(n.counts().begin(), n.counts().end());
            v[0] -= w.split.s();
            n = GeneralWlp(std::move(v));
        }
        r["N"] = n_object(n);
    }
    return r;
}

Report cmd_search(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("search", opt.criterion, {"main", "blocked-main", "twofi", "general"});
    SearchSpec s;
    s.k = spec.exponent();
    s.m = spec.factors.size();
    std::string criterion = opt.criterion;
    if (criterion.empty()) {
        criterion = !spec.blocks.empty() ? "blocked-main" : !spec.interactions.empty() ? "twofi" : "main";
    }
    if (criterion == "blocked-main") {
        if (spec.blocks.empty()) fail(ErrorKind::validation, "blocked search needs a blocks: section");
        s.variant = BlockedVariant{spec.blocks.size()};
    } else if (criterion == "twofi") {
        if (spec.interactions.empty()) fail(ErrorKind::validation, "twofi search needs an interactions: line");
        TwoFiVariant t;
        for (const auto& [a, b] : spec.interactions) {
            t.pairs.emplace_back(static_cast<unsigned>(factor_index(spec, a)), static_cast<unsigned>(factor_index(spec, b)));
        }
        s.variant = t;
    } else if (criterion == "general") {
        s.variant = GeneralVariant{opt.extra};
    } else {
        s.variant = PlainVariant{};
    }
    if (opt.budget_nodes) s.limits.max_nodes = *opt.budget_nodes;
    if (opt.budget_seconds) s.limits.max_seconds = *opt.budget_seconds;
    s.limits.threads = opt.threads;
    s.limits.symmetry_pruning = opt.prune;

    SearchResult result;
    if (opt.method == "direct") {
        result = direct_search(s);
    } else if (opt.method == "complement") {
        result = complement_search(s);
    } else if (opt.method == "weak") {
        s.criterion = Criterion::weak;
        result = weak_search(s);
    } else {
        fail(ErrorKind::validation, "unknown search method " + opt.method);
    }
    Report r = Report::object();
    r["criterion"] = criterion;
    r["method"] = opt.method;
    r["k"] = s.k;
    r["m"] = s.m;
    r["extra_columns"] = extra_columns(s.variant);
    r["objective"] = indexed("N", result.objective, 2);
    if (result.g) r["g"] = *result.g;
    r["optima"] = result.best.size();
    r["explored"] = result.explored;
    r["exhaustive"] = result.exhaustive;
    Report designs = Report::array();
    for (std::size_t i = 0; i < std::min(opt.show, result.best.size()); ++i) {
        Report d = Report::object();
        std::string d1;
        for (Column c : result.best[i].d1) d1 += (d1.empty() ? "" : " ") + to_string(c);
        std::string d2;
        for (Column c : result.best[i].d2) d2 += (d2.empty() ? "" : " ") + to_string(c);
        d["D1"] = d1;
        d["D2"] = d2.empty() ? "-" : d2;
        designs.push_back(d);
    }
    r["designs"] = designs;
    return r;
}

struct Check {
    std::string name;
    std::function<std::string()> run;  // "" on pass, else failure detail
};

std::string mismatch(const GeneralWlp& a, const GeneralWlp& b, std::string_view la, std::string_view lb) {
    if (a == b) return "";
    auto str = [](const GeneralWlp& n) {
        std::string s;
        for (auto v : n.counts()) s += (s.empty() ? "" : ",") + std::to_string(v);
        return "(" + s + ")";
    };
    return std::string(la) + " " + str(a) + " != " + std::string(lb) + " " + str(b);
}

Report cmd_verify(const DesignSpecFile& spec, const CommandOptions& opt) {
    require_criterion("verify", opt.criterion, {});
    const ResolvedDesign design = resolve(spec);
    const int k = design.k;
    const FactorAssignment trt = design.assignment.restricted(LetterKind::treatment);
    const std::size_t m = trt.size();
    const Wlp wlp = column_wlp(trt.columns(), k);
    const bool has_blocks = design.assignment.count(LetterKind::blocking) > 0;

    std::vector<Check> checks;
    checks.push_back({"wlp: subgroup expansion vs subset counts", [&] {
                          return word_length_pattern(defining_subgroup(trt), m) == wlp ? "" : "patterns differ";
                      }});
    checks.push_back({"main effects: closed form vs alias count", [&] {
                          const EffectGrouping g = hierarchical_grouping(trt.letters(), 1);
                          const GeneralWlp oracle = general_wlp_oracle(trt, g);
                          std::string out = mismatch(n_from_wlp_main(wlp, m), oracle, "closed form", "alias");
                          if (out.empty() && bias_norm_feasible(trt)) {
                              for (std::size_t j = 2; j <= g.group_count(); ++j) {
                                  if (bias_norm_oracle(trt, g, j) != oracle[j]) {
                                      return "bias norm differs at N" + std::to_string(j);
                                  }
                              }
                          }
                          return out;
                      }});
    checks.push_back({"q=2: closed form vs alias count", [&] {
                          const EffectGrouping g = hierarchical_grouping(trt.letters(), 2);
                          return mismatch(n_from_wlp_q(wlp, m, 2), general_wlp_oracle(trt, g), "closed form", "alias");
                      }});
    if (has_blocks) {
        checks.push_back({"blocked main: closed form vs alias count", [&] {
                              const BlockedDesign b(design.assignment);
                              return mismatch(blocked_n_main(b.counts(), m),
                                              general_wlp_oracle(design.assignment, blocked_main_grouping(design.assignment)),
                                              "closed form", "alias");
                          }});
        checks.push_back({"blocked 2fi: closed form vs alias count", [&] {
                              const BlockedDesign b(design.assignment);
                              return mismatch(blocked_n_twofi(b.counts(), m),
                                              general_wlp_oracle(design.assignment, blocked_twofi_grouping(design.assignment)),
                                              "closed form", "alias");
                          }});
    }
    if (design.interactions.size() > 0) {
        checks.push_back({"2fi: profile form vs alias count", [&] {
                              return mismatch(twofi_n_direct(twofi_profile(trt, design.interactions), wlp, m),
                                              general_wlp_oracle(trt, twofi_grouping(trt, design.interactions)),
                                              "profile", "alias");
                          }});
        checks.push_back({"2fi: augmented form vs alias count", [&] {
                              const auto d2 = twofi_columns(trt, design.interactions);
                              const AugmentedCounts c = augmented_counts(AugmentedDesign(trt, d2));
                              return mismatch(twofi_n_augmented(c.a, c.b, m, d2.size()),
                                              general_wlp_oracle(trt, twofi_grouping(trt, design.interactions)),
                                              "augmented", "alias");
                          }});
    }
    checks.push_back({"complement identity for the word length pattern", [&] {
                          std::vector<Column> bar;
                          for (Column c : saturated_columns(k)) {
                              const auto cols = trt.columns();
                              if (std::find(cols.begin(), cols.end(), c) == cols.end()) bar.push_back(c);
                          }
                          return complement_wlp(column_wlp(bar, k), m, k) == wlp ? "" : "patterns differ";
                      }});
    checks.push_back({"complement evaluation of N vs direct", [&] {
                          const std::vector<Column> d1(trt.columns().begin(), trt.columns().end());
                          const std::vector<Column> d2 = extra_columns_of(design);
                          const SplitTriple split = SplitTriple::from_d1_d2(k, d1, d2);
                          if (split.s() + split.m3() > kMaxProfileColumns) {
                              fail(ErrorKind::capacity, "D2 u D3 too large to enumerate");
                          }
                          return mismatch(theorem2_n_vector(split), general_n_vector(d1, d2, k), "complement", "direct");
                      }});

    Report rows = Report::array();
    for (const Check& c : checks) {
        Report row = Report::object();
        row["check"] = c.name;
        try {
            const std::string detail = c.run();
            row["status"] = detail.empty() ? "pass" : "fail";
            row["detail"] = detail;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::identity_violation) {
                row["status"] = "fail";
            } else {
                row["status"] = "skipped";
            }
            row["detail"] = e.what();
        }
        rows.push_back(row);
    }
    Report r = Report::object();
    r["checks"] = rows;
    return r;
}

}  // namespace

Report run_command(std::string_view command, const DesignSpecFile& spec, const CommandOptions& options) {
    static const std::map<std::string_view, Report (*)(const DesignSpecFile&, const CommandOptions&)> table = {
        {"wlp", cmd_wlp},
        {"general-wlp", cmd_general_wlp},
        {"blocked-wlp", cmd_blocked_wlp},
        {"twofi-wlp", cmd_twofi_wlp},
        {"complement", cmd_complement},
        {"construct-weak", cmd_construct_weak},
        {"search", cmd_search},
        {"verify", cmd_verify},
    };
    const auto it = table.find(command);
    if (it == table.end()) fail(ErrorKind::validation, "unknown command " + std::string(command));
    Report report = Report::object();
    report["command"] = command;
    report["input"] = echo(spec);
    try {
        report.update(it->second(spec, options));
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(command) + ": " + e.what());
    }
    return report;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible:
            return 3;
        case ErrorKind::identity_violation:
            return 4;
        default:
            return 2;
    }
}

bool has_failures(const Report& report) {
    if (!report.contains("checks")) return false;
    for (const auto& row : report["checks"]) {
        if (row["status"] == "fail") return true;
    }
    return false;
}

}  // namespace aberrant::cli
