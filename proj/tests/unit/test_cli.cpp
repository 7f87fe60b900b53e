#include <gtest/gtest.h>

#include <string>

#include "commands.hpp"
#include "spec_file.hpp"

using namespace aberrant;
using namespace aberrant::cli;

namespace {

std::string data(const char* name) { return std::string(ABERRANT_TEST_DATA) + "/" + name; }

ErrorKind parse_error_kind(std::string_view text, std::string* message = nullptr) {
    try {
        parse_spec(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    return ErrorKind::capacity;
}

}  // namespace

TEST(SpecFile, ParsesFixture) {
    const DesignSpecFile s = read_spec_file(data("example1_d1.spec"));
    EXPECT_EQ(s.runs, 16u);
    EXPECT_EQ(s.factors.size(), 9u);
    EXPECT_EQ(s.generators.size(), 5u);
    ASSERT_EQ(s.blocks.size(), 1u);
    EXPECT_EQ(s.blocks[0].name.text, "b");
    EXPECT_EQ(s.exponent(), 4);
}

TEST(SpecFile, GluedAndSeparatedRightHandSidesAgree) {
    const auto a = parse_spec("runs: 8\nfactors: A B C D\ngenerators:\n  D = ABC\n");
    const auto b = parse_spec("runs: 8\nfactors: A B C D\ngenerators:\n  D = A*B.C\n");
    EXPECT_EQ(a, b);
}

TEST(SpecFile, LongestMatchSplitsMultiCharacterNames) {
    const auto s = parse_spec("runs: 16\nfactors: x1 x2 x3 x4 x12\ngenerators:\n  x12 = x1x2x3x4\n");
    ASSERT_EQ(s.generators.size(), 1u);
    EXPECT_EQ(s.generators[0].rhs.size(), 4u);
}

TEST(SpecFile, RoundTrip) {
    for (const char* f : {"example1_d1.spec", "example1_d2.spec", "example2.spec", "full_factorial.spec"}) {
        const DesignSpecFile s = read_spec_file(data(f));
        EXPECT_EQ(parse_spec(emit_spec(s)), s) << f;
    }
}

TEST(SpecFile, ErrorsCarryPositions) {
    std::string msg;
    EXPECT_EQ(parse_error_kind("runs: 12\nfactors: A B\n", &msg), ErrorKind::parse);
    EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
    EXPECT_EQ(parse_error_kind("runs: 8\nfactors: A B C D\ngenerators:\n  D = ABQ\n", &msg), ErrorKind::parse);
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
    EXPECT_EQ(parse_error_kind("runs: 8\nfactors: A A B\n"), ErrorKind::parse);
    EXPECT_EQ(parse_error_kind("bogus: 1\n"), ErrorKind::parse);
}

TEST(SpecFile, RankMismatchIsRejected) {
    // Four basic factors in 8 runs.
    EXPECT_THROW(resolve(parse_spec("runs: 8\nfactors: A B C D\n")), Error);
}

TEST(SpecFile, ResolveAssignsBasisInOrder) {
    const ResolvedDesign d = resolve(read_spec_file(data("example1_d1.spec")));
    EXPECT_EQ(d.k, 4);
    EXPECT_EQ(d.assignment.column(treatment(2)), basis_column(2));
    EXPECT_EQ(d.assignment.column(treatment(5)), Column{0b0111});
    EXPECT_EQ(d.assignment.column(blocking(1)), Column{0b0101});
    EXPECT_EQ(d.name(blocking(1)), "b");
}

TEST(Commands, BlockedReport) {
    const Report r = run_command("blocked-wlp", read_spec_file(data("example1_d1.spec")), {});
    EXPECT_EQ(r["A"]["A3"], 4);
    EXPECT_EQ(r["B"]["B2"], 4);
    EXPECT_EQ(r["N"]["N2"], 16);
    EXPECT_EQ(r["N"], r["N_alias"]);
    const Report r2 = run_command("blocked-wlp", read_spec_file(data("example1_d2.spec")), {});
    EXPECT_EQ(r2["A"]["A3"], 6);
    EXPECT_EQ(r2["N"]["N2"], 20);
}

TEST(Commands, ConstructWeak) {
    CommandOptions opt;
    opt.r = 3;
    const Report r = run_command("construct-weak", read_spec_file(data("example2.spec")), opt);
    EXPECT_EQ(r["g"], 9);
    EXPECT_EQ(r["attains_bound"], true);
    EXPECT_EQ(r["N"]["N2"], 12);
}

TEST(Commands, VerifyPassesOnFixtures) {
    for (const char* f : {"example1_d1.spec", "example1_d2.spec", "full_factorial.spec"}) {
        const Report r = run_command("verify", read_spec_file(data(f)), {});
        EXPECT_FALSE(has_failures(r)) << f << "\n" << r.dump(2);
    }
}

TEST(Commands, SearchReportsObjective) {
    CommandOptions opt;
    opt.method = "complement";
    const Report r = run_command("search", parse_spec("runs: 16\nfactors: 1 2 3 4 5 6\n"), opt);
    EXPECT_EQ(r["exhaustive"], true);
    EXPECT_EQ(r["objective"]["N2"], 0);
}

TEST(Commands, ErrorKindsMapToExitCodes) {
    CommandOptions opt;
    opt.r = 2;
    try {
        run_command("construct-weak", read_spec_file(data("example2.spec")), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(exit_code(e.kind()), 3);
    }
    EXPECT_THROW(run_command("nope", read_spec_file(data("example2.spec")), {}), Error);
    CommandOptions bad;
    bad.criterion = "twofi";
    try {
        run_command("wlp", read_spec_file(data("example2.spec")), bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(exit_code(e.kind()), 2);
    }
    EXPECT_EQ(exit_code(ErrorKind::identity_violation), 4);
}
