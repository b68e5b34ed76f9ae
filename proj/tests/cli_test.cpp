#include "orthoforge/generate.hpp"
#include "orthoforge/lattice.hpp"
#include "orthoforge/lp.hpp"
#include "orthoforge/report.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace orthoforge {
namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run run(const std::string& args) {
    std::string cmd = std::string(ORTHOFORGE_CLI) + " " + args + " 2>/dev/null";
    Run r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("orthoforge_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

TEST(Cli, CheckBooleanThreeText) {
    auto r = run("check --gen boolean:3 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("lattice, n=8\n", 0), 0u) << r.out;
}

TEST(Cli, CheckBowtieIsNotALattice) {
    auto r = run("check " + sample("bowtie.json") + " --format text");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("not a lattice: (x,y) has no meet"), std::string::npos) << r.out;
    auto j = run("check " + sample("bowtie.json"));
    EXPECT_EQ(j.code, 2);
    auto doc = Json::parse(j.out);
    EXPECT_EQ(doc["lattice"], false);
    EXPECT_EQ(doc["witness"], Json::parse(R"(["x","y"])"));
}

TEST(Cli, MalformedInputExitsOne) {
    EXPECT_EQ(run("check " + temp_file("garbage.json", "{nope")).code, 1);
    EXPECT_EQ(run("check " + temp_file("cycle.json", R"({"elements":["a","b"],"covers":[["a","b"],["b","a"]]})")).code,
              1);
    EXPECT_EQ(run("check /nonexistent/file.json").code, 1);
    EXPECT_EQ(run("check").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("find --gen boolean:2 --method simplex").code, 1);
    EXPECT_EQ(run("find --gen tree:3").code, 1);
}

TEST(Cli, ChainTwoMatrices) {
    auto z = run("zeta --gen chain:2");
    EXPECT_EQ(z.code, 0);
    EXPECT_EQ(Json::parse(z.out), Json::parse(R"([["1","1"],["0","1"]])"));
    auto m = run("moebius --gen chain:2");
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(Json::parse(m.out), Json::parse(R"([["1","-1"],["0","1"]])"));
}

TEST(Cli, FindMoTwoBoth) {
    auto r = run("find --gen mo:2 --method both");
    ASSERT_EQ(r.code, 0);
    auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["count"], 3);
    EXPECT_EQ(doc["orthocomplementations"].size(), 3u);
    EXPECT_EQ(doc["agreement"], true);
    EXPECT_EQ(doc["root_optimum"], "6");
    EXPECT_TRUE(doc["nonexistence_certificate"].is_null());
}

TEST(Cli, FindNFiveLpGivesCertificate) {
    auto r = run("find --gen n5 --method lp");
    ASSERT_EQ(r.code, 0);
    auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["count"], 0);
    EXPECT_EQ(doc["nonexistence_certificate"]["kind"], "optimum_above_n");
    Rational optimum = parse_rational(doc["nonexistence_certificate"]["optimum"].get<std::string>());
    EXPECT_GT(optimum, 5);
}

TEST(Cli, FindOnNonLatticeExitsTwo) {
    EXPECT_EQ(run("find " + sample("bowtie.json")).code, 2);
}

TEST(Cli, FindPivotCapExitsThree) {
    auto r = run("find --gen boolean:3 --method lp --pivot-cap 3");
    EXPECT_EQ(r.code, 3);
    auto doc = Json::parse(r.out);
    EXPECT_TRUE(doc.contains("stats"));
}

TEST(Cli, FindWithWorkersAndDisjointObjective) {
    auto a = Json::parse(run("find --gen mo:3 --method lp --workers 1").out);
    auto b = Json::parse(run("find --gen mo:3 --method lp --workers 4 --objective disjoint").out);
    EXPECT_EQ(a["count"], 15);
    EXPECT_EQ(a["orthocomplementations"].size(), b["orthocomplementations"].size());
    for (std::size_t i = 0; i < a["orthocomplementations"].size(); ++i)
        EXPECT_EQ(a["orthocomplementations"][i]["map"], b["orthocomplementations"][i]["map"]);
}

TEST(Cli, VerifyIdentityOnBooleanTwoFails) {
    auto r = run("verify " + sample("b2.json") + " " + sample("b2_identity.map.json"));
    EXPECT_EQ(r.code, 5);
    auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["passed"], false);
    EXPECT_EQ(doc["violation"]["condition"], "disjoint");
    EXPECT_EQ(doc["violation"]["witness"], Json::parse(R"(["a","a"])"));
}

TEST(Cli, VerifyComplementOnBooleanThreePasses) {
    std::string map = R"({"000":"111","100":"011","010":"101","001":"110","110":"001","101":"010","011":"100","111":"000"})";
    auto r = run("verify --gen boolean:3 " + temp_file("b3.map.json", map));
    EXPECT_EQ(r.code, 0);
    auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["passed"], true);
    EXPECT_EQ(doc["certificate"]["disjointness_trace"], "8");
}

TEST(Cli, VerifyUnknownLabelExitsOne) {
    auto path = temp_file("bad.map.json", R"({"0":"1","a":"zz","b":"a","1":"0"})");
    EXPECT_EQ(run("verify " + sample("b2.json") + " " + path).code, 1);
    auto partial = temp_file("partial.map.json", R"({"0":"1","1":"0"})");
    EXPECT_EQ(run("verify " + sample("b2.json") + " " + partial).code, 1);
}

TEST(Cli, PolytopeCounts) {
    auto b2 = Json::parse(run("polytope " + sample("b2.json")).out);
    EXPECT_EQ(b2["variables"].size(), 16u);
    EXPECT_EQ(b2["equalities"].size(), 27u);
    EXPECT_EQ(b2["variables"][1], "x_0_a");
    auto one = Json::parse(run("polytope --gen chain:1").out);
    EXPECT_EQ(one["variables"].size(), 1u);
    auto P = lp_from_polytope_json(one, Objective::Conjoint);
    auto s = solve(P);
    ASSERT_EQ(s.status, LPStatus::Optimal);
    EXPECT_EQ(s.point[0], 1);
}

TEST(Cli, PolytopeRoundTripMatchesInternalSolve) {
    auto r = run("polytope --gen mo:2");
    ASSERT_EQ(r.code, 0);
    auto doc = Json::parse(r.out);
    for (auto objective : {Objective::Conjoint, Objective::Disjoint}) {
        auto external = solve(lp_from_polytope_json(doc, objective));
        auto internal = solve(orthocomplement_lp(build_polytope(build_lattice(generate("mo", 2))), objective));
        ASSERT_EQ(external.status, LPStatus::Optimal);
        EXPECT_EQ(external.value, internal.value);
        EXPECT_EQ(external.value, 6);
    }
}

TEST(Cli, LinearizedMeetAndJoin) {
    auto b2 = run("linmeet " + sample("b2.json") + " a b");
    EXPECT_EQ(b2.code, 0);
    EXPECT_EQ(Json::parse(b2.out), Json::parse(R"({"0":"1"})"));
    auto bow = run("linmeet " + sample("bowtie.json") + " x y");
    EXPECT_EQ(bow.code, 0);
    EXPECT_EQ(Json::parse(bow.out), Json::parse(R"({"a":"1","b":"1"})"));
    auto join = run("linjoin " + sample("bowtie.json") + " a b");
    EXPECT_EQ(Json::parse(join.out), Json::parse(R"({"x":"1","y":"1"})"));
    EXPECT_EQ(run("linmeet " + sample("b2.json") + " a nope").code, 1);
}

TEST(Cli, GenerateRoundTripIsByteIdentical) {
    for (const char* args : {"chain 4", "boolean 3", "m 4", "mo 2", "n5", "hexagon"}) {
        auto first = run(std::string("generate ") + args);
        ASSERT_EQ(first.code, 0) << args;
        auto spec = parse_poset(first.out);
        EXPECT_EQ(dump_poset(spec), first.out) << args;
        // Feed it back through the CLI as a file.
        auto path = temp_file("gen.json", first.out);
        auto again = run("check " + path);
        EXPECT_EQ(again.code, 0) << args;
    }
    EXPECT_EQ(run("generate boolean 9").code, 1);
}

TEST(Cli, SeedOrderEnvironment) {
    auto r = run("zeta --gen m:3 --format text");
    EXPECT_EQ(r.code, 0);
    std::string cmd = "ORTHOFORGE_SEED_ORDER=bogus " + std::string(ORTHOFORGE_CLI) + " check --gen m:3 >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}

TEST(Cli, OutputFlagWritesFile) {
    auto path = (std::filesystem::temp_directory_path() / "orthoforge_cli_out.json").string();
    std::filesystem::remove(path);
    auto r = run("check --gen boolean:2 -o " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    auto doc = Json::parse(in);
    EXPECT_EQ(doc["n"], 4);
}

}  // namespace
}  // namespace orthoforge
