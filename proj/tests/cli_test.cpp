#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gqla/equivalence.hpp"
#include "gqla/parser.hpp"
#include "support/fixture_server.hpp"
#include "support/fixtures.hpp"

using namespace gqla;
using gqla::testing::read_fixture;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI inside the fixture directory so reported paths are stable.
Run run(const std::string& args) {
    fs::path err = fs::temp_directory_path() / ("gqla-cli-" + std::to_string(::getpid()) + ".err");
    std::string cmd = "cd '" GQLA_FIXTURE_DIR "' && '" GQLA_CLI "' " + args + " 2>'" + err.string() + "'";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    fs::remove(err);
    return r;
}

// Set GQLA_UPDATE_GOLDEN=1 to rewrite the golden files.
void expect_golden(const std::string& name, const std::string& actual) {
    fs::path path = fs::path(GQLA_GOLDEN_DIR) / name;
    if (std::getenv("GQLA_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << actual;
        return;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(actual, slurp(path)) << name;
}

// Leaf count of a JSON document, counting arrays of scalars as one leaf.
std::size_t leaves(const json& j) {
    if (j.is_object()) {
        std::size_t n = j.empty() ? 1 : 0;
        for (const auto& [k, v] : j.items()) n += leaves(v);
        return n;
    }
    if (j.is_array()) {
        if (std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) return 1;
        std::size_t n = 0;
        for (const auto& e : j) n += leaves(e);
        return n;
    }
    return 1;
}

}  // namespace

TEST(Cli, ComplexityGolden) {
    auto r = run("complexity company_offices.graphql --n 4 --d 10 --format json");
    EXPECT_EQ(r.code, 0) << r.err;
    expect_golden("complexity_company.json", r.out);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["class"], "linear-nd");
    EXPECT_EQ(j["k"], 1);
    // 31 by the recurrence s0 = n-K = 3, s1 = 10*3 + 1.
    EXPECT_EQ(j["bound"]["value"], 10 * 3 + 1);
}

TEST(Cli, ExponentialHasNoBoundValue) {
    auto r = run("complexity friends.graphql --n 4 --d 10");
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["class"], "exponential");
    EXPECT_TRUE(j["k"].is_null());
    EXPECT_TRUE(j["bound"]["value"].is_null());
}

TEST(Cli, ValidateIncomplete) {
    auto r = run("validate broken.graphql");
    EXPECT_EQ(r.code, 1);
    expect_golden("validate_broken.json", r.out);
    EXPECT_EQ(json::parse(r.out)["status"], "incomplete");
    EXPECT_EQ(run("validate company_offices.graphql").code, 0);
}

TEST(Cli, RecoverSplitRepository) {
    auto r = run("recover --root split_repo split_repo/main.graphql");
    EXPECT_EQ(r.code, 0) << r.err;
    expect_golden("recover_split.json", r.out);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["status"], "recovered");
    EXPECT_EQ(j["appended_paths"], json::array({"types/company.graphql", "types/office.graphql"}));
    EXPECT_TRUE(ast_equivalent(parse(j["sdl"].get<std::string>()), parse(read_fixture("company_offices.graphql")),
                               EquivalenceMode::Canonical));
}

TEST(Cli, RecoverUnresolvable) {
    auto r = run("recover --root split_repo/notes split_repo/main.graphql");
    EXPECT_EQ(r.code, 1);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["status"], "unresolvable");
    EXPECT_EQ(j["unresolved"], json::array({"Company", "Office", "OfficeInput"}));
}

TEST(Cli, PerFileGoldens) {
    auto stats = run("stats friends.graphql repos_members.graphql company_offices.graphql");
    EXPECT_EQ(stats.code, 0);
    expect_golden("stats_three.json", stats.out);
    auto j = json::parse(stats.out);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[0]["file"], "friends.graphql");
    EXPECT_EQ(j[2]["file"], "company_offices.graphql");

    auto lint = run("lint company_offices.graphql");
    EXPECT_EQ(lint.code, 0);
    expect_golden("lint_company.json", lint.out);

    auto pagination = run("pagination company_offices.graphql");
    EXPECT_EQ(pagination.code, 0);
    expect_golden("pagination_company.json", pagination.out);
    auto p = json::parse(pagination.out);
    EXPECT_EQ(p["connections_status"], "throughout");
    EXPECT_EQ(p["connection_types"], json::array({"OfficeConnection", "OfficeEdge"}));

    auto report = run("report friends.graphql repos_members.graphql company_offices.graphql");
    EXPECT_EQ(report.code, 0);
    expect_golden("report_three.json", report.out);
}

TEST(Cli, ParseListsDefinitions) {
    auto r = run("parse company_offices.graphql");
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["pure"].get<bool>());
    EXPECT_EQ(j["definitions"].size(), 8u);
    EXPECT_EQ(j["definitions"][1]["name"], "Mutation");
    auto mixed = run("parse funnel_corpus/repos/mu/client/mixed.graphql");
    EXPECT_EQ(mixed.code, 0);
    EXPECT_FALSE(json::parse(mixed.out)["pure"].get<bool>());
    auto bad = run("parse funnel_corpus/repos/lambda/broken/open.graphql");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("syntax error"), std::string::npos);
}

TEST(Cli, FunnelWritesOutputs) {
    fs::path out = fs::temp_directory_path() / ("gqla-funnel-" + std::to_string(::getpid()));
    auto r = run("funnel funnel_corpus --out '" + out.string() + "'");
    EXPECT_EQ(r.code, 0) << r.err;
    expect_golden("funnel_corpus.json", r.out);
    EXPECT_EQ(slurp(out / "funnel.json"), r.out);
    std::istringstream lines(slurp(out / "dispositions.ndjson"));
    std::size_t n = 0, survived = 0;
    for (std::string line; std::getline(lines, line); ++n) survived += json::parse(line)["survived"].get<bool>();
    EXPECT_EQ(n, 40u);
    EXPECT_EQ(survived, 12u);
    auto report = json::parse(slurp(out / "corpus_report.json"));
    EXPECT_EQ(report["all"]["schema_count"], 12);
    fs::remove_all(out);

    auto canonical = json::parse(run("funnel funnel_corpus --canonical").out);
    EXPECT_EQ(canonical["stages"][6]["count"], 11);
}

TEST(Cli, OutputIsByteStable) {
    for (const char* args : {"report friends.graphql repos_members.graphql company_offices.graphql",
                             "funnel funnel_corpus", "lint company_offices.graphql"}) {
        EXPECT_EQ(run(args).out, run(args).out) << args;
    }
}

TEST(Cli, TableCarriesTheSameData) {
    for (const char* args : {"complexity company_offices.graphql --n 4 --d 10", "stats friends.graphql company_offices.graphql",
                             "report friends.graphql company_offices.graphql", "lint company_offices.graphql"}) {
        auto j = json::parse(run(std::string(args) + " --format json").out);
        auto table = run(std::string(args) + " --format table").out;
        std::size_t rows = 0;
        std::istringstream lines(table);
        for (std::string line; std::getline(lines, line);) rows += !line.empty() && line[0] != ' ';
        EXPECT_EQ(rows, leaves(j)) << args;
    }
    auto table = run("complexity company_offices.graphql --n 4 --d 10 --format table").out;
    EXPECT_NE(table.find("bound.value    31\n"), std::string::npos) << table;
    EXPECT_NE(table.find("class          linear-nd\n"), std::string::npos) << table;
}

TEST(Cli, UsageAndIoErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate x.graphql").code, 2);
    auto missing = run("stats does_not_exist.graphql");
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run("complexity company_offices.graphql --n 4").code, 2);
    EXPECT_EQ(run("complexity company_offices.graphql --format xml").code, 2);
    EXPECT_EQ(run("funnel").code, 2);
    EXPECT_EQ(run("introspect http://127.0.0.1:1/graphql --header nocolon").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Introspect) {
    auto doc = parse(read_fixture("company_offices.graphql"));
    gqla::testing::FixtureServer server(doc);
    auto ok = run("introspect " + server.url());
    ASSERT_EQ(ok.code, 0) << ok.err;
    auto j = json::parse(ok.out);
    EXPECT_TRUE(ast_equivalent(parse(j["sdl"].get<std::string>()), doc, EquivalenceMode::Canonical));

    auto denied = run("introspect " + server.url("/private"));
    EXPECT_EQ(denied.code, 1);
    auto d = json::parse(denied.out);
    EXPECT_EQ(d["error"], "http_error");
    EXPECT_EQ(d["status"], 401);
    EXPECT_EQ(run("introspect " + server.url("/private") + " --header 'Authorization: Bearer secret'").code, 0);
    EXPECT_EQ(json::parse(run("introspect " + server.url("/disabled")).out)["error"], "introspection_disabled");
    EXPECT_EQ(run("introspect http://127.0.0.1:1/graphql").code, 2);
}
