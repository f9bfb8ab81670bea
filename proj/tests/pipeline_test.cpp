#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "gqla/funnel.hpp"
#include "gqla/github_search.hpp"
#include "gqla/json_io.hpp"
#include "gqla/printer.hpp"
#include "gqla/report.hpp"
#include "gqla/search.hpp"
#include "support/fixtures.hpp"

using namespace gqla;
using gqla::testing::read_fixture;
namespace fs = std::filesystem;

namespace {

SearchHit hit(std::string repo, std::string path, std::string content) {
    std::string url = ReplaySearchProvider::blob_url(repo, path);
    return {url, std::move(path), std::move(repo), std::move(content)};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("gqla-test-" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    void write(const std::string& rel, const std::string& content) const {
        fs::create_directories((path_ / rel).parent_path());
        std::ofstream(path_ / rel, std::ios::binary) << content;
    }

private:
    fs::path path_;
};

std::vector<std::string> stage_of(const FunnelResult& r) {
    std::vector<std::string> out;
    for (const auto& d : r.funnel.dispositions) out.push_back(d.survived ? "survived" : d.stage);
    return out;
}

}  // namespace

// --- search ------------------------------------------------------------------

TEST(PartitionSearch, WithinCapIsSingleQuery) {
    auto qs = partition_search_queries(0, 100, 1000, std::map<std::uint64_t, std::uint64_t>{{10, 999}});
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_EQ(qs[0].query, "type extension:graphql extension:gql size:0..100 fork:false");
    EXPECT_FALSE(qs[0].exhausted);
}

TEST(PartitionSearch, ForcedBisection) {
    auto qs = partition_search_queries(0, 100, 1000, std::map<std::uint64_t, std::uint64_t>{{10, 1000}, {80, 1000}});
    ASSERT_EQ(qs.size(), 2u);
    EXPECT_EQ(qs[0].range.min, 0u);
    EXPECT_EQ(qs[0].range.max, 50u);
    EXPECT_EQ(qs[1].range.min, 51u);
    EXPECT_EQ(qs[1].range.max, 100u);
    EXPECT_EQ(qs[1].query, "type extension:graphql extension:gql size:51..100 fork:false");
}

TEST(PartitionSearch, DegenerateRangeWarns) {
    std::vector<std::string> warnings;
    auto qs = partition_search_queries(7, 7, 1000, std::map<std::uint64_t, std::uint64_t>{{7, 1500}},
                                       [&](const std::string& w) { warnings.push_back(w); });
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_TRUE(qs[0].exhausted);
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(PartitionSearch, CoversRangeContiguously) {
    std::map<std::uint64_t, std::uint64_t> hist;
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) hist[rng() % 5000] += rng() % 300;
    auto qs = partition_search_queries(0, 4999, 1000, hist);
    std::uint64_t expect = 0, total = 0;
    for (const auto& q : qs) {
        EXPECT_EQ(q.range.min, expect);
        EXPECT_TRUE(q.observed <= 1000 || q.exhausted);
        expect = q.range.max + 1;
        total += q.observed;
    }
    EXPECT_EQ(expect, 5000u);
    std::uint64_t all = 0;
    for (auto [size, n] : hist) all += n;
    EXPECT_EQ(total, all);
    EXPECT_THROW(partition_search_queries(5, 4, 10, hist), std::invalid_argument);
}

TEST(ReplaySearch, DirectoryTree) {
    TempDir dir;
    dir.write("acme/api/schema.graphql", "type Query { a: Int }");
    dir.write("acme/api/types/user.gql", "type User { id: ID }");
    dir.write("acme/api/README.md", "not a schema");
    dir.write("bob/web/s.graphql", "type Query { b: Int }");
    ReplaySearchProvider replay(dir.path());
    ASSERT_EQ(replay.all().size(), 3u);
    EXPECT_EQ(replay.all()[0].repository, "acme/api");
    EXPECT_EQ(replay.all()[0].path, "schema.graphql");
    EXPECT_EQ(replay.all()[0].url, "https://github.com/acme/api/blob/master/schema.graphql");
    EXPECT_EQ(replay.all()[1].path, "types/user.gql");
    EXPECT_EQ(replay.search("q", {0, 20}).size(), 1u);
    auto hits = collect_search_results(replay, 0, 1000, 2);
    EXPECT_EQ(hits.size(), 3u);
}

TEST(ReplaySearch, LogAllowsRepeatedUrls) {
    TempDir dir;
    dir.write("files/a.graphql", "type Query { a: Int }");
    dir.write("search_log.ndjson",
              R"({"url":"u1","path":"a.graphql","repository":"r/x","file":"files/a.graphql"})" "\n"
              R"({"url":"u1","path":"a.graphql","repository":"r/x","content":"type Query { a: Int }"})" "\n\n");
    ReplaySearchProvider replay(dir.path());
    ASSERT_EQ(replay.all().size(), 2u);
    EXPECT_EQ(replay.all()[0].content, replay.all()[1].content);
    EXPECT_EQ(run_funnel(replay.all()).funnel.count("unique_files"), 1u);
}

TEST(GitHubSearch, UsesTransportAndRateCeiling) {
    std::vector<HttpRequest> seen;
    std::vector<std::chrono::milliseconds> sleeps;
    auto clock = std::chrono::steady_clock::time_point{};
    GitHubSearchOptions opts;
    opts.token = "t0ken";
    opts.requests_per_minute = 30;
    opts.per_page = 2;
    opts.now = [&] { return clock; };
    opts.sleep = [&](std::chrono::milliseconds d) {
        sleeps.push_back(d);
        clock += d;
    };
    opts.transport = [&](const HttpRequest& req) -> HttpResponse {
        seen.push_back(req);
        if (req.path == "/search/code") {
            auto page = req.params.find("page");
            if (req.params.find("per_page")->second == "1") return {200, R"({"total_count": 3, "items": []})"};
            if (page->second == "1") {
                return {200, R"({"items":[
                  {"html_url":"https://github.com/o/r/blob/s/a.graphql","path":"a.graphql","repository":{"full_name":"o/r"},
                   "url":"https://api.github.com/repos/o/r/contents/a.graphql?ref=s"},
                  {"html_url":"https://github.com/o/r/blob/s/b.graphql","path":"b.graphql","repository":{"full_name":"o/r"},
                   "url":"https://api.github.com/repos/o/r/contents/b.graphql?ref=s"}]})"};
            }
            return {200, R"({"items":[
              {"html_url":"https://github.com/o/q/blob/s/c.gql","path":"c.gql","repository":{"full_name":"o/q"},
               "url":"https://api.github.com/repos/o/q/contents/c.gql?ref=s"}]})"};
        }
        return {200, "type Query { from: String } # " + req.path};
    };
    GitHubSearchProvider gh(opts);
    EXPECT_EQ(gh.count("type", {0, 10}), 3u);
    auto hits = gh.search("type size:0..10", {0, 10});
    ASSERT_EQ(hits.size(), 3u);
    EXPECT_EQ(hits[2].repository, "o/q");
    EXPECT_EQ(hits[0].content, "type Query { from: String } # /repos/o/r/contents/a.graphql");
    EXPECT_EQ(seen[0].headers.at("Authorization"), "token t0ken");
    EXPECT_EQ(seen[2].params.find("ref")->second, "s");
    EXPECT_EQ(seen[2].headers.at("Accept"), "application/vnd.github.raw");
    // Every request after the first waits out the 2 s gap.
    EXPECT_EQ(sleeps.size(), seen.size() - 1);
    for (auto d : sleeps) EXPECT_EQ(d, std::chrono::milliseconds(2000));
}

TEST(GitHubSearch, Errors) {
    GitHubSearchOptions opts;
    opts.token = "x";
    opts.sleep = [](std::chrono::milliseconds) {};
    opts.transport = [](const HttpRequest&) { return HttpResponse{403, "{}"}; };
    GitHubSearchProvider limited(opts);
    EXPECT_THROW(limited.count("q", {0, 1}), SearchError);
    opts.transport = [](const HttpRequest&) { return HttpResponse{200, "nope"}; };
    GitHubSearchProvider garbled(opts);
    EXPECT_THROW(garbled.count("q", {0, 1}), SearchError);
    opts.token.clear();
    if (!std::getenv("GQLA_SEARCH_TOKEN")) EXPECT_THROW(GitHubSearchProvider{opts}, SearchError);
}

// --- funnel ------------------------------------------------------------------

TEST(Funnel, DuplicateUrl) {
    auto a = hit("o/r", "s.graphql", "type Query { a: Int }");
    auto r = run_funnel({a, a});
    EXPECT_EQ(r.funnel.count("search_result_files"), 2u);
    EXPECT_EQ(r.funnel.count("unique_files"), 1u);
    EXPECT_EQ(stage_of(r), (std::vector<std::string>{"survived", "unique_files"}));
}

TEST(Funnel, RecoversPartitionedSchema) {
    std::vector<SearchHit> files = {
        hit("o/app", "schema/query.graphql", "type Query { office: Office }"),
        hit("o/app", "schema/office.graphql", "type Office { address: Address kind: Kind }"),
        hit("o/app", "schema/address.graphql", "type Address { city: String }"),
        hit("o/app", "schema/kind.graphql", "enum Kind { HQ BRANCH }"),
        hit("o/other", "schema.graphql", "type Query { office: Office }"),
        hit("o/other", "office.graphql", "type Office { id: ID } type Stray { x: Missing }"),
        hit("p/x", "a.graphql", "type Query { a: Int }"),
        hit("p/x", "q.graphql", "query { a }"),
        hit("p/x", "bad.graphql", "type Query {"),
        hit("p/y", "b.graphql", "type Query { a: Int }\n"),
    };
    auto r = run_funnel(files);
    EXPECT_EQ(r.funnel.count("search_result_files"), 10u);
    EXPECT_EQ(r.funnel.count("unique_files"), 10u);
    EXPECT_EQ(r.funnel.count("sdl_files"), 9u);
    EXPECT_EQ(r.funnel.count("pure_schemas"), 8u);
    // query.graphql recovered, address and kind complete, o/other entry
    // fails, office.graphql fragments stay incomplete.
    EXPECT_EQ(r.funnel.count("complete_or_recovered"), 5u);
    EXPECT_EQ(r.funnel.count("valid_schemas"), 3u);
    EXPECT_EQ(r.funnel.count("valid_unique_schemas"), 2u);
    EXPECT_EQ(stage_of(r), (std::vector<std::string>{"survived", "complete_or_recovered", "valid_schemas",
                                                     "valid_schemas", "complete_or_recovered", "complete_or_recovered",
                                                     "survived", "pure_schemas", "sdl_files", "valid_unique_schemas"}));
    ASSERT_EQ(r.schemas.size(), 2u);
    const auto& recovered = r.schemas[0];
    EXPECT_TRUE(recovered.recovered);
    EXPECT_EQ(recovered.appended_paths,
              (std::vector<std::string>{"schema/office.graphql", "schema/address.graphql", "schema/kind.graphql"}));
    EXPECT_EQ(r.funnel.dispositions[0].reason, "recovered");
}

TEST(Funnel, RecoveryPoolsArePerRepository) {
    auto r = run_funnel({hit("a/one", "s.graphql", "type Query { u: User }"), hit("b/two", "u.graphql", "type User { id: ID }")});
    EXPECT_EQ(r.funnel.count("complete_or_recovered"), 1u);
    EXPECT_EQ(r.funnel.count("valid_unique_schemas"), 0u);
}

TEST(Funnel, AstDuplicatesCollapse) {
    auto r = run_funnel({hit("z/z", "s.graphql", "type Query {\n  a: Int\n}"),
                         hit("a/a", "s.graphql", "# copy\ntype Query { a: Int }")});
    EXPECT_EQ(r.funnel.count("valid_unique_schemas"), 1u);
    // First by URL wins, whatever the input order.
    EXPECT_EQ(r.schemas[0].repository, "a/a");
    EXPECT_EQ(r.funnel.dispositions[0].reason, "AST-equivalent to https://github.com/a/a/blob/master/s.graphql");
}

TEST(Funnel, CanonicalDedupMode) {
    std::vector<SearchHit> files = {hit("a/a", "s.graphql", "type Query { a: A } type A { x: Int }"),
                                    hit("b/b", "s.graphql", "type A { x: Int } type Query { a: A }")};
    EXPECT_EQ(run_funnel(files).funnel.count("valid_unique_schemas"), 2u);
    EXPECT_EQ(run_funnel(files, {.dedup_mode = EquivalenceMode::Canonical}).funnel.count("valid_unique_schemas"), 1u);
}

TEST(Funnel, EveryFileHasOneDisposition) {
    std::vector<SearchHit> files = {hit("o/r", "a.graphql", "type Query { a: Int }"), hit("o/r", "a.graphql", "x"),
                                    hit("o/r", "b.graphql", "{"), hit("o/r", "c.graphql", "type Query { b: B }")};
    auto r = run_funnel(files);
    ASSERT_EQ(r.funnel.dispositions.size(), files.size());
    for (const auto& d : r.funnel.dispositions) {
        EXPECT_FALSE(d.stage.empty());
        EXPECT_TRUE(d.survived || !d.reason.empty());
    }
    std::size_t survived = 0;
    for (const auto& d : r.funnel.dispositions) survived += d.survived;
    EXPECT_EQ(survived, r.funnel.count("valid_unique_schemas"));
}

TEST(Funnel, IsIdempotent) {
    std::vector<SearchHit> files = {
        hit("o/app", "query.graphql", "type Query { office: Office }"),
        hit("o/app", "office.graphql", "type Office { id: ID }"),
        hit("p/x", "a.graphql", "type Query { a: Int }"),
        hit("p/y", "a.graphql", "type Query { a: Int }"),
    };
    auto first = run_funnel(files);
    std::vector<SearchHit> again;
    for (const auto& s : first.schemas) again.push_back({s.url, s.path, s.repository, print(s.document)});
    auto second = run_funnel(again);
    for (const auto& [stage, n] : second.funnel.counts) EXPECT_EQ(n, again.size()) << stage;
    ASSERT_EQ(second.schemas.size(), first.schemas.size());
    for (std::size_t i = 0; i < first.schemas.size(); ++i) {
        EXPECT_EQ(second.schemas[i].url, first.schemas[i].url);
        EXPECT_TRUE(ast_equivalent(second.schemas[i].document, first.schemas[i].document));
    }
}

TEST(Funnel, ThreadCountDoesNotChangeResult) {
    std::vector<SearchHit> files;
    for (int i = 0; i < 30; ++i) {
        files.push_back(hit("o/r" + std::to_string(i % 4), "s" + std::to_string(i) + ".graphql",
                            i % 3 ? "type Query { a" + std::to_string(i % 5) + ": Int }" : "type Query { t: T" + std::to_string(i) + " }"));
    }
    auto one = run_funnel(files, {.threads = 1});
    auto many = run_funnel(files, {.threads = 4});
    EXPECT_EQ(one.funnel.counts, many.funnel.counts);
    EXPECT_EQ(stage_of(one), stage_of(many));
}

// --- report ------------------------------------------------------------------

namespace {

std::vector<SchemaDocument> five_schemas() {
    return {
        parse(read_fixture("company_offices.graphql")),
        parse(read_fixture("friends.graphql")),
        parse(read_fixture("repos_members.graphql")),
        parse("type Query { a: Int } type Mutation { setA(v: Int): Int } type Subscription { aChanged: Int }"),
        parse(R"(interface Node { id: ID! }
                 type Query { node: Node items(first: Int): [Item] }
                 type Item implements Node { id: ID! kind: Kind }
                 enum Kind { A B }
                 union U = Item
                 input ItemInput { k: Kind })"),
    };
}

}  // namespace

TEST(CorpusReport, FiveSchemas) {
    auto docs = five_schemas();
    auto r = corpus_report(docs);
    const auto& all = r.all;
    EXPECT_EQ(all.schema_count, 5u);
    EXPECT_EQ(all.characteristics.median_object_types, 3u);
    EXPECT_EQ(all.characteristics.median_input_object_types, 0u);
    EXPECT_EQ(all.characteristics.median_fields_in_object_types, 1u);
    EXPECT_EQ(all.characteristics.median_fields_in_input_object_types, 1u);
    EXPECT_DOUBLE_EQ(all.characteristics.interfaces.proportion, 0.2);
    EXPECT_DOUBLE_EQ(all.characteristics.unions.proportion, 0.2);
    EXPECT_DOUBLE_EQ(all.characteristics.custom_directives.proportion, 0.0);
    EXPECT_DOUBLE_EQ(all.characteristics.subscription.proportion, 0.2);
    EXPECT_DOUBLE_EQ(all.characteristics.mutation.proportion, 0.4);

    auto count = [&](ComplexityClass c) { return all.complexity[static_cast<std::size_t>(c)].count; };
    EXPECT_EQ(count(ComplexityClass::LinearInN), 1u);
    EXPECT_EQ(count(ComplexityClass::LinearInND), 2u);
    EXPECT_EQ(count(ComplexityClass::Quadratic), 1u);
    EXPECT_EQ(count(ComplexityClass::Polynomial), 0u);
    EXPECT_EQ(count(ComplexityClass::Exponential), 1u);

    EXPECT_EQ(all.slicing.none, 2u);
    EXPECT_EQ(all.slicing.throughout, 2u);
    EXPECT_EQ(all.slicing.not_applicable, 1u);
    EXPECT_EQ(all.connections.throughout, 1u);
    EXPECT_EQ(all.connections.not_applicable, 4u);

    auto conv = [&](LintRule rule) { return all.conventions[static_cast<std::size_t>(rule)]; };
    EXPECT_DOUBLE_EQ(conv(LintRule::PascalCaseEnumNames).proportion.value(), 1.0);
    EXPECT_EQ(conv(LintRule::PascalCaseEnumNames).applicable_schemas, 1u);
    EXPECT_DOUBLE_EQ(conv(LintRule::MutationFieldNames).proportion.value(), 0.5);
    EXPECT_DOUBLE_EQ(conv(LintRule::InputPostfix).proportion.value(), 1.0);
    EXPECT_FALSE(r.large.has_value());
}

TEST(CorpusReport, LargeSegment) {
    auto docs = five_schemas();
    auto r = corpus_report(docs, {.large_threshold = 5});
    ASSERT_TRUE(r.large.has_value());
    EXPECT_EQ(r.large->schema_count, 2u);
    EXPECT_EQ(r.large->complexity[static_cast<std::size_t>(ComplexityClass::LinearInND)].count, 2u);
}

TEST(CorpusReport, SingleExponentialSchema) {
    std::vector<SchemaDocument> docs = {parse(read_fixture("friends.graphql"))};
    auto r = corpus_report(docs);
    EXPECT_DOUBLE_EQ(r.all.complexity[static_cast<std::size_t>(ComplexityClass::Exponential)].proportion, 1.0);
}

TEST(CorpusReport, NoEnumsMeansNotApplicable) {
    std::vector<SchemaDocument> docs = {parse("type Query { a: Int }"), parse("type Query { b: String }")};
    auto r = corpus_report(docs);
    for (auto rule : {LintRule::PascalCaseEnumNames, LintRule::AllCapsEnumValues}) {
        EXPECT_FALSE(r.all.conventions[static_cast<std::size_t>(rule)].proportion.has_value());
    }
    auto j = json_io::to_json(r);
    EXPECT_TRUE(j["all"]["conventions"][2]["proportion"].is_null());
}

TEST(CorpusReport, OrderIndependentAndEmpty) {
    auto docs = five_schemas();
    auto forward = json_io::to_json(corpus_report(docs)).dump();
    std::reverse(docs.begin(), docs.end());
    EXPECT_EQ(json_io::to_json(corpus_report(docs)).dump(), forward);
    EXPECT_THROW(corpus_report(std::vector<SchemaDocument>{}), EmptyCorpus);
}
