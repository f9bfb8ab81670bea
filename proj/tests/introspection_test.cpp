#include <gtest/gtest.h>

#include "gqla/equivalence.hpp"
#include "gqla/introspection.hpp"
#include "gqla/introspection_client.hpp"
#include "gqla/parser.hpp"
#include "gqla/printer.hpp"
#include "support/fixture_server.hpp"
#include "support/fixtures.hpp"

using namespace gqla;
using gqla::testing::FixtureServer;
using gqla::testing::read_fixture;

namespace {

const char* kRichSchema = R"(
"Root"
type Query {
  node(id: ID!): Node
  search(term: String = "x", first: Int = 10, kinds: [Kind!] = [A, B]): [Result!]!
  legacy: String @deprecated
  old: Int @deprecated(reason: "use new")
}
interface Node { id: ID! }
interface Named implements Node { id: ID! name: String }
type User implements Node & Named { id: ID! name: String friends(filter: Filter): [User] }
type Post implements Node { id: ID! title: String }
union Result = User | Post
enum Kind { A B @deprecated(reason: "gone") C }
input Filter { near: Point = {x: 1, y: 2.5} tags: [String] active: Boolean! = true }
input Point { x: Int! y: Float }
scalar DateTime
directive @auth(role: String = "admin") repeatable on FIELD_DEFINITION | OBJECT
)";

}  // namespace

TEST(Introspection, RoundTripCompanySchema) {
    auto doc = parse(read_fixture("company_offices.graphql"));
    auto back = schema_from_introspection(introspection_result(doc));
    EXPECT_TRUE(ast_equivalent(back, doc, EquivalenceMode::Canonical)) << print(back);
}

TEST(Introspection, RoundTripRichSchema) {
    auto doc = parse(kRichSchema);
    auto back = schema_from_introspection(introspection_result(doc));
    EXPECT_TRUE(ast_equivalent(back, doc, EquivalenceMode::Canonical)) << print(back);
    EXPECT_EQ(validate(back).status, ValidationStatus::Valid);
}

TEST(Introspection, DropsBuiltinsAndIntrospectionTypes) {
    auto json = introspection_result(parse("type Query { a: Int }"));
    json["__schema"]["types"].push_back({{"kind", "OBJECT"}, {"name", "__Schema"}, {"fields", nlohmann::json::array()}});
    auto doc = schema_from_introspection(json);
    ASSERT_EQ(doc.definitions.size(), 2u);
    EXPECT_EQ(kind_of(doc.definitions[0]), DefinitionKind::Schema);
    EXPECT_EQ(name_of(doc.definitions[1]), "Query");
}

TEST(Introspection, AcceptsResponseDataOrSchema) {
    auto inner = introspection_result(parse("type Query { a: Int }"));
    auto a = schema_from_introspection(inner);
    auto b = schema_from_introspection(nlohmann::json{{"data", inner}});
    auto c = schema_from_introspection(inner["__schema"]);
    EXPECT_TRUE(ast_equivalent(a, b));
    EXPECT_TRUE(ast_equivalent(a, c));
}

TEST(Introspection, MalformedInput) {
    EXPECT_THROW(schema_from_introspection(nlohmann::json::array()), MalformedIntrospection);
    EXPECT_THROW(schema_from_introspection(nlohmann::json{{"__schema", {{"types", nlohmann::json::array()}}}}),
                 MalformedIntrospection);
    auto bad = introspection_result(parse("type Query { a: Int }"));
    bad["__schema"]["types"][0]["kind"] = "WIDGET";
    EXPECT_THROW(schema_from_introspection(bad), MalformedIntrospection);
}

TEST(Introspection, QueryTextParses) {
    auto parsed = parse_document(kIntrospectionQuery);
    EXPECT_TRUE(parsed.schema.definitions.empty());
    EXPECT_EQ(parsed.executables.size(), 4u);
}

TEST(IntrospectionClient, FixtureServerCompanySchema) {
    auto doc = parse(read_fixture("company_offices.graphql"));
    FixtureServer server(doc);
    auto got = introspect(server.url());
    EXPECT_TRUE(ast_equivalent(got, doc, EquivalenceMode::Canonical));
    EXPECT_EQ(got.source_name, server.url());
}

TEST(IntrospectionClient, HeadersAreSent) {
    FixtureServer server(parse(kRichSchema));
    try {
        introspect(server.url("/private"));
        FAIL() << "expected http_error";
    } catch (const IntrospectionError& e) {
        EXPECT_EQ(e.kind(), IntrospectionError::Kind::Http);
        EXPECT_EQ(e.status(), 401);
    }
    auto doc = introspect(server.url("/private"), {.headers = {{"Authorization", "Bearer secret"}}});
    EXPECT_TRUE(ast_equivalent(doc, parse(kRichSchema), EquivalenceMode::Canonical));
}

TEST(IntrospectionClient, ErrorKinds) {
    FixtureServer server(parse("type Query { a: Int }"));
    auto kind_of_failure = [](const std::string& url) {
        try {
            introspect(url, {.timeout = std::chrono::seconds(2)});
        } catch (const IntrospectionError& e) {
            return e.kind();
        }
        ADD_FAILURE() << "no error for " << url;
        return IntrospectionError::Kind::Network;
    };
    EXPECT_EQ(kind_of_failure(server.url("/disabled")), IntrospectionError::Kind::Disabled);
    EXPECT_EQ(kind_of_failure(server.url("/garbage")), IntrospectionError::Kind::Malformed);
    EXPECT_EQ(kind_of_failure(server.url("/empty")), IntrospectionError::Kind::Malformed);
    EXPECT_EQ(kind_of_failure(server.url("/missing")), IntrospectionError::Kind::Http);
    EXPECT_EQ(kind_of_failure("http://127.0.0.1:1/graphql"), IntrospectionError::Kind::Network);
    EXPECT_EQ(kind_of_failure("not a url"), IntrospectionError::Kind::Network);
}

TEST(Endpoint, Parsing) {
    auto e = parse_endpoint("https://api.example.com/graphql");
    EXPECT_EQ(e.scheme, "https");
    EXPECT_EQ(e.host, "api.example.com");
    EXPECT_EQ(e.port, 443);
    EXPECT_EQ(e.path, "/graphql");
    auto local = parse_endpoint("http://127.0.0.1:8080");
    EXPECT_EQ(local.port, 8080);
    EXPECT_EQ(local.path, "/");
    EXPECT_THROW(parse_endpoint("ftp://x/y"), std::invalid_argument);
}
