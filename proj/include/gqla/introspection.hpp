#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gqla/ast.hpp"
#include "gqla/parser.hpp"
#include "gqla/printer.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

inline constexpr std::string_view kIntrospectionQuery = R"(query IntrospectionQuery {
  __schema {
    queryType { name }
    mutationType { name }
    subscriptionType { name }
    types { ...FullType }
    directives {
      name
      description
      locations
      args { ...InputValue }
    }
  }
}

fragment FullType on __Type {
  kind
  name
  description
  fields(includeDeprecated: true) {
    name
    description
    args { ...InputValue }
    type { ...TypeRef }
    isDeprecated
    deprecationReason
  }
  inputFields { ...InputValue }
  interfaces { ...TypeRef }
  enumValues(includeDeprecated: true) {
    name
    description
    isDeprecated
    deprecationReason
  }
  possibleTypes { ...TypeRef }
}

fragment InputValue on __InputValue {
  name
  description
  type { ...TypeRef }
  defaultValue
}

fragment TypeRef on __Type {
  kind
  name
  ofType {
    kind
    name
    ofType {
      kind
      name
      ofType {
        kind
        name
        ofType {
          kind
          name
          ofType {
            kind
            name
            ofType {
              kind
              name
              ofType {
                kind
                name
              }
            }
          }
        }
      }
    }
  }
})";

// Reason the GraphQL spec assigns to a bare @deprecated.
inline constexpr std::string_view kDefaultDeprecationReason = "No longer supported";

class MalformedIntrospection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw MalformedIntrospection(std::string("introspection: missing \"") + key + "\"");
    }
    return obj.at(key);
}

inline std::string string_member(const json& obj, const char* key) {
    const json& v = member(obj, key);
    if (!v.is_string()) throw MalformedIntrospection(std::string("introspection: \"") + key + "\" is not a string");
    return v.get<std::string>();
}

inline std::optional<std::string> optional_string(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    if (!obj.at(key).is_string()) throw MalformedIntrospection(std::string("introspection: \"") + key + "\" is not a string");
    return obj.at(key).get<std::string>();
}

inline const json& array_member(const json& obj, const char* key) {
    static const json empty = json::array();
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return empty;
    if (!obj.at(key).is_array()) throw MalformedIntrospection(std::string("introspection: \"") + key + "\" is not a list");
    return obj.at(key);
}

inline TypeRef type_ref_from(const json& t) {
    TypeRef ref;
    const json* cur = &t;
    for (int depth = 0; depth < 32; ++depth) {
        std::string kind = string_member(*cur, "kind");
        if (kind == "NON_NULL" || kind == "LIST") {
            ref.wrappers.push_back(kind == "LIST" ? Wrapper::List : Wrapper::NonNull);
            cur = &member(*cur, "ofType");
            continue;
        }
        ref.name = string_member(*cur, "name");
        return ref;
    }
    throw MalformedIntrospection("introspection: type reference nested too deeply");
}

inline std::string_view introspection_kind(const SchemaIndex* index, const std::string& name) {
    switch (index ? index->kind(name).value_or(DefinitionKind::Scalar) : DefinitionKind::Scalar) {
        case DefinitionKind::Object: return "OBJECT";
        case DefinitionKind::Interface: return "INTERFACE";
        case DefinitionKind::Union: return "UNION";
        case DefinitionKind::Enum: return "ENUM";
        case DefinitionKind::InputObject: return "INPUT_OBJECT";
        default: return "SCALAR";
    }
}

inline json type_ref_to(const TypeRef& t, const SchemaIndex* index = nullptr, std::size_t from = 0) {
    if (from == t.wrappers.size()) {
        return {{"kind", introspection_kind(index, t.name)}, {"name", t.name}, {"ofType", nullptr}};
    }
    return {{"kind", t.wrappers[from] == Wrapper::List ? "LIST" : "NON_NULL"},
            {"name", nullptr},
            {"ofType", type_ref_to(t, index, from + 1)}};
}

inline std::vector<Directive> deprecation_from(const json& obj) {
    if (!obj.contains("isDeprecated") || !obj.at("isDeprecated").is_boolean() || !obj.at("isDeprecated").get<bool>()) {
        return {};
    }
    Directive d{"deprecated", {}, {}};
    auto reason = optional_string(obj, "deprecationReason");
    if (reason && *reason != kDefaultDeprecationReason) {
        d.arguments.push_back({"reason", Value{Value::Kind::String, *reason, {}, {}}, {}});
    }
    return {d};
}

inline void deprecation_to(json& out, const std::vector<Directive>& directives) {
    out["isDeprecated"] = false;
    out["deprecationReason"] = nullptr;
    for (const auto& d : directives) {
        if (d.name != "deprecated") continue;
        out["isDeprecated"] = true;
        out["deprecationReason"] = std::string(kDefaultDeprecationReason);
        for (const auto& a : d.arguments) {
            if (a.name == "reason" && a.value.kind == Value::Kind::String) out["deprecationReason"] = a.value.text;
        }
    }
}

inline std::vector<InputValueDefinition> inputs_from(const json& list) {
    std::vector<InputValueDefinition> out;
    for (const auto& iv : list) {
        InputValueDefinition def;
        def.name = string_member(iv, "name");
        def.description = optional_string(iv, "description");
        def.type = type_ref_from(member(iv, "type"));
        if (auto dv = optional_string(iv, "defaultValue")) {
            try {
                def.default_value = parse_value(*dv, true);
            } catch (const ParseError& e) {
                throw MalformedIntrospection("introspection: bad default value for " + def.name + ": " + e.what());
            }
        }
        out.push_back(std::move(def));
    }
    return out;
}

inline json inputs_to(const std::vector<InputValueDefinition>& inputs, const SchemaIndex* index) {
    json out = json::array();
    for (const auto& iv : inputs) {
        out.push_back({{"name", iv.name},
                       {"description", iv.description ? json(*iv.description) : json(nullptr)},
                       {"type", type_ref_to(iv.type, index)},
                       {"defaultValue", iv.default_value ? json(print(*iv.default_value)) : json(nullptr)}});
    }
    return out;
}

inline std::vector<FieldDefinition> fields_from(const json& list) {
    std::vector<FieldDefinition> out;
    for (const auto& f : list) {
        FieldDefinition def;
        def.name = string_member(f, "name");
        def.description = optional_string(f, "description");
        def.arguments = inputs_from(array_member(f, "args"));
        def.type = type_ref_from(member(f, "type"));
        def.directives = deprecation_from(f);
        out.push_back(std::move(def));
    }
    return out;
}

inline json fields_to(const std::vector<FieldDefinition>& fields, const SchemaIndex* index) {
    json out = json::array();
    for (const auto& f : fields) {
        json j = {{"name", f.name},
                  {"description", f.description ? json(*f.description) : json(nullptr)},
                  {"args", inputs_to(f.arguments, index)},
                  {"type", type_ref_to(f.type, index)}};
        deprecation_to(j, f.directives);
        out.push_back(std::move(j));
    }
    return out;
}

inline std::vector<std::string> names_from(const json& list) {
    std::vector<std::string> out;
    for (const auto& t : list) out.push_back(string_member(t, "name"));
    return out;
}

inline json named_refs(const std::vector<std::string>& names, const char* kind) {
    json out = json::array();
    for (const auto& n : names) out.push_back({{"kind", kind}, {"name", n}, {"ofType", nullptr}});
    return out;
}

}  // namespace detail

// Converts an introspection result to SDL definitions. Accepts the full
// response ({"data": {"__schema": ...}}), the data object, or the schema
// object itself. Built-in scalars, built-in directives and introspection
// types are dropped; an explicit schema definition is always produced.
inline SchemaDocument schema_from_introspection(const nlohmann::json& result) {
    using detail::json;
    const json* schema = &result;
    if (schema->is_object() && schema->contains("data")) schema = &detail::member(*schema, "data");
    if (schema->is_object() && schema->contains("__schema")) schema = &detail::member(*schema, "__schema");
    if (!schema->is_object()) throw MalformedIntrospection("introspection: no __schema object");

    SchemaDocument doc;
    SchemaDefinition roots;
    for (auto [key, op] : {std::pair{"queryType", OperationKind::Query}, std::pair{"mutationType", OperationKind::Mutation},
                           std::pair{"subscriptionType", OperationKind::Subscription}}) {
        if (!schema->contains(key) || schema->at(key).is_null()) continue;
        roots.operations.push_back({op, detail::string_member(schema->at(key), "name"), {}});
    }
    if (roots.operations.empty()) throw MalformedIntrospection("introspection: no root operation types");
    doc.definitions.emplace_back(std::move(roots));

    for (const auto& t : detail::member(*schema, "types")) {
        std::string name = detail::string_member(t, "name");
        std::string kind = detail::string_member(t, "kind");
        if (name.starts_with("__")) continue;
        auto description = detail::optional_string(t, "description");
        if (kind == "SCALAR") {
            if (is_builtin_scalar(name)) continue;
            doc.definitions.emplace_back(ScalarTypeDefinition{description, name, {}, false, {}});
        } else if (kind == "OBJECT") {
            doc.definitions.emplace_back(ObjectTypeDefinition{description, name,
                                                              detail::names_from(detail::array_member(t, "interfaces")),
                                                              {}, detail::fields_from(detail::array_member(t, "fields")),
                                                              false, {}});
        } else if (kind == "INTERFACE") {
            doc.definitions.emplace_back(InterfaceTypeDefinition{
                description, name, detail::names_from(detail::array_member(t, "interfaces")), {},
                detail::fields_from(detail::array_member(t, "fields")), false, {}});
        } else if (kind == "UNION") {
            doc.definitions.emplace_back(UnionTypeDefinition{
                description, name, {}, detail::names_from(detail::array_member(t, "possibleTypes")), false, {}});
        } else if (kind == "ENUM") {
            EnumTypeDefinition e{description, name, {}, {}, false, {}};
            for (const auto& v : detail::array_member(t, "enumValues")) {
                e.values.push_back({detail::optional_string(v, "description"), detail::string_member(v, "name"),
                                    detail::deprecation_from(v), {}});
            }
            doc.definitions.emplace_back(std::move(e));
        } else if (kind == "INPUT_OBJECT") {
            doc.definitions.emplace_back(InputObjectTypeDefinition{
                description, name, {}, detail::inputs_from(detail::array_member(t, "inputFields")), false, {}});
        } else {
            throw MalformedIntrospection("introspection: unknown type kind " + kind);
        }
    }

    for (const auto& d : detail::array_member(*schema, "directives")) {
        std::string name = detail::string_member(d, "name");
        if (is_builtin_directive(name) || name == "specifiedBy") continue;
        DirectiveDefinition def;
        def.name = name;
        def.description = detail::optional_string(d, "description");
        def.arguments = detail::inputs_from(detail::array_member(d, "args"));
        def.repeatable = d.contains("isRepeatable") && d.at("isRepeatable").is_boolean() && d.at("isRepeatable").get<bool>();
        for (const auto& loc : detail::array_member(d, "locations")) {
            if (!loc.is_string()) throw MalformedIntrospection("introspection: directive location is not a string");
            def.locations.push_back(loc.get<std::string>());
        }
        doc.definitions.emplace_back(std::move(def));
    }
    return doc;
}

// The {"__schema": ...} object a server would answer the introspection
// query with. Built-in scalars appear as types and the built-in
// directives are listed, as a live server would do.
inline nlohmann::json introspection_result(const SchemaDocument& doc) {
    using detail::json;
    SchemaIndex index(doc);
    json schema;
    const RootTypes& roots = index.roots();
    auto root = [](const std::optional<std::string>& r) { return r ? json{{"name", *r}} : json(nullptr); };
    schema["queryType"] = root(roots.query);
    schema["mutationType"] = root(roots.mutation);
    schema["subscriptionType"] = root(roots.subscription);

    json types = json::array();
    auto base = [](const char* kind, const std::string& name, const std::optional<std::string>& description) {
        return json{{"kind", kind},
                    {"name", name},
                    {"description", description ? json(*description) : json(nullptr)},
                    {"fields", nullptr},
                    {"inputFields", nullptr},
                    {"interfaces", nullptr},
                    {"enumValues", nullptr},
                    {"possibleTypes", nullptr}};
    };
    for (auto scalar : kBuiltinScalars) {
        if (!index.type(scalar)) types.push_back(base("SCALAR", std::string(scalar), std::nullopt));
    }
    json directives = json::array();
    for (const auto& def : index.document().definitions) {
        if (is_extension(def)) continue;
        std::visit(
            [&](const auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, ScalarTypeDefinition>) {
                    types.push_back(base("SCALAR", d.name, d.description));
                } else if constexpr (std::is_same_v<T, ObjectTypeDefinition>) {
                    json t = base("OBJECT", d.name, d.description);
                    t["fields"] = detail::fields_to(d.fields, &index);
                    t["interfaces"] = detail::named_refs(d.interfaces, "INTERFACE");
                    types.push_back(std::move(t));
                } else if constexpr (std::is_same_v<T, InterfaceTypeDefinition>) {
                    json t = base("INTERFACE", d.name, d.description);
                    t["fields"] = detail::fields_to(d.fields, &index);
                    t["interfaces"] = detail::named_refs(d.interfaces, "INTERFACE");
                    t["possibleTypes"] = detail::named_refs(index.possible_types(d.name), "OBJECT");
                    types.push_back(std::move(t));
                } else if constexpr (std::is_same_v<T, UnionTypeDefinition>) {
                    json t = base("UNION", d.name, d.description);
                    t["possibleTypes"] = detail::named_refs(d.members, "OBJECT");
                    types.push_back(std::move(t));
                } else if constexpr (std::is_same_v<T, EnumTypeDefinition>) {
                    json t = base("ENUM", d.name, d.description);
                    t["enumValues"] = json::array();
                    for (const auto& v : d.values) {
                        json j = {{"name", v.name}, {"description", v.description ? json(*v.description) : json(nullptr)}};
                        detail::deprecation_to(j, v.directives);
                        t["enumValues"].push_back(std::move(j));
                    }
                    types.push_back(std::move(t));
                } else if constexpr (std::is_same_v<T, InputObjectTypeDefinition>) {
                    json t = base("INPUT_OBJECT", d.name, d.description);
                    t["inputFields"] = detail::inputs_to(d.fields, &index);
                    types.push_back(std::move(t));
                } else if constexpr (std::is_same_v<T, DirectiveDefinition>) {
                    directives.push_back({{"name", d.name},
                                          {"description", d.description ? json(*d.description) : json(nullptr)},
                                          {"locations", d.locations},
                                          {"args", detail::inputs_to(d.arguments, &index)},
                                          {"isRepeatable", d.repeatable}});
                }
            },
            def);
    }
    for (auto name : kBuiltinDirectives) {
        if (index.directive(name)) continue;
        json args = json::array();
        if (name == "deprecated") {
            args.push_back({{"name", "reason"},
                            {"description", nullptr},
                            {"type", detail::type_ref_to(TypeRef{"String", {}})},
                            {"defaultValue", "\"No longer supported\""}});
        } else {
            args.push_back({{"name", "if"},
                            {"description", nullptr},
                            {"type", detail::type_ref_to(TypeRef{"Boolean", {Wrapper::NonNull}})},
                            {"defaultValue", nullptr}});
        }
        json locations = name == "deprecated" ? json{"FIELD_DEFINITION", "ENUM_VALUE"}
                                              : json{"FIELD", "FRAGMENT_SPREAD", "INLINE_FRAGMENT"};
        directives.push_back({{"name", std::string(name)},
                              {"description", nullptr},
                              {"locations", locations},
                              {"args", args},
                              {"isRepeatable", false}});
    }
    schema["types"] = std::move(types);
    schema["directives"] = std::move(directives);
    return json{{"__schema", std::move(schema)}};
}

}  // namespace gqla
