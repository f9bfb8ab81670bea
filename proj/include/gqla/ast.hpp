#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gqla/errors.hpp"

namespace gqla {

enum class Wrapper : std::uint8_t { List, NonNull };

// A possibly wrapped reference to a named type. `[Int!]!` is stored as
// name "Int" with wrappers {NonNull, List, NonNull}.
struct TypeRef {
    std::string name;
    std::vector<Wrapper> wrappers;  // outermost first

    std::size_t list_depth() const {
        return static_cast<std::size_t>(std::count(wrappers.begin(), wrappers.end(), Wrapper::List));
    }
    bool is_non_null() const { return !wrappers.empty() && wrappers.front() == Wrapper::NonNull; }

    friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

struct ObjectField;

struct Value {
    enum class Kind : std::uint8_t { Variable, Int, Float, String, Boolean, Null, Enum, List, Object };

    Kind kind = Kind::Null;
    // Variable name, numeric literal as written, decoded string contents,
    // "true"/"false", or enum value name depending on kind.
    std::string text;
    std::vector<Value> items;
    std::vector<ObjectField> fields;

    friend bool operator==(const Value&, const Value&);
};

struct ObjectField {
    std::string name;
    Value value;
};

inline bool operator==(const Value& a, const Value& b) {
    if (a.kind != b.kind || a.text != b.text || a.items != b.items || a.fields.size() != b.fields.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
        if (a.fields[i].name != b.fields[i].name || !(a.fields[i].value == b.fields[i].value)) {
            return false;
        }
    }
    return true;
}

struct Argument {
    std::string name;
    Value value;
    Location loc;
};

struct Directive {
    std::string name;
    std::vector<Argument> arguments;
    Location loc;
};

struct InputValueDefinition {
    std::optional<std::string> description;
    std::string name;
    TypeRef type;
    std::optional<Value> default_value;
    std::vector<Directive> directives;
    Location loc;
};

struct FieldDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<InputValueDefinition> arguments;
    TypeRef type;
    std::vector<Directive> directives;
    Location loc;
};

struct EnumValueDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<Directive> directives;
    Location loc;
};

enum class OperationKind : std::uint8_t { Query, Mutation, Subscription };

inline std::string_view to_string(OperationKind kind) {
    switch (kind) {
        case OperationKind::Query: return "query";
        case OperationKind::Mutation: return "mutation";
        case OperationKind::Subscription: return "subscription";
    }
    return "query";
}

struct RootOperation {
    OperationKind operation = OperationKind::Query;
    std::string type_name;
    Location loc;
};

struct SchemaDefinition {
    std::optional<std::string> description;
    std::vector<Directive> directives;
    std::vector<RootOperation> operations;
    bool extension = false;
    Location loc;
};

struct ScalarTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<Directive> directives;
    bool extension = false;
    Location loc;
};

struct ObjectTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<std::string> interfaces;
    std::vector<Directive> directives;
    std::vector<FieldDefinition> fields;
    bool extension = false;
    Location loc;
};

struct InterfaceTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<std::string> interfaces;
    std::vector<Directive> directives;
    std::vector<FieldDefinition> fields;
    bool extension = false;
    Location loc;
};

struct UnionTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<Directive> directives;
    std::vector<std::string> members;
    bool extension = false;
    Location loc;
};

struct EnumTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<Directive> directives;
    std::vector<EnumValueDefinition> values;
    bool extension = false;
    Location loc;
};

struct InputObjectTypeDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<Directive> directives;
    std::vector<InputValueDefinition> fields;
    bool extension = false;
    Location loc;
};

struct DirectiveDefinition {
    std::optional<std::string> description;
    std::string name;
    std::vector<InputValueDefinition> arguments;
    bool repeatable = false;
    std::vector<std::string> locations;
    Location loc;
};

using Definition = std::variant<SchemaDefinition, ScalarTypeDefinition, ObjectTypeDefinition,
                                InterfaceTypeDefinition, UnionTypeDefinition, EnumTypeDefinition,
                                InputObjectTypeDefinition, DirectiveDefinition>;

enum class DefinitionKind : std::uint8_t { Schema, Scalar, Object, Interface, Union, Enum, InputObject, Directive };

inline DefinitionKind kind_of(const Definition& def) { return static_cast<DefinitionKind>(def.index()); }

inline std::string_view to_string(DefinitionKind kind) {
    switch (kind) {
        case DefinitionKind::Schema: return "schema";
        case DefinitionKind::Scalar: return "scalar";
        case DefinitionKind::Object: return "type";
        case DefinitionKind::Interface: return "interface";
        case DefinitionKind::Union: return "union";
        case DefinitionKind::Enum: return "enum";
        case DefinitionKind::InputObject: return "input";
        case DefinitionKind::Directive: return "directive";
    }
    return "type";
}

// Empty for the schema definition.
inline std::string_view name_of(const Definition& def) {
    return std::visit(
        [](const auto& d) -> std::string_view {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, SchemaDefinition>) {
                return {};
            } else {
                return d.name;
            }
        },
        def);
}

inline bool is_extension(const Definition& def) {
    return std::visit(
        [](const auto& d) {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, DirectiveDefinition>) {
                return false;
            } else {
                return d.extension;
            }
        },
        def);
}

inline bool is_type_definition(DefinitionKind kind) {
    return kind != DefinitionKind::Schema && kind != DefinitionKind::Directive;
}

inline Location location_of(const Definition& def) {
    return std::visit([](const auto& d) { return d.loc; }, def);
}

struct SchemaDocument {
    std::vector<Definition> definitions;
    std::optional<std::string> source_name;
};

// Executable documents are parsed only so that mixed files can be recognised;
// no analysis consumes them beyond counting.
struct Selection {
    enum class Kind : std::uint8_t { Field, FragmentSpread, InlineFragment };

    Kind kind = Kind::Field;
    std::optional<std::string> alias;
    std::string name;  // field name, spread fragment name, or inline type condition (may be empty)
    std::vector<Argument> arguments;
    std::vector<Directive> directives;
    std::vector<Selection> selections;
    Location loc;
};

struct VariableDefinition {
    std::string name;
    TypeRef type;
    std::optional<Value> default_value;
    std::vector<Directive> directives;
};

struct ExecutableDefinition {
    enum class Kind : std::uint8_t { Operation, Fragment };

    Kind kind = Kind::Operation;
    OperationKind operation = OperationKind::Query;
    std::optional<std::string> name;
    std::string type_condition;  // fragments only
    std::vector<VariableDefinition> variables;
    std::vector<Directive> directives;
    std::vector<Selection> selections;
    Location loc;
};

struct ParsedDocument {
    SchemaDocument schema;
    std::vector<ExecutableDefinition> executables;
};

}  // namespace gqla
