#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/lexer.hpp"

namespace gqla {

namespace detail {

inline constexpr std::string_view kDirectiveLocations[] = {
    // executable
    "QUERY", "MUTATION", "SUBSCRIPTION", "FIELD", "FRAGMENT_DEFINITION", "FRAGMENT_SPREAD", "INLINE_FRAGMENT",
    "VARIABLE_DEFINITION",
    // type system
    "SCHEMA", "SCALAR", "OBJECT", "FIELD_DEFINITION", "ARGUMENT_DEFINITION", "INTERFACE", "UNION", "ENUM",
    "ENUM_VALUE", "INPUT_OBJECT", "INPUT_FIELD_DEFINITION"};

inline bool is_directive_location(std::string_view name) {
    for (auto loc : kDirectiveLocations) {
        if (loc == name) {
            return true;
        }
    }
    return false;
}

// Recursive-descent parser for the June 2018 GraphQL grammar: type system
// definitions and extensions plus executable definitions.
class Parser {
public:
    explicit Parser(std::string_view source) : lexer_(source) { tok_ = lexer_.next(); }

    ParsedDocument document() {
        ParsedDocument doc;
        while (tok_.kind != TokenKind::EndOfFile) {
            if (tok_.kind == TokenKind::BraceL) {
                doc.executables.push_back(operation_definition());
                continue;
            }
            if (tok_.kind == TokenKind::String || tok_.kind == TokenKind::BlockString) {
                std::string description = tok_.value;
                advance();
                doc.schema.definitions.push_back(type_system_definition(std::move(description)));
                continue;
            }
            if (tok_.kind != TokenKind::Name) {
                unexpected();
            }
            const std::string& kw = tok_.value;
            if (kw == "query" || kw == "mutation" || kw == "subscription") {
                doc.executables.push_back(operation_definition());
            } else if (kw == "fragment") {
                doc.executables.push_back(fragment_definition());
            } else if (kw == "extend") {
                doc.schema.definitions.push_back(type_system_extension());
            } else {
                doc.schema.definitions.push_back(type_system_definition(std::nullopt));
            }
        }
        return doc;
    }

    Value standalone_value(bool constant) {
        Value v = value(constant);
        expect(TokenKind::EndOfFile);
        return v;
    }

    TypeRef standalone_type() {
        TypeRef t = type_ref();
        expect(TokenKind::EndOfFile);
        return t;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    [[noreturn]] void unexpected() const {
        if (tok_.kind == TokenKind::Name) {
            throw ParseError("unexpected Name \"" + tok_.value + "\"", tok_.loc);
        }
        throw ParseError("unexpected " + std::string(describe(tok_.kind)), tok_.loc);
    }

    bool peek(TokenKind kind) const { return tok_.kind == kind; }

    bool peek_keyword(std::string_view kw) const { return tok_.kind == TokenKind::Name && tok_.value == kw; }

    bool skip(TokenKind kind) {
        if (tok_.kind == kind) {
            advance();
            return true;
        }
        return false;
    }

    bool skip_keyword(std::string_view kw) {
        if (peek_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }

    Token expect(TokenKind kind) {
        if (tok_.kind != kind) {
            throw ParseError("expected " + std::string(describe(kind)) + ", found " + found(), tok_.loc);
        }
        Token t = std::move(tok_);
        advance();
        return t;
    }

    void expect_keyword(std::string_view kw) {
        if (!peek_keyword(kw)) {
            throw ParseError("expected \"" + std::string(kw) + "\", found " + found(), tok_.loc);
        }
        advance();
    }

    std::string found() const {
        if (tok_.kind == TokenKind::Name) {
            return "Name \"" + tok_.value + "\"";
        }
        return std::string(describe(tok_.kind));
    }

    std::string name() { return expect(TokenKind::Name).value; }

    std::optional<std::string> optional_description() {
        if (peek(TokenKind::String) || peek(TokenKind::BlockString)) {
            std::string d = tok_.value;
            advance();
            return d;
        }
        return std::nullopt;
    }

    // --- values and types -------------------------------------------------

    Value value(bool constant) {
        Value v;
        switch (tok_.kind) {
            case TokenKind::BracketL: {
                advance();
                v.kind = Value::Kind::List;
                while (!skip(TokenKind::BracketR)) {
                    v.items.push_back(value(constant));
                }
                return v;
            }
            case TokenKind::BraceL: {
                advance();
                v.kind = Value::Kind::Object;
                while (!skip(TokenKind::BraceR)) {
                    ObjectField f;
                    f.name = name();
                    expect(TokenKind::Colon);
                    f.value = value(constant);
                    v.fields.push_back(std::move(f));
                }
                return v;
            }
            case TokenKind::Int:
                v.kind = Value::Kind::Int;
                v.text = tok_.value;
                advance();
                return v;
            case TokenKind::Float:
                v.kind = Value::Kind::Float;
                v.text = tok_.value;
                advance();
                return v;
            case TokenKind::String:
            case TokenKind::BlockString:
                v.kind = Value::Kind::String;
                v.text = tok_.value;
                advance();
                return v;
            case TokenKind::Name:
                if (tok_.value == "true" || tok_.value == "false") {
                    v.kind = Value::Kind::Boolean;
                } else if (tok_.value == "null") {
                    v.kind = Value::Kind::Null;
                } else {
                    v.kind = Value::Kind::Enum;
                }
                v.text = tok_.value;
                advance();
                return v;
            case TokenKind::Dollar:
                if (!constant) {
                    advance();
                    v.kind = Value::Kind::Variable;
                    v.text = name();
                    return v;
                }
                break;
            default: break;
        }
        unexpected();
    }

    TypeRef type_ref() {
        TypeRef t;
        if (skip(TokenKind::BracketL)) {
            TypeRef inner = type_ref();
            expect(TokenKind::BracketR);
            t.name = std::move(inner.name);
            t.wrappers.push_back(Wrapper::List);
            t.wrappers.insert(t.wrappers.end(), inner.wrappers.begin(), inner.wrappers.end());
        } else {
            t.name = name();
        }
        if (skip(TokenKind::Bang)) {
            t.wrappers.insert(t.wrappers.begin(), Wrapper::NonNull);
        }
        return t;
    }

    std::vector<Argument> arguments(bool constant) {
        std::vector<Argument> args;
        if (!skip(TokenKind::ParenL)) {
            return args;
        }
        do {
            Argument a;
            a.loc = tok_.loc;
            a.name = name();
            expect(TokenKind::Colon);
            a.value = value(constant);
            args.push_back(std::move(a));
        } while (!skip(TokenKind::ParenR));
        return args;
    }

    std::vector<Directive> directives(bool constant) {
        std::vector<Directive> out;
        while (peek(TokenKind::At)) {
            Directive d;
            d.loc = tok_.loc;
            advance();
            d.name = name();
            d.arguments = arguments(constant);
            out.push_back(std::move(d));
        }
        return out;
    }

    // --- type system ------------------------------------------------------

    Definition type_system_definition(std::optional<std::string> description) {
        Location loc = tok_.loc;
        if (tok_.kind != TokenKind::Name) {
            unexpected();
        }
        std::string kw = tok_.value;
        if (kw == "schema") {
            advance();
            SchemaDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.directives = directives(true);
            d.operations = root_operations(true);
            return d;
        }
        if (kw == "scalar") {
            advance();
            ScalarTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            return d;
        }
        if (kw == "type") {
            advance();
            ObjectTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.interfaces = implements();
            d.directives = directives(true);
            d.fields = fields_definition(false);
            return d;
        }
        if (kw == "interface") {
            advance();
            InterfaceTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.interfaces = implements();
            d.directives = directives(true);
            d.fields = fields_definition(false);
            return d;
        }
        if (kw == "union") {
            advance();
            UnionTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.members = union_members();
            return d;
        }
        if (kw == "enum") {
            advance();
            EnumTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.values = enum_values(false);
            return d;
        }
        if (kw == "input") {
            advance();
            InputObjectTypeDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.fields = input_fields(false);
            return d;
        }
        if (kw == "directive") {
            advance();
            DirectiveDefinition d;
            d.description = std::move(description);
            d.loc = loc;
            expect(TokenKind::At);
            d.name = name();
            d.arguments = argument_definitions();
            d.repeatable = skip_keyword("repeatable");
            expect_keyword("on");
            skip(TokenKind::Pipe);
            do {
                Location at = tok_.loc;
                std::string where = name();
                if (!is_directive_location(where)) {
                    throw ParseError("unexpected directive location \"" + where + "\"", at);
                }
                d.locations.push_back(std::move(where));
            } while (skip(TokenKind::Pipe));
            return d;
        }
        unexpected();
    }

    Definition type_system_extension() {
        Location loc = tok_.loc;
        expect_keyword("extend");
        if (tok_.kind != TokenKind::Name) {
            unexpected();
        }
        std::string kw = tok_.value;
        auto require_some = [&](bool any) {
            if (!any) {
                unexpected();
            }
        };
        if (kw == "schema") {
            advance();
            SchemaDefinition d;
            d.extension = true;
            d.loc = loc;
            d.directives = directives(true);
            if (peek(TokenKind::BraceL)) {
                d.operations = root_operations(true);
            }
            require_some(!d.directives.empty() || !d.operations.empty());
            return d;
        }
        if (kw == "scalar") {
            advance();
            ScalarTypeDefinition d;
            d.extension = true;
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            require_some(!d.directives.empty());
            return d;
        }
        if (kw == "type" || kw == "interface") {
            advance();
            std::string n = name();
            auto ifaces = implements();
            auto dirs = directives(true);
            auto flds = fields_definition(true);
            require_some(!ifaces.empty() || !dirs.empty() || !flds.empty());
            if (kw == "type") {
                ObjectTypeDefinition d{std::nullopt, std::move(n), std::move(ifaces), std::move(dirs), std::move(flds),
                                       true, loc};
                return d;
            }
            InterfaceTypeDefinition d{std::nullopt, std::move(n), std::move(ifaces), std::move(dirs), std::move(flds),
                                      true, loc};
            return d;
        }
        if (kw == "union") {
            advance();
            UnionTypeDefinition d;
            d.extension = true;
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.members = union_members();
            require_some(!d.directives.empty() || !d.members.empty());
            return d;
        }
        if (kw == "enum") {
            advance();
            EnumTypeDefinition d;
            d.extension = true;
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.values = enum_values(true);
            require_some(!d.directives.empty() || !d.values.empty());
            return d;
        }
        if (kw == "input") {
            advance();
            InputObjectTypeDefinition d;
            d.extension = true;
            d.loc = loc;
            d.name = name();
            d.directives = directives(true);
            d.fields = input_fields(true);
            require_some(!d.directives.empty() || !d.fields.empty());
            return d;
        }
        unexpected();
    }

    std::vector<RootOperation> root_operations(bool require) {
        std::vector<RootOperation> ops;
        if (!require && !peek(TokenKind::BraceL)) {
            return ops;
        }
        expect(TokenKind::BraceL);
        do {
            RootOperation op;
            op.loc = tok_.loc;
            Token t = expect(TokenKind::Name);
            if (t.value == "query") {
                op.operation = OperationKind::Query;
            } else if (t.value == "mutation") {
                op.operation = OperationKind::Mutation;
            } else if (t.value == "subscription") {
                op.operation = OperationKind::Subscription;
            } else {
                throw ParseError("unexpected Name \"" + t.value + "\"", t.loc);
            }
            expect(TokenKind::Colon);
            op.type_name = name();
            ops.push_back(std::move(op));
        } while (!skip(TokenKind::BraceR));
        return ops;
    }

    std::vector<std::string> implements() {
        std::vector<std::string> out;
        if (!skip_keyword("implements")) {
            return out;
        }
        skip(TokenKind::Amp);
        do {
            out.push_back(name());
        } while (skip(TokenKind::Amp));
        return out;
    }

    std::vector<std::string> union_members() {
        std::vector<std::string> out;
        if (!skip(TokenKind::Equals)) {
            return out;
        }
        skip(TokenKind::Pipe);
        do {
            out.push_back(name());
        } while (skip(TokenKind::Pipe));
        return out;
    }

    std::vector<FieldDefinition> fields_definition(bool) {
        std::vector<FieldDefinition> out;
        if (!skip(TokenKind::BraceL)) {
            return out;
        }
        do {
            FieldDefinition f;
            f.description = optional_description();
            f.loc = tok_.loc;
            f.name = name();
            f.arguments = argument_definitions();
            expect(TokenKind::Colon);
            f.type = type_ref();
            f.directives = directives(true);
            out.push_back(std::move(f));
        } while (!skip(TokenKind::BraceR));
        return out;
    }

    InputValueDefinition input_value_definition() {
        InputValueDefinition v;
        v.description = optional_description();
        v.loc = tok_.loc;
        v.name = name();
        expect(TokenKind::Colon);
        v.type = type_ref();
        if (skip(TokenKind::Equals)) {
            v.default_value = value(true);
        }
        v.directives = directives(true);
        return v;
    }

    std::vector<InputValueDefinition> argument_definitions() {
        std::vector<InputValueDefinition> out;
        if (!skip(TokenKind::ParenL)) {
            return out;
        }
        do {
            out.push_back(input_value_definition());
        } while (!skip(TokenKind::ParenR));
        return out;
    }

    std::vector<InputValueDefinition> input_fields(bool) {
        std::vector<InputValueDefinition> out;
        if (!skip(TokenKind::BraceL)) {
            return out;
        }
        do {
            out.push_back(input_value_definition());
        } while (!skip(TokenKind::BraceR));
        return out;
    }

    std::vector<EnumValueDefinition> enum_values(bool) {
        std::vector<EnumValueDefinition> out;
        if (!skip(TokenKind::BraceL)) {
            return out;
        }
        do {
            EnumValueDefinition v;
            v.description = optional_description();
            v.loc = tok_.loc;
            if (peek_keyword("true") || peek_keyword("false") || peek_keyword("null")) {
                throw ParseError(tok_.value + " is reserved and cannot be used for an enum value", tok_.loc);
            }
            v.name = name();
            v.directives = directives(true);
            out.push_back(std::move(v));
        } while (!skip(TokenKind::BraceR));
        return out;
    }

    // --- executable -------------------------------------------------------

    ExecutableDefinition operation_definition() {
        ExecutableDefinition d;
        d.kind = ExecutableDefinition::Kind::Operation;
        d.loc = tok_.loc;
        if (peek(TokenKind::BraceL)) {
            d.selections = selection_set();
            return d;
        }
        Token t = expect(TokenKind::Name);
        d.operation = t.value == "mutation"       ? OperationKind::Mutation
                      : t.value == "subscription" ? OperationKind::Subscription
                                                  : OperationKind::Query;
        if (peek(TokenKind::Name)) {
            d.name = name();
        }
        if (skip(TokenKind::ParenL)) {
            do {
                VariableDefinition v;
                expect(TokenKind::Dollar);
                v.name = name();
                expect(TokenKind::Colon);
                v.type = type_ref();
                if (skip(TokenKind::Equals)) {
                    v.default_value = value(true);
                }
                v.directives = directives(true);
                d.variables.push_back(std::move(v));
            } while (!skip(TokenKind::ParenR));
        }
        d.directives = directives(false);
        d.selections = selection_set();
        return d;
    }

    ExecutableDefinition fragment_definition() {
        ExecutableDefinition d;
        d.kind = ExecutableDefinition::Kind::Fragment;
        d.loc = tok_.loc;
        expect_keyword("fragment");
        if (peek_keyword("on")) {
            unexpected();
        }
        d.name = name();
        expect_keyword("on");
        d.type_condition = name();
        d.directives = directives(false);
        d.selections = selection_set();
        return d;
    }

    std::vector<Selection> selection_set() {
        std::vector<Selection> out;
        expect(TokenKind::BraceL);
        do {
            out.push_back(selection());
        } while (!skip(TokenKind::BraceR));
        return out;
    }

    Selection selection() {
        Selection s;
        s.loc = tok_.loc;
        if (skip(TokenKind::Spread)) {
            if (peek(TokenKind::Name) && !peek_keyword("on")) {
                s.kind = Selection::Kind::FragmentSpread;
                s.name = name();
                s.directives = directives(false);
                return s;
            }
            s.kind = Selection::Kind::InlineFragment;
            if (skip_keyword("on")) {
                s.name = name();
            }
            s.directives = directives(false);
            s.selections = selection_set();
            return s;
        }
        s.kind = Selection::Kind::Field;
        std::string first = name();
        if (skip(TokenKind::Colon)) {
            s.alias = std::move(first);
            s.name = name();
        } else {
            s.name = std::move(first);
        }
        s.arguments = arguments(false);
        s.directives = directives(false);
        if (peek(TokenKind::BraceL)) {
            s.selections = selection_set();
        }
        return s;
    }

    Lexer lexer_;
    Token tok_;
};

}  // namespace detail

// Parses type-system and executable definitions. Whitespace-only input
// yields an empty document.
inline ParsedDocument parse_document(std::string_view text) { return detail::Parser(text).document(); }

// Parses an SDL schema document; executable definitions are a parse error.
inline SchemaDocument parse(std::string_view text, std::optional<std::string> source_name = std::nullopt) {
    ParsedDocument doc = parse_document(text);
    if (!doc.executables.empty()) {
        throw ParseError("executable definitions are not allowed in a schema document", doc.executables.front().loc);
    }
    doc.schema.source_name = std::move(source_name);
    return std::move(doc.schema);
}

// True iff the text contains no operation or fragment definitions.
inline bool is_pure_schema(std::string_view text) { return parse_document(text).executables.empty(); }

inline Value parse_value(std::string_view text, bool constant = true) {
    return detail::Parser(text).standalone_value(constant);
}

inline TypeRef parse_type_ref(std::string_view text) { return detail::Parser(text).standalone_type(); }

}  // namespace gqla
