#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

enum class ValidationStatus : std::uint8_t { Valid, Incomplete, Invalid };

inline std::string_view to_string(ValidationStatus s) {
    switch (s) {
        case ValidationStatus::Valid: return "valid";
        case ValidationStatus::Incomplete: return "incomplete";
        case ValidationStatus::Invalid: return "invalid";
    }
    return "invalid";
}

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    Location loc;
    // Name of the definition the diagnostic is about, when there is one.
    std::string subject;
};

struct ValidationResult {
    ValidationStatus status = ValidationStatus::Valid;
    // Type names, and directive names prefixed with '@'.
    std::set<std::string> missing_references;
    std::vector<Diagnostic> diagnostics;

    bool has_errors() const {
        return std::any_of(diagnostics.begin(), diagnostics.end(),
                           [](const Diagnostic& d) { return d.severity == Severity::Error; });
    }
};

namespace detail {

class Validator {
public:
    explicit Validator(const SchemaDocument& doc) : index_(doc) {}

    ValidationResult run() {
        const auto& defs = index_.document().definitions;
        check_duplicates(defs);
        for (const auto& def : defs) {
            if (is_extension(def)) {
                orphan_extension(def);
                continue;
            }
            std::visit([this](const auto& d) { check(d); }, def);
        }
        bool has_query = index_.has_query_operation();
        if (!has_query) {
            error("schema has no query operation", {}, "");
        }
        if (!has_query) {
            result_.status = ValidationStatus::Invalid;
        } else if (!result_.missing_references.empty()) {
            result_.status = ValidationStatus::Incomplete;
        } else if (result_.has_errors()) {
            result_.status = ValidationStatus::Invalid;
        } else {
            result_.status = ValidationStatus::Valid;
        }
        return std::move(result_);
    }

private:
    enum class Position { Output, Input };

    void error(std::string message, Location loc, std::string subject) {
        result_.diagnostics.push_back({Severity::Error, std::move(message), loc, std::move(subject)});
    }

    void missing(const std::string& name, Location loc, const std::string& subject) {
        result_.missing_references.insert(name);
        result_.diagnostics.push_back({Severity::Error, "unknown reference \"" + name + "\"", loc, subject});
    }

    void check_duplicates(const std::vector<Definition>& defs) {
        std::set<std::string> types, directives;
        bool schema_seen = false;
        for (const auto& def : defs) {
            if (is_extension(def)) continue;
            DefinitionKind kind = kind_of(def);
            std::string name(name_of(def));
            if (kind == DefinitionKind::Schema) {
                if (schema_seen) error("multiple schema definitions", location_of(def), "");
                schema_seen = true;
            } else if (kind == DefinitionKind::Directive) {
                if (!directives.insert(name).second) {
                    error("duplicate directive \"@" + name + "\"", location_of(def), "@" + name);
                }
            } else if (!types.insert(name).second) {
                error("duplicate type \"" + name + "\"", location_of(def), name);
            }
        }
    }

    void orphan_extension(const Definition& ext) {
        std::string name(name_of(ext));
        if (kind_of(ext) == DefinitionKind::Schema) {
            error("cannot extend schema without a schema definition", location_of(ext), "");
        } else if (index_.type(name)) {
            error("cannot extend \"" + name + "\" as " + std::string(to_string(kind_of(ext))), location_of(ext),
                  name);
        } else {
            missing(name, location_of(ext), name);
        }
    }

    void directives(const std::vector<Directive>& dirs, const std::string& subject) {
        for (const auto& d : dirs) {
            if (!is_builtin_directive(d.name) && !index_.directive(d.name)) {
                missing("@" + d.name, d.loc, subject);
            }
        }
    }

    void type_ref(const TypeRef& ref, Position pos, Location loc, const std::string& subject) {
        if (is_builtin_scalar(ref.name) && !index_.type(ref.name)) return;
        auto kind = index_.kind(ref.name);
        if (!kind) {
            missing(ref.name, loc, subject);
            return;
        }
        bool input_kind = *kind == DefinitionKind::InputObject;
        bool output_kind = index_.is_composite_output(ref.name);
        if (pos == Position::Output && input_kind) {
            error("input type \"" + ref.name + "\" used in output position", loc, subject);
        } else if (pos == Position::Input && output_kind) {
            error("output type \"" + ref.name + "\" used in input position", loc, subject);
        }
    }

    void input_values(const std::vector<InputValueDefinition>& values, const std::string& subject,
                      const char* what) {
        std::set<std::string> seen;
        for (const auto& v : values) {
            if (!seen.insert(v.name).second) {
                error(std::string("duplicate ") + what + " \"" + v.name + "\"", v.loc, subject);
            }
            reserved(v.name, v.loc, subject);
            type_ref(v.type, Position::Input, v.loc, subject);
            directives(v.directives, subject);
        }
    }

    void reserved(const std::string& name, Location loc, const std::string& subject) {
        if (name.rfind("__", 0) == 0) {
            error("name \"" + name + "\" is reserved for introspection", loc, subject);
        }
    }

    void field_list(const std::vector<FieldDefinition>& fields, const std::string& owner, Location loc) {
        if (fields.empty()) {
            error("type \"" + owner + "\" must define one or more fields", loc, owner);
        }
        std::set<std::string> seen;
        for (const auto& f : fields) {
            if (!seen.insert(f.name).second) {
                error("duplicate field \"" + owner + "." + f.name + "\"", f.loc, owner);
            }
            reserved(f.name, f.loc, owner);
            type_ref(f.type, Position::Output, f.loc, owner);
            input_values(f.arguments, owner, "argument");
            directives(f.directives, owner);
        }
    }

    bool resolvable(const std::string& name) const { return is_builtin_scalar(name) || index_.type(name); }

    static TypeRef unwrap_one(const TypeRef& t) {
        TypeRef inner = t;
        inner.wrappers.erase(inner.wrappers.begin());
        return inner;
    }

    bool is_subtype(const TypeRef& sub, const TypeRef& super) const {
        if (super.is_non_null()) {
            return sub.is_non_null() && is_subtype(unwrap_one(sub), unwrap_one(super));
        }
        if (sub.is_non_null()) return is_subtype(unwrap_one(sub), super);
        bool super_list = !super.wrappers.empty();
        bool sub_list = !sub.wrappers.empty();
        if (super_list) return sub_list && is_subtype(unwrap_one(sub), unwrap_one(super));
        if (sub_list) return false;
        if (sub.name == super.name) return true;
        auto possible = index_.possible_types(super.name);
        if (std::find(possible.begin(), possible.end(), sub.name) != possible.end()) return true;
        if (index_.kind(super.name) == DefinitionKind::Interface) {
            auto impls = index_.implementers(super.name);
            return std::find(impls.begin(), impls.end(), sub.name) != impls.end();
        }
        return false;
    }

    void implements(const std::vector<std::string>& ifaces, const std::vector<FieldDefinition>& fields,
                    const std::string& owner, Location loc) {
        for (const auto& iface : ifaces) {
            auto kind = index_.kind(iface);
            if (!kind && !is_builtin_scalar(iface)) {
                missing(iface, loc, owner);
                continue;
            }
            if (!kind || *kind != DefinitionKind::Interface) {
                error("\"" + owner + "\" cannot implement non-interface \"" + iface + "\"", loc, owner);
                continue;
            }
            for (const auto& want : *index_.fields(iface)) {
                auto have = std::find_if(fields.begin(), fields.end(),
                                         [&](const FieldDefinition& f) { return f.name == want.name; });
                if (have == fields.end()) {
                    error("\"" + owner + "\" is missing interface field \"" + iface + "." + want.name + "\"", loc,
                          owner);
                    continue;
                }
                // Unresolved names make the subtype test meaningless; those
                // are reported as missing references instead.
                if (resolvable(have->type.name) && resolvable(want.type.name) &&
                    !is_subtype(have->type, want.type)) {
                    error("field \"" + owner + "." + want.name + "\" does not match interface \"" + iface + "\"",
                          have->loc, owner);
                }
                for (const auto& arg : want.arguments) {
                    auto match = std::find_if(have->arguments.begin(), have->arguments.end(),
                                              [&](const InputValueDefinition& a) { return a.name == arg.name; });
                    if (match == have->arguments.end() || !(match->type == arg.type)) {
                        error("field \"" + owner + "." + want.name + "\" does not accept interface argument \"" +
                                  arg.name + "\"",
                              have->loc, owner);
                    }
                }
            }
        }
    }

    void check(const SchemaDefinition& d) {
        directives(d.directives, "");
        std::set<OperationKind> seen;
        for (const auto& op : d.operations) {
            if (!seen.insert(op.operation).second) {
                error("duplicate " + std::string(to_string(op.operation)) + " root operation", op.loc, "");
            }
            auto kind = index_.kind(op.type_name);
            if (!kind && !is_builtin_scalar(op.type_name)) {
                missing(op.type_name, op.loc, "");
            } else if (!kind || *kind != DefinitionKind::Object) {
                error("root operation type \"" + op.type_name + "\" must be an object type", op.loc, op.type_name);
            }
        }
    }

    void check(const ScalarTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
    }

    void check(const ObjectTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
        field_list(d.fields, d.name, d.loc);
        implements(d.interfaces, d.fields, d.name, d.loc);
    }

    void check(const InterfaceTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
        field_list(d.fields, d.name, d.loc);
        implements(d.interfaces, d.fields, d.name, d.loc);
    }

    void check(const UnionTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
        if (d.members.empty()) {
            error("union \"" + d.name + "\" must define one or more member types", d.loc, d.name);
        }
        std::set<std::string> seen;
        for (const auto& m : d.members) {
            if (!seen.insert(m).second) {
                error("union \"" + d.name + "\" lists \"" + m + "\" twice", d.loc, d.name);
            }
            auto kind = index_.kind(m);
            if (!kind && !is_builtin_scalar(m)) {
                missing(m, d.loc, d.name);
            } else if (!kind || *kind != DefinitionKind::Object) {
                error("union member \"" + m + "\" must be an object type", d.loc, d.name);
            }
        }
    }

    void check(const EnumTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
        if (d.values.empty()) {
            error("enum \"" + d.name + "\" must define one or more values", d.loc, d.name);
        }
        std::set<std::string> seen;
        for (const auto& v : d.values) {
            if (!seen.insert(v.name).second) {
                error("duplicate enum value \"" + d.name + "." + v.name + "\"", v.loc, d.name);
            }
            directives(v.directives, d.name);
        }
    }

    void check(const InputObjectTypeDefinition& d) {
        reserved(d.name, d.loc, d.name);
        directives(d.directives, d.name);
        if (d.fields.empty()) {
            error("input \"" + d.name + "\" must define one or more fields", d.loc, d.name);
        }
        input_values(d.fields, d.name, "input field");
    }

    void check(const DirectiveDefinition& d) {
        reserved(d.name, d.loc, "@" + d.name);
        input_values(d.arguments, "@" + d.name, "argument");
    }

    SchemaIndex index_;
    ValidationResult result_;
};

}  // namespace detail

// Completeness and validity check. `valid` requires a query operation and
// every reference to resolve; `incomplete` means the query operation exists
// but references are unresolved; anything else is `invalid`.
inline ValidationResult validate(const SchemaDocument& doc) { return detail::Validator(doc).run(); }

}  // namespace gqla
