#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"

namespace gqla {

inline constexpr std::array<std::string_view, 5> kBuiltinScalars = {"Int", "Float", "String", "Boolean", "ID"};
inline constexpr std::array<std::string_view, 3> kBuiltinDirectives = {"skip", "include", "deprecated"};

inline bool is_builtin_scalar(std::string_view name) {
    for (auto s : kBuiltinScalars) {
        if (s == name) return true;
    }
    return false;
}

inline bool is_builtin_directive(std::string_view name) {
    for (auto s : kBuiltinDirectives) {
        if (s == name) return true;
    }
    return false;
}

namespace detail {

template <class T>
void append(std::vector<T>& to, const std::vector<T>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

}  // namespace detail

// Folds every extension into the first base definition of the same kind and
// name. Extensions without a matching base stay in place, still flagged as
// extensions.
inline SchemaDocument merge_extensions(const SchemaDocument& doc) {
    SchemaDocument out;
    out.source_name = doc.source_name;
    std::vector<const Definition*> extensions;
    for (const auto& def : doc.definitions) {
        if (is_extension(def)) {
            extensions.push_back(&def);
        } else {
            out.definitions.push_back(def);
        }
    }
    for (const Definition* ext : extensions) {
        auto base = std::find_if(out.definitions.begin(), out.definitions.end(), [&](const Definition& d) {
            return !is_extension(d) && d.index() == ext->index() && name_of(d) == name_of(*ext);
        });
        if (base == out.definitions.end()) {
            out.definitions.push_back(*ext);
            continue;
        }
        std::visit(
            [&](auto& b) {
                using T = std::decay_t<decltype(b)>;
                const T& e = std::get<T>(*ext);
                if constexpr (!std::is_same_v<T, DirectiveDefinition>) {
                    detail::append(b.directives, e.directives);
                }
                if constexpr (std::is_same_v<T, SchemaDefinition>) {
                    detail::append(b.operations, e.operations);
                } else if constexpr (std::is_same_v<T, ObjectTypeDefinition> ||
                                     std::is_same_v<T, InterfaceTypeDefinition>) {
                    detail::append(b.interfaces, e.interfaces);
                    detail::append(b.fields, e.fields);
                } else if constexpr (std::is_same_v<T, UnionTypeDefinition>) {
                    detail::append(b.members, e.members);
                } else if constexpr (std::is_same_v<T, EnumTypeDefinition>) {
                    detail::append(b.values, e.values);
                } else if constexpr (std::is_same_v<T, InputObjectTypeDefinition>) {
                    detail::append(b.fields, e.fields);
                }
            },
            *base);
    }
    return out;
}

struct RootTypes {
    std::optional<std::string> query;
    std::optional<std::string> mutation;
    std::optional<std::string> subscription;
};

// Name-keyed lookup over a document with extensions merged. Holds its own
// copy of the merged document, so it is safe to copy and share.
class SchemaIndex {
public:
    explicit SchemaIndex(const SchemaDocument& doc) : doc_(merge_extensions(doc)) {
        for (std::size_t i = 0; i < doc_.definitions.size(); ++i) {
            const Definition& def = doc_.definitions[i];
            if (is_extension(def)) continue;
            DefinitionKind kind = kind_of(def);
            if (kind == DefinitionKind::Schema) {
                if (!schema_) schema_ = i;
            } else if (kind == DefinitionKind::Directive) {
                directives_.emplace(std::string(name_of(def)), i);
            } else {
                types_.emplace(std::string(name_of(def)), i);
            }
        }
        if (schema_) {
            for (const auto& op : std::get<SchemaDefinition>(doc_.definitions[*schema_]).operations) {
                auto& slot = op.operation == OperationKind::Query      ? roots_.query
                             : op.operation == OperationKind::Mutation ? roots_.mutation
                                                                       : roots_.subscription;
                if (!slot) slot = op.type_name;
            }
        } else {
            auto conventional = [this](const char* name) -> std::optional<std::string> {
                if (kind(name) == DefinitionKind::Object) return std::string(name);
                return std::nullopt;
            };
            roots_.query = conventional("Query");
            roots_.mutation = conventional("Mutation");
            roots_.subscription = conventional("Subscription");
        }
    }

    const SchemaDocument& document() const { return doc_; }
    const RootTypes& roots() const { return roots_; }
    bool has_schema_definition() const { return schema_.has_value(); }

    // Explicit schema definition naming a query root, or an object type
    // literally named Query.
    bool has_query_operation() const {
        if (schema_ && roots_.query) return true;
        return kind("Query") == DefinitionKind::Object;
    }

    const Definition* type(std::string_view name) const {
        auto it = types_.find(std::string(name));
        return it == types_.end() ? nullptr : &doc_.definitions[it->second];
    }

    const DirectiveDefinition* directive(std::string_view name) const {
        auto it = directives_.find(std::string(name));
        return it == directives_.end() ? nullptr : &std::get<DirectiveDefinition>(doc_.definitions[it->second]);
    }

    std::optional<DefinitionKind> kind(std::string_view name) const {
        if (const Definition* d = type(name)) return kind_of(*d);
        return std::nullopt;
    }

    bool is_composite_output(std::string_view name) const {
        auto k = kind(name);
        return k == DefinitionKind::Object || k == DefinitionKind::Interface || k == DefinitionKind::Union;
    }

    bool is_leaf(std::string_view name) const {
        if (is_builtin_scalar(name) && !type(name)) return true;
        auto k = kind(name);
        return k == DefinitionKind::Scalar || k == DefinitionKind::Enum;
    }

    // Fields of an object or interface type; null for any other kind.
    const std::vector<FieldDefinition>* fields(std::string_view name) const {
        const Definition* d = type(name);
        if (!d) return nullptr;
        if (auto* o = std::get_if<ObjectTypeDefinition>(d)) return &o->fields;
        if (auto* i = std::get_if<InterfaceTypeDefinition>(d)) return &i->fields;
        return nullptr;
    }

    // Object types (and interfaces) declaring `implements iface`, in document order.
    std::vector<std::string> implementers(std::string_view iface) const {
        std::vector<std::string> out;
        for (const auto& def : doc_.definitions) {
            if (is_extension(def)) continue;
            const std::vector<std::string>* ifaces = nullptr;
            if (auto* o = std::get_if<ObjectTypeDefinition>(&def)) ifaces = &o->interfaces;
            if (auto* i = std::get_if<InterfaceTypeDefinition>(&def)) ifaces = &i->interfaces;
            if (ifaces && std::find(ifaces->begin(), ifaces->end(), iface) != ifaces->end()) {
                out.emplace_back(name_of(def));
            }
        }
        return out;
    }

    // Concrete object types a value of the named type may have at runtime.
    std::vector<std::string> possible_types(std::string_view name) const {
        const Definition* d = type(name);
        if (!d) return {};
        if (std::holds_alternative<ObjectTypeDefinition>(*d)) return {std::string(name)};
        if (auto* u = std::get_if<UnionTypeDefinition>(d)) {
            std::vector<std::string> out;
            for (const auto& m : u->members) {
                if (kind(m) == DefinitionKind::Object) out.push_back(m);
            }
            return out;
        }
        if (std::holds_alternative<InterfaceTypeDefinition>(*d)) {
            std::vector<std::string> out;
            for (auto& impl : implementers(name)) {
                if (kind(impl) == DefinitionKind::Object) out.push_back(impl);
            }
            return out;
        }
        return {};
    }

private:
    SchemaDocument doc_;
    std::map<std::string, std::size_t> types_;
    std::map<std::string, std::size_t> directives_;
    std::optional<std::size_t> schema_;
    RootTypes roots_;
};

inline bool has_query_operation(const SchemaDocument& doc) { return SchemaIndex(doc).has_query_operation(); }

}  // namespace gqla
