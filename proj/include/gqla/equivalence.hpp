#pragma once

#include <algorithm>
#include <tuple>
#include <variant>

#include "gqla/ast.hpp"

namespace gqla {

enum class EquivalenceMode : std::uint8_t {
    // Exact structural equality; definition and member order are significant.
    Ordered,
    // Compare canonical forms (see canonicalize()).
    Canonical,
};

namespace detail {

inline bool same(const Directive& a, const Directive& b) {
    if (a.name != b.name || a.arguments.size() != b.arguments.size()) return false;
    for (std::size_t i = 0; i < a.arguments.size(); ++i) {
        if (a.arguments[i].name != b.arguments[i].name || !(a.arguments[i].value == b.arguments[i].value)) {
            return false;
        }
    }
    return true;
}

template <class T, class Eq>
bool same_seq(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!eq(a[i], b[i])) return false;
    }
    return true;
}

inline bool same_dirs(const std::vector<Directive>& a, const std::vector<Directive>& b) {
    return same_seq(a, b, [](const Directive& x, const Directive& y) { return same(x, y); });
}

inline bool same(const InputValueDefinition& a, const InputValueDefinition& b) {
    return a.name == b.name && a.type == b.type && a.default_value == b.default_value &&
           same_dirs(a.directives, b.directives);
}

inline bool same_inputs(const std::vector<InputValueDefinition>& a, const std::vector<InputValueDefinition>& b) {
    return same_seq(a, b, [](const InputValueDefinition& x, const InputValueDefinition& y) { return same(x, y); });
}

inline bool same(const FieldDefinition& a, const FieldDefinition& b) {
    return a.name == b.name && a.type == b.type && same_inputs(a.arguments, b.arguments) &&
           same_dirs(a.directives, b.directives);
}

inline bool same_fields(const std::vector<FieldDefinition>& a, const std::vector<FieldDefinition>& b) {
    return same_seq(a, b, [](const FieldDefinition& x, const FieldDefinition& y) { return same(x, y); });
}

inline bool same_def(const SchemaDefinition& a, const SchemaDefinition& b) {
    return a.extension == b.extension && same_dirs(a.directives, b.directives) &&
           same_seq(a.operations, b.operations, [](const RootOperation& x, const RootOperation& y) {
               return x.operation == y.operation && x.type_name == y.type_name;
           });
}

inline bool same_def(const ScalarTypeDefinition& a, const ScalarTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && same_dirs(a.directives, b.directives);
}

inline bool same_def(const ObjectTypeDefinition& a, const ObjectTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && a.interfaces == b.interfaces &&
           same_dirs(a.directives, b.directives) && same_fields(a.fields, b.fields);
}

inline bool same_def(const InterfaceTypeDefinition& a, const InterfaceTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && a.interfaces == b.interfaces &&
           same_dirs(a.directives, b.directives) && same_fields(a.fields, b.fields);
}

inline bool same_def(const UnionTypeDefinition& a, const UnionTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && a.members == b.members &&
           same_dirs(a.directives, b.directives);
}

inline bool same_def(const EnumTypeDefinition& a, const EnumTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && same_dirs(a.directives, b.directives) &&
           same_seq(a.values, b.values, [](const EnumValueDefinition& x, const EnumValueDefinition& y) {
               return x.name == y.name && same_dirs(x.directives, y.directives);
           });
}

inline bool same_def(const InputObjectTypeDefinition& a, const InputObjectTypeDefinition& b) {
    return a.extension == b.extension && a.name == b.name && same_dirs(a.directives, b.directives) &&
           same_inputs(a.fields, b.fields);
}

inline bool same_def(const DirectiveDefinition& a, const DirectiveDefinition& b) {
    return a.name == b.name && a.repeatable == b.repeatable && a.locations == b.locations &&
           same_inputs(a.arguments, b.arguments);
}

template <class T>
void sort_by_name(std::vector<T>& v) {
    std::stable_sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.name < b.name; });
}

inline void canonicalize_inputs(std::vector<InputValueDefinition>& v) {
    sort_by_name(v);
    for (auto& i : v) sort_by_name(i.directives);
}

inline void canonicalize_fields(std::vector<FieldDefinition>& v) {
    sort_by_name(v);
    for (auto& f : v) {
        canonicalize_inputs(f.arguments);
        sort_by_name(f.directives);
    }
}

}  // namespace detail

// Sorted form used by canonical comparison: definitions ordered by
// (name, kind), members and arguments by name, and an implicit schema
// definition materialised when the document relies on conventional root
// type names.
inline SchemaDocument canonicalize(SchemaDocument doc) {
    bool has_schema = std::any_of(doc.definitions.begin(), doc.definitions.end(), [](const Definition& d) {
        return kind_of(d) == DefinitionKind::Schema && !is_extension(d);
    });
    if (!has_schema) {
        SchemaDefinition implicit;
        for (auto [kind, type_name] : {std::pair{OperationKind::Query, "Query"},
                                       std::pair{OperationKind::Mutation, "Mutation"},
                                       std::pair{OperationKind::Subscription, "Subscription"}}) {
            bool present = std::any_of(doc.definitions.begin(), doc.definitions.end(), [&](const Definition& d) {
                return kind_of(d) == DefinitionKind::Object && !is_extension(d) && name_of(d) == type_name;
            });
            if (present) implicit.operations.push_back({kind, type_name, {}});
        }
        if (!implicit.operations.empty()) doc.definitions.emplace_back(std::move(implicit));
    }
    for (auto& def : doc.definitions) {
        std::visit(
            [](auto& d) {
                using T = std::decay_t<decltype(d)>;
                if constexpr (!std::is_same_v<T, DirectiveDefinition>) {
                    detail::sort_by_name(d.directives);
                }
                if constexpr (std::is_same_v<T, SchemaDefinition>) {
                    std::stable_sort(d.operations.begin(), d.operations.end(),
                                     [](const RootOperation& a, const RootOperation& b) {
                                         return a.operation < b.operation;
                                     });
                } else if constexpr (std::is_same_v<T, ObjectTypeDefinition> ||
                                     std::is_same_v<T, InterfaceTypeDefinition>) {
                    std::sort(d.interfaces.begin(), d.interfaces.end());
                    detail::canonicalize_fields(d.fields);
                } else if constexpr (std::is_same_v<T, UnionTypeDefinition>) {
                    std::sort(d.members.begin(), d.members.end());
                } else if constexpr (std::is_same_v<T, EnumTypeDefinition>) {
                    detail::sort_by_name(d.values);
                    for (auto& v : d.values) detail::sort_by_name(v.directives);
                } else if constexpr (std::is_same_v<T, InputObjectTypeDefinition>) {
                    detail::canonicalize_inputs(d.fields);
                } else if constexpr (std::is_same_v<T, DirectiveDefinition>) {
                    detail::canonicalize_inputs(d.arguments);
                    std::sort(d.locations.begin(), d.locations.end());
                }
            },
            def);
    }
    std::stable_sort(doc.definitions.begin(), doc.definitions.end(), [](const Definition& a, const Definition& b) {
        return std::tuple(name_of(a), a.index(), is_extension(a)) < std::tuple(name_of(b), b.index(), is_extension(b));
    });
    return doc;
}

// Structural equality ignoring source locations, descriptions and
// formatting.
inline bool ast_equivalent(const SchemaDocument& a, const SchemaDocument& b,
                           EquivalenceMode mode = EquivalenceMode::Ordered) {
    if (mode == EquivalenceMode::Canonical) {
        return ast_equivalent(canonicalize(a), canonicalize(b), EquivalenceMode::Ordered);
    }
    if (a.definitions.size() != b.definitions.size()) return false;
    for (std::size_t i = 0; i < a.definitions.size(); ++i) {
        const Definition& x = a.definitions[i];
        const Definition& y = b.definitions[i];
        if (x.index() != y.index()) return false;
        bool eq = std::visit(
            [&y](const auto& dx) {
                using T = std::decay_t<decltype(dx)>;
                return detail::same_def(dx, std::get<T>(y));
            },
            x);
        if (!eq) return false;
    }
    return true;
}

}  // namespace gqla
