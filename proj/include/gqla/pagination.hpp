#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

enum class PatternStatus : std::uint8_t { None, Some, Throughout, NotApplicable };

inline std::string_view to_string(PatternStatus s) {
    switch (s) {
        case PatternStatus::None: return "none";
        case PatternStatus::Some: return "some";
        case PatternStatus::Throughout: return "throughout";
        case PatternStatus::NotApplicable: return "not_applicable";
    }
    return "not_applicable";
}

inline PatternStatus pattern_status(std::size_t applicable, std::size_t matching) {
    if (applicable == 0) return PatternStatus::NotApplicable;
    if (matching == 0) return PatternStatus::None;
    if (matching == applicable) return PatternStatus::Throughout;
    return PatternStatus::Some;
}

struct PaginationReport {
    std::size_t list_field_count = 0;  // fields returning a list of objects
    std::size_t sliced_list_fields = 0;
    PatternStatus slicing_status = PatternStatus::NotApplicable;
    std::size_t connection_type_count = 0;
    std::vector<std::string> connection_types;  // sorted
    std::size_t connection_returning_fields = 0;
    std::size_t sliced_connection_fields = 0;
    PatternStatus connections_status = PatternStatus::NotApplicable;

    friend bool operator==(const PaginationReport&, const PaginationReport&) = default;
};

struct PaginationOptions {
    std::set<std::string> slicing_names = {"first", "last", "limit", "size"};
};

// A slicing argument is an Int (possibly non-null, never a list) with
// one of the configured names.
inline bool has_slicing_argument(const FieldDefinition& f, const PaginationOptions& opts = {}) {
    for (const auto& arg : f.arguments) {
        if (arg.type.name == "Int" && arg.type.list_depth() == 0 && opts.slicing_names.contains(arg.name)) {
            return true;
        }
    }
    return false;
}

inline PaginationReport detect_pagination(const SchemaDocument& doc, const PaginationOptions& opts = {}) {
    SchemaIndex index(doc);
    PaginationReport r;
    for (const auto& def : index.document().definitions) {
        if (is_extension(def)) continue;
        DefinitionKind kind = kind_of(def);
        if (!is_type_definition(kind)) continue;
        std::string name(name_of(def));
        if (name.ends_with("Connection") || name.ends_with("Edge")) r.connection_types.push_back(name);
        if (kind != DefinitionKind::Object && kind != DefinitionKind::Interface) continue;
        for (const auto& f : *index.fields(name)) {
            bool sliced = has_slicing_argument(f, opts);
            if (f.type.list_depth() >= 1 && index.is_composite_output(f.type.name)) {
                ++r.list_field_count;
                if (sliced) ++r.sliced_list_fields;
            }
            if (f.type.name.ends_with("Connection")) {
                ++r.connection_returning_fields;
                if (sliced) ++r.sliced_connection_fields;
            }
        }
    }
    std::sort(r.connection_types.begin(), r.connection_types.end());
    r.connection_type_count = r.connection_types.size();
    r.slicing_status = pattern_status(r.list_field_count, r.sliced_list_fields);
    r.connections_status = pattern_status(r.connection_returning_fields, r.sliced_connection_fields);
    return r;
}

}  // namespace gqla
