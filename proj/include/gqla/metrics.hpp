#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/errors.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

struct SchemaStats {
    std::size_t definition_count = 0;
    std::size_t object_type_count = 0;
    std::size_t input_object_type_count = 0;
    std::vector<std::size_t> fields_per_object_type;
    std::vector<std::size_t> fields_per_input_type;
    bool has_interfaces = false;
    bool has_unions = false;
    bool has_custom_directives = false;
    bool supports_mutation = false;
    bool supports_subscription = false;

    friend bool operator==(const SchemaStats&, const SchemaStats&) = default;
};

struct MetricsOptions {
    bool count_schema_definition = true;
};

inline SchemaStats characteristics(const SchemaDocument& doc, MetricsOptions opts = {}) {
    SchemaIndex index(doc);
    SchemaStats s;
    for (const auto& def : index.document().definitions) {
        if (is_extension(def)) continue;
        DefinitionKind kind = kind_of(def);
        if (kind != DefinitionKind::Schema || opts.count_schema_definition) ++s.definition_count;
        switch (kind) {
            case DefinitionKind::Object:
                ++s.object_type_count;
                s.fields_per_object_type.push_back(std::get<ObjectTypeDefinition>(def).fields.size());
                break;
            case DefinitionKind::InputObject:
                ++s.input_object_type_count;
                s.fields_per_input_type.push_back(std::get<InputObjectTypeDefinition>(def).fields.size());
                break;
            case DefinitionKind::Interface: s.has_interfaces = true; break;
            case DefinitionKind::Union: s.has_unions = true; break;
            case DefinitionKind::Directive:
                if (!is_builtin_directive(name_of(def))) s.has_custom_directives = true;
                break;
            default: break;
        }
    }
    s.supports_mutation = index.roots().mutation.has_value();
    s.supports_subscription = index.roots().subscription.has_value();
    return s;
}

inline constexpr std::size_t kLargeSchemaThreshold = 36;

inline bool is_large(const SchemaStats& stats, std::size_t threshold = kLargeSchemaThreshold) {
    return stats.definition_count > threshold;
}

// Lower median: element (n-1)/2 of the sorted values.
inline std::optional<std::size_t> lower_median(std::vector<std::size_t> values) {
    if (values.empty()) return std::nullopt;
    auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

struct FeatureShare {
    std::size_t count = 0;
    double proportion = 0.0;

    friend bool operator==(const FeatureShare&, const FeatureShare&) = default;
};

struct CorpusStats {
    std::size_t schema_count = 0;
    std::size_t median_object_types = 0;
    std::size_t median_input_object_types = 0;
    // Pooled over every type in the corpus; absent when no such type exists.
    std::optional<std::size_t> median_fields_in_object_types;
    std::optional<std::size_t> median_fields_in_input_object_types;
    FeatureShare interfaces;
    FeatureShare unions;
    FeatureShare custom_directives;
    FeatureShare subscription;
    FeatureShare mutation;
};

inline CorpusStats corpus_aggregate(std::span<const SchemaStats> all) {
    if (all.empty()) throw EmptyCorpus();
    CorpusStats c;
    c.schema_count = all.size();
    std::vector<std::size_t> ots, iots, ot_fields, iot_fields;
    auto share = [&](auto member) {
        FeatureShare f;
        f.count = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), member));
        f.proportion = static_cast<double>(f.count) / static_cast<double>(all.size());
        return f;
    };
    for (const auto& s : all) {
        ots.push_back(s.object_type_count);
        iots.push_back(s.input_object_type_count);
        ot_fields.insert(ot_fields.end(), s.fields_per_object_type.begin(), s.fields_per_object_type.end());
        iot_fields.insert(iot_fields.end(), s.fields_per_input_type.begin(), s.fields_per_input_type.end());
    }
    c.median_object_types = *lower_median(std::move(ots));
    c.median_input_object_types = *lower_median(std::move(iots));
    c.median_fields_in_object_types = lower_median(std::move(ot_fields));
    c.median_fields_in_input_object_types = lower_median(std::move(iot_fields));
    c.interfaces = share([](const SchemaStats& s) { return s.has_interfaces; });
    c.unions = share([](const SchemaStats& s) { return s.has_unions; });
    c.custom_directives = share([](const SchemaStats& s) { return s.has_custom_directives; });
    c.subscription = share([](const SchemaStats& s) { return s.supports_subscription; });
    c.mutation = share([](const SchemaStats& s) { return s.supports_mutation; });
    return c;
}

}  // namespace gqla
