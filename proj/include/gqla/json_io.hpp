#pragma once

#include <json.hpp>

#include <cmath>
#include <optional>
#include <string>

#include "gqla/complexity.hpp"
#include "gqla/funnel.hpp"
#include "gqla/lint.hpp"
#include "gqla/metrics.hpp"
#include "gqla/pagination.hpp"
#include "gqla/recovery.hpp"
#include "gqla/report.hpp"
#include "gqla/validate.hpp"

// JSON views of the analysis results. Objects are key-sorted and
// proportions are rounded to four decimals so output is byte-stable.
namespace gqla::json_io {

using nlohmann::json;

inline double fixed(double x) { return std::round(x * 10000.0) / 10000.0; }

template <typename T>
json optional_value(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline json location(Location loc) { return {{"line", loc.line}, {"column", loc.column}}; }

inline json to_json(const ValidationResult& v) {
    json diagnostics = json::array();
    for (const auto& d : v.diagnostics) {
        diagnostics.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                               {"message", d.message},
                               {"subject", d.subject},
                               {"location", location(d.loc)}});
    }
    return {{"status", to_string(v.status)}, {"missing_references", v.missing_references}, {"diagnostics", diagnostics}};
}

inline json to_json(const RecoveryOutcome& r) {
    return {{"status", to_string(r.status)}, {"appended_paths", r.appended_paths}, {"unresolved", r.unresolved}};
}

inline json to_json(const SchemaStats& s, std::size_t threshold = kLargeSchemaThreshold) {
    return {{"definition_count", s.definition_count},
            {"object_type_count", s.object_type_count},
            {"input_object_type_count", s.input_object_type_count},
            {"fields_per_object_type", s.fields_per_object_type},
            {"fields_per_input_type", s.fields_per_input_type},
            {"has_interfaces", s.has_interfaces},
            {"has_unions", s.has_unions},
            {"has_custom_directives", s.has_custom_directives},
            {"supports_mutation", s.supports_mutation},
            {"supports_subscription", s.supports_subscription},
            {"large", is_large(s, threshold)}};
}

inline json to_json(const FeatureShare& f) { return {{"count", f.count}, {"proportion", fixed(f.proportion)}}; }

inline json to_json(const CorpusStats& c) {
    return {{"schema_count", c.schema_count},
            {"median_object_types", c.median_object_types},
            {"median_input_object_types", c.median_input_object_types},
            {"median_fields_in_object_types", optional_value(c.median_fields_in_object_types)},
            {"median_fields_in_input_object_types", optional_value(c.median_fields_in_input_object_types)},
            {"interfaces", to_json(c.interfaces)},
            {"unions", to_json(c.unions)},
            {"custom_directives", to_json(c.custom_directives)},
            {"subscription", to_json(c.subscription)},
            {"mutation", to_json(c.mutation)}};
}

inline json to_json(const LintReport& r) {
    json rules = json::array();
    for (const auto& res : r.rules) {
        rules.push_back({{"id", rule_id(res.rule)},
                         {"rule", rule_name(res.rule)},
                         {"status", to_string(res.status())},
                         {"applicable", res.applicable},
                         {"violations", res.violations},
                         {"offenders", res.offenders}});
    }
    return {{"rules", rules}};
}

inline json to_json(const std::array<ConventionShare, 7>& shares) {
    json rules = json::array();
    for (const auto& s : shares) {
        rules.push_back({{"id", rule_id(s.rule)},
                         {"rule", rule_name(s.rule)},
                         {"applicable_schemas", s.applicable_schemas},
                         {"consistent_schemas", s.consistent_schemas},
                         {"proportion", s.proportion ? json(fixed(*s.proportion)) : json(nullptr)}});
    }
    return rules;
}

struct BoundRequest {
    std::uint64_t n = 0;
    std::uint64_t d = 0;
};

inline json to_json(const ComplexityReport& r, std::optional<BoundRequest> bound = std::nullopt) {
    json j = {{"class", to_string(r.cls)}, {"k", optional_value(r.k)}, {"witness", r.witness_steps()}};
    if (bound) {
        json b = {{"n", bound->n}, {"d", bound->d}};
        if (r.cls == ComplexityClass::Exponential) {
            b["value"] = nullptr;
            b["formula"] = "O(D^(n-1))";
        } else {
            b["formula"] = "(n-K)*D^K + (D^K-1)/(D-1)";
            try {
                b["value"] = response_bound(bound->n, *r.k, bound->d);
            } catch (const std::exception& e) {
                b["value"] = nullptr;
                b["error"] = e.what();
            }
        }
        j["bound"] = b;
    }
    return j;
}

inline json to_json(const PaginationReport& p) {
    return {{"list_field_count", p.list_field_count},
            {"sliced_list_fields", p.sliced_list_fields},
            {"slicing_status", to_string(p.slicing_status)},
            {"connection_type_count", p.connection_type_count},
            {"connection_types", p.connection_types},
            {"connection_returning_fields", p.connection_returning_fields},
            {"sliced_connection_fields", p.sliced_connection_fields},
            {"connections_status", to_string(p.connections_status)}};
}

inline json to_json(const Disposition& d) {
    return {{"url", d.url},         {"repository", d.repository}, {"path", d.path},
            {"survived", d.survived}, {"stage", d.stage},          {"reason", d.reason}};
}

inline json to_json(const CorpusFunnel& f) {
    json stages = json::array();
    for (const auto& [stage, n] : f.counts) stages.push_back({{"stage", stage}, {"count", n}});
    return {{"stages", stages}};
}

inline json to_json(const StatusShare& s) {
    return {{"none", s.none}, {"some", s.some}, {"throughout", s.throughout}, {"not_applicable", s.not_applicable}};
}

inline json to_json(const SegmentReport& s) {
    json complexity = json::array();
    for (const auto& c : s.complexity) {
        complexity.push_back({{"class", to_string(c.cls)}, {"count", c.count}, {"proportion", fixed(c.proportion)}});
    }
    return {{"schema_count", s.schema_count},
            {"characteristics", to_json(s.characteristics)},
            {"conventions", to_json(s.conventions)},
            {"complexity", complexity},
            {"pagination", {{"slicing", to_json(s.slicing)}, {"connections", to_json(s.connections)}}}};
}

inline json to_json(const CorpusReport& r) {
    return {{"large_threshold", r.large_threshold},
            {"all", to_json(r.all)},
            {"large", r.large ? to_json(*r.large) : json(nullptr)}};
}

}  // namespace gqla::json_io
