#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/errors.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

enum class LintRule : std::uint8_t {
    CamelCaseFieldNames,
    PascalCaseTypeNames,
    PascalCaseEnumNames,
    AllCapsEnumValues,
    InputPostfix,
    MutationFieldNames,
    SnakeCaseFieldNames,
};

inline constexpr std::array<LintRule, 7> kLintRules = {
    LintRule::CamelCaseFieldNames, LintRule::PascalCaseTypeNames, LintRule::PascalCaseEnumNames,
    LintRule::AllCapsEnumValues,   LintRule::InputPostfix,        LintRule::MutationFieldNames,
    LintRule::SnakeCaseFieldNames,
};

inline std::string_view rule_id(LintRule r) {
    static constexpr std::array<std::string_view, 7> ids = {"R1", "R2", "R3", "R4", "R5", "R6", "R7"};
    return ids[static_cast<std::size_t>(r)];
}

inline std::string_view rule_name(LintRule r) {
    static constexpr std::array<std::string_view, 7> names = {
        "camelCase field names", "PascalCase type names", "PascalCase enum names", "ALL_CAPS enum values",
        "Input postfix",         "Mutation field names",  "snake_case field names"};
    return names[static_cast<std::size_t>(r)];
}

enum class ConventionStatus : std::uint8_t { Consistent, Partial, None, NotApplicable };

inline std::string_view to_string(ConventionStatus s) {
    switch (s) {
        case ConventionStatus::Consistent: return "consistent";
        case ConventionStatus::Partial: return "partial";
        case ConventionStatus::None: return "none";
        case ConventionStatus::NotApplicable: return "not_applicable";
    }
    return "not_applicable";
}

struct RuleResult {
    LintRule rule = LintRule::CamelCaseFieldNames;
    std::size_t applicable = 0;
    std::size_t violations = 0;
    std::vector<std::string> offenders;  // capped, see LintOptions

    ConventionStatus status() const {
        if (applicable == 0) return ConventionStatus::NotApplicable;
        if (violations == 0) return ConventionStatus::Consistent;
        if (violations == applicable) return ConventionStatus::None;
        return ConventionStatus::Partial;
    }
};

struct LintReport {
    std::array<RuleResult, 7> rules;

    const RuleResult& operator[](LintRule r) const { return rules[static_cast<std::size_t>(r)]; }
    RuleResult& operator[](LintRule r) { return rules[static_cast<std::size_t>(r)]; }
};

struct LintOptions {
    std::size_t offender_cap = 50;
    // Accept a mutation verb anywhere in the name at a camelCase boundary
    // instead of only as a prefix.
    bool mutation_verb_infix = false;
};

inline constexpr std::array<std::string_view, 5> kMutationVerbs = {"create", "update", "delete", "upsert", "add"};

namespace detail {

inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

inline bool all_caps(std::string_view name) {
    bool letter = false;
    for (char c : name) {
        if (is_upper(c)) {
            letter = true;
        } else if (!(c == '_' || (c >= '0' && c <= '9'))) {
            return false;
        }
    }
    return letter;
}

inline bool verb_boundary(std::string_view name, std::size_t end) {
    return end == name.size() || is_upper(name[end]) || (name[end] >= '0' && name[end] <= '9');
}

inline bool mutation_name(std::string_view name, bool infix) {
    for (auto verb : kMutationVerbs) {
        if (name.substr(0, verb.size()) == verb && verb_boundary(name, verb.size())) return true;
        if (!infix) continue;
        std::string capital(verb);
        capital[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(capital[0])));
        for (std::size_t pos = name.find(capital, 1); pos != std::string_view::npos;
             pos = name.find(capital, pos + 1)) {
            if (verb_boundary(name, pos + verb.size())) return true;
        }
    }
    return false;
}

}  // namespace detail

// Naming-convention checks. Case rules look only at the first character.
inline LintReport lint(const SchemaDocument& doc, LintOptions opts = {}) {
    SchemaIndex index(doc);
    LintReport report;
    for (auto r : kLintRules) report[r].rule = r;

    auto tally = [&](LintRule r, bool ok, const std::string& name) {
        RuleResult& res = report[r];
        ++res.applicable;
        if (!ok) {
            ++res.violations;
            if (res.offenders.size() < opts.offender_cap) res.offenders.push_back(name);
        }
    };

    for (const auto& def : index.document().definitions) {
        if (is_extension(def)) continue;
        DefinitionKind kind = kind_of(def);
        std::string name(name_of(def));
        if (kind == DefinitionKind::Schema || kind == DefinitionKind::Directive) continue;
        bool pascal = !name.empty() && detail::is_upper(name[0]);
        if (kind == DefinitionKind::Enum) {
            tally(LintRule::PascalCaseEnumNames, pascal, name);
            for (const auto& v : std::get<EnumTypeDefinition>(def).values) {
                tally(LintRule::AllCapsEnumValues, detail::all_caps(v.name), name + "." + v.name);
            }
            continue;
        }
        tally(LintRule::PascalCaseTypeNames, pascal, name);
        if (kind == DefinitionKind::InputObject) {
            tally(LintRule::InputPostfix, name.size() >= 5 && name.ends_with("Input"), name);
        }
        if (const auto* fields = index.fields(name); fields && (kind == DefinitionKind::Object ||
                                                                 kind == DefinitionKind::Interface)) {
            for (const auto& f : *fields) {
                std::string qualified = name + "." + f.name;
                tally(LintRule::CamelCaseFieldNames, !f.name.empty() && detail::is_lower(f.name[0]), qualified);
                tally(LintRule::SnakeCaseFieldNames, f.name.find('_') != std::string::npos, qualified);
            }
        }
    }

    if (const auto& mutation = index.roots().mutation) {
        if (const auto* fields = index.fields(*mutation)) {
            for (const auto& f : *fields) {
                tally(LintRule::MutationFieldNames, detail::mutation_name(f.name, opts.mutation_verb_infix),
                      *mutation + "." + f.name);
            }
        }
    }
    return report;
}

struct ConventionShare {
    LintRule rule = LintRule::CamelCaseFieldNames;
    std::size_t applicable_schemas = 0;
    std::size_t consistent_schemas = 0;
    // Absent when the rule applies to no schema.
    std::optional<double> proportion;
};

// Per rule: share of schemas that follow the convention consistently,
// among the schemas where the rule applies at all.
inline std::array<ConventionShare, 7> corpus_convention_summary(std::span<const LintReport> reports) {
    if (reports.empty()) throw EmptyCorpus();
    std::array<ConventionShare, 7> out;
    for (auto r : kLintRules) {
        ConventionShare& share = out[static_cast<std::size_t>(r)];
        share.rule = r;
        for (const auto& rep : reports) {
            ConventionStatus s = rep[r].status();
            if (s == ConventionStatus::NotApplicable) continue;
            ++share.applicable_schemas;
            if (s == ConventionStatus::Consistent) ++share.consistent_schemas;
        }
        if (share.applicable_schemas > 0) {
            share.proportion =
                static_cast<double>(share.consistent_schemas) / static_cast<double>(share.applicable_schemas);
        }
    }
    return out;
}

}  // namespace gqla
