#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/errors.hpp"
#include "gqla/schema_index.hpp"
#include "gqla/validate.hpp"

namespace gqla {

struct CandidateFile {
    std::string path;  // slash-separated, relative to the repository root
    SchemaDocument document;
};

enum class RecoveryStatus : std::uint8_t { AlreadyComplete, Recovered, Unresolvable };

inline std::string_view to_string(RecoveryStatus s) {
    switch (s) {
        case RecoveryStatus::AlreadyComplete: return "already_complete";
        case RecoveryStatus::Recovered: return "recovered";
        case RecoveryStatus::Unresolvable: return "unresolvable";
    }
    return "unresolvable";
}

struct RecoveryOutcome {
    RecoveryStatus status = RecoveryStatus::Unresolvable;
    std::optional<SchemaDocument> merged;
    std::vector<std::string> appended_paths;
    std::set<std::string> unresolved;
};

namespace detail {

inline std::vector<std::string_view> directory_components(std::string_view path) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t slash = path.find('/', start);
        if (slash == std::string_view::npos) break;  // last component is the file name
        if (slash > start) parts.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return parts;
}

// True when `file` has a base (non-extension) definition answering `ref`,
// which is a type name or '@'-prefixed directive name.
inline bool defines(const SchemaDocument& file, const std::string& ref) {
    bool directive = !ref.empty() && ref.front() == '@';
    std::string_view name = directive ? std::string_view(ref).substr(1) : std::string_view(ref);
    return std::any_of(file.definitions.begin(), file.definitions.end(), [&](const Definition& d) {
        if (is_extension(d) || name_of(d) != name) return false;
        DefinitionKind k = kind_of(d);
        return directive ? k == DefinitionKind::Directive : is_type_definition(k);
    });
}

inline std::set<std::string> conflicting_names(const SchemaDocument& doc) {
    std::set<std::string> types, directives, dups;
    for (const auto& d : doc.definitions) {
        if (is_extension(d)) continue;
        DefinitionKind k = kind_of(d);
        if (k == DefinitionKind::Schema) continue;
        std::string name(name_of(d));
        if (k == DefinitionKind::Directive) {
            if (!directives.insert(name).second) dups.insert("@" + name);
        } else if (!types.insert(name).second) {
            dups.insert(name);
        }
    }
    return dups;
}

}  // namespace detail

// Tree distance between the directories containing two files.
inline std::size_t directory_distance(std::string_view p, std::string_view q) {
    auto a = detail::directory_components(p);
    auto b = detail::directory_components(q);
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) {
        ++common;
    }
    return a.size() + b.size() - 2 * common;
}

// Reassembles a schema split over several files by appending pool files
// that define the entry's unresolved references. Among several defining
// files the one closest to the entry's directory wins, then the
// lexicographically smallest path.
inline RecoveryOutcome recover(const CandidateFile& entry, const std::vector<CandidateFile>& pool) {
    if (!has_query_operation(entry.document)) {
        throw PreconditionViolation("recovery entry \"" + entry.path + "\" has no query operation");
    }
    RecoveryOutcome outcome;
    SchemaDocument working = entry.document;
    std::vector<bool> used(pool.size(), false);

    while (true) {
        ValidationResult v = validate(working);
        if (v.status != ValidationStatus::Incomplete) {
            if (v.status == ValidationStatus::Valid || outcome.appended_paths.empty()) {
                outcome.status =
                    outcome.appended_paths.empty() ? RecoveryStatus::AlreadyComplete : RecoveryStatus::Recovered;
                outcome.merged = std::move(working);
                return outcome;
            }
            // Complete but invalid after appending: report the definitions
            // the validator blamed.
            outcome.status = RecoveryStatus::Unresolvable;
            for (const auto& d : v.diagnostics) {
                if (d.severity == Severity::Error && !d.subject.empty()) outcome.unresolved.insert(d.subject);
            }
            if (outcome.unresolved.empty()) outcome.unresolved.insert("<schema>");
            return outcome;
        }

        // Pick a file for every missing reference before appending anything.
        std::set<std::string> no_candidate;
        std::vector<std::size_t> picks;
        for (const auto& ref : v.missing_references) {
            bool satisfied_by_pick = std::any_of(picks.begin(), picks.end(), [&](std::size_t i) {
                return detail::defines(pool[i].document, ref);
            });
            if (satisfied_by_pick) continue;
            std::optional<std::size_t> best;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (used[i] || !detail::defines(pool[i].document, ref)) continue;
                if (!best) {
                    best = i;
                    continue;
                }
                auto da = directory_distance(entry.path, pool[i].path);
                auto db = directory_distance(entry.path, pool[*best].path);
                if (da < db || (da == db && pool[i].path < pool[*best].path)) best = i;
            }
            if (best) {
                picks.push_back(*best);
            } else {
                no_candidate.insert(ref);
            }
        }
        if (!no_candidate.empty()) {
            outcome.status = RecoveryStatus::Unresolvable;
            outcome.unresolved = std::move(no_candidate);
            return outcome;
        }
        if (picks.empty()) {
            outcome.status = RecoveryStatus::Unresolvable;
            outcome.unresolved = std::move(v.missing_references);
            return outcome;
        }
        for (std::size_t i : picks) {
            used[i] = true;
            outcome.appended_paths.push_back(pool[i].path);
            const auto& defs = pool[i].document.definitions;
            working.definitions.insert(working.definitions.end(), defs.begin(), defs.end());
        }
        auto conflicts = detail::conflicting_names(working);
        if (!conflicts.empty()) {
            outcome.status = RecoveryStatus::Unresolvable;
            outcome.unresolved = std::move(conflicts);
            return outcome;
        }
    }
}

}  // namespace gqla
