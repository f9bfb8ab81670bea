#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/equivalence.hpp"
#include "gqla/parallel.hpp"
#include "gqla/parser.hpp"
#include "gqla/recovery.hpp"
#include "gqla/search.hpp"
#include "gqla/validate.hpp"

namespace gqla {

inline constexpr std::array<std::string_view, 7> kFunnelStages = {
    "search_result_files", "unique_files",   "sdl_files",           "pure_schemas",
    "complete_or_recovered", "valid_schemas", "valid_unique_schemas",
};

struct Disposition {
    std::string url;
    std::string repository;
    std::string path;
    bool survived = false;
    // Stage the file failed to enter, or the last stage for survivors.
    std::string stage;
    std::string reason;
};

struct SurvivingSchema {
    std::string url;
    std::string repository;
    std::string path;
    SchemaDocument document;
    bool recovered = false;
    std::vector<std::string> appended_paths;
};

struct CorpusFunnel {
    std::vector<std::pair<std::string, std::size_t>> counts;  // in stage order
    std::vector<Disposition> dispositions;                    // one per input file, input order

    std::size_t count(std::string_view stage) const {
        for (const auto& [name, n] : counts) {
            if (name == stage) return n;
        }
        return 0;
    }
};

struct FunnelResult {
    CorpusFunnel funnel;
    std::vector<SurvivingSchema> schemas;  // ordered by URL
};

struct FunnelOptions {
    EquivalenceMode dedup_mode = EquivalenceMode::Ordered;
    std::size_t threads = 0;  // 0: hardware concurrency
};

namespace detail {

// Multiset of (kind, name) pairs; equivalent documents always share it.
inline std::vector<std::pair<int, std::string>> dedup_key(const SchemaDocument& doc) {
    std::vector<std::pair<int, std::string>> key;
    for (const auto& d : doc.definitions) key.emplace_back(static_cast<int>(d.index()) * 2 + is_extension(d), name_of(d));
    std::sort(key.begin(), key.end());
    return key;
}

inline std::string join(const std::set<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

}  // namespace detail

inline FunnelResult run_funnel(const std::vector<SearchHit>& files, const FunnelOptions& opts = {}) {
    FunnelResult result;
    auto& disp = result.funnel.dispositions;
    disp.resize(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) disp[i] = {files[i].url, files[i].repository, files[i].path, false, "", ""};
    auto drop = [&](std::size_t i, std::string_view stage, std::string reason) {
        disp[i].stage = stage;
        disp[i].reason = std::move(reason);
    };
    std::vector<std::size_t> counts(kFunnelStages.size(), 0);
    counts[0] = files.size();

    // unique_files
    std::vector<std::size_t> live;
    std::map<std::string, std::size_t> first_by_url;
    for (std::size_t i = 0; i < files.size(); ++i) {
        auto [it, fresh] = first_by_url.emplace(files[i].url, i);
        if (fresh) {
            live.push_back(i);
        } else {
            drop(i, kFunnelStages[1], "duplicate URL");
        }
    }
    counts[1] = live.size();

    // sdl_files, pure_schemas
    std::vector<std::optional<ParsedDocument>> parsed(files.size());
    std::vector<std::string> parse_errors(files.size());
    parallel_for(
        live.size(),
        [&](std::size_t k) {
            std::size_t i = live[k];
            try {
                parsed[i] = parse_document(files[i].content);
            } catch (const ParseError& e) {
                parse_errors[i] = e.what();
            }
        },
        opts.threads);
    std::vector<std::size_t> sdl;
    for (std::size_t i : live) {
        if (parsed[i]) {
            sdl.push_back(i);
        } else {
            drop(i, kFunnelStages[2], parse_errors[i]);
        }
    }
    counts[2] = sdl.size();
    std::vector<std::size_t> pure;
    for (std::size_t i : sdl) {
        if (parsed[i]->executables.empty()) {
            pure.push_back(i);
        } else {
            drop(i, kFunnelStages[3], "contains executable definitions");
        }
    }
    counts[3] = pure.size();

    // complete_or_recovered: incomplete schemas with a query operation are
    // recovered from files of the same repository.
    std::vector<std::optional<SchemaDocument>> docs(files.size());
    std::vector<std::optional<RecoveryOutcome>> outcomes(files.size());
    std::map<std::string, std::vector<std::size_t>> by_repo;
    for (std::size_t i : pure) {
        parsed[i]->schema.source_name = files[i].path;
        by_repo[files[i].repository].push_back(i);
    }
    std::vector<const std::vector<std::size_t>*> repos;
    for (const auto& [repo, members] : by_repo) repos.push_back(&members);
    std::vector<std::optional<ValidationResult>> checks(files.size());
    parallel_for(
        repos.size(),
        [&](std::size_t r) {
            const auto& members = *repos[r];
            for (std::size_t i : members) checks[i] = validate(parsed[i]->schema);
            for (std::size_t i : members) {
                if (checks[i]->missing_references.empty()) continue;
                if (!has_query_operation(parsed[i]->schema)) continue;
                std::vector<CandidateFile> pool;
                for (std::size_t j : members) {
                    if (j != i) pool.push_back({files[j].path, parsed[j]->schema});
                }
                outcomes[i] = recover({files[i].path, parsed[i]->schema}, pool);
            }
        },
        opts.threads);
    std::vector<std::size_t> complete;
    for (std::size_t i : pure) {
        const auto& check = *checks[i];
        if (check.missing_references.empty()) {
            docs[i] = parsed[i]->schema;
            complete.push_back(i);
        } else if (!outcomes[i]) {
            drop(i, kFunnelStages[4], "incomplete without a query operation: " + detail::join(check.missing_references));
        } else if (outcomes[i]->status == RecoveryStatus::Recovered) {
            docs[i] = *outcomes[i]->merged;
            docs[i]->source_name = files[i].path;
            complete.push_back(i);
        } else {
            drop(i, kFunnelStages[4], "incomplete, recovery failed on: " + detail::join(outcomes[i]->unresolved));
        }
    }
    counts[4] = complete.size();

    // valid_schemas
    std::vector<std::size_t> valid;
    for (std::size_t i : complete) {
        ValidationResult v = outcomes[i] ? validate(*docs[i]) : *checks[i];
        if (v.status == ValidationStatus::Valid) {
            valid.push_back(i);
            continue;
        }
        std::string why(to_string(v.status));
        for (const auto& d : v.diagnostics) {
            if (d.severity == Severity::Error) {
                why += ": " + d.message;
                break;
            }
        }
        drop(i, kFunnelStages[5], why);
    }
    counts[5] = valid.size();

    // valid_unique_schemas: first by URL wins.
    std::sort(valid.begin(), valid.end(), [&](std::size_t a, std::size_t b) { return files[a].url < files[b].url; });
    std::map<std::vector<std::pair<int, std::string>>, std::vector<std::size_t>> buckets;
    for (std::size_t i : valid) {
        auto& bucket = buckets[detail::dedup_key(*docs[i])];
        auto same = std::find_if(bucket.begin(), bucket.end(), [&](std::size_t j) {
            return ast_equivalent(*docs[i], *docs[j], opts.dedup_mode);
        });
        if (same != bucket.end()) {
            drop(i, kFunnelStages[6], "AST-equivalent to " + files[*same].url);
            continue;
        }
        bucket.push_back(i);
        disp[i].survived = true;
        disp[i].stage = kFunnelStages[6];
        SurvivingSchema s{files[i].url, files[i].repository, files[i].path, *docs[i], false, {}};
        if (outcomes[i]) {
            s.recovered = true;
            s.appended_paths = outcomes[i]->appended_paths;
            disp[i].reason = "recovered";
        }
        result.schemas.push_back(std::move(s));
    }
    counts[6] = result.schemas.size();

    for (std::size_t s = 0; s < kFunnelStages.size(); ++s) result.funnel.counts.emplace_back(kFunnelStages[s], counts[s]);
    return result;
}

}  // namespace gqla
