#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gqla/complexity.hpp"
#include "gqla/errors.hpp"
#include "gqla/lint.hpp"
#include "gqla/metrics.hpp"
#include "gqla/pagination.hpp"
#include "gqla/parallel.hpp"

namespace gqla {

struct ClassShare {
    ComplexityClass cls = ComplexityClass::LinearInN;
    std::size_t count = 0;
    double proportion = 0.0;
};

struct StatusShare {
    std::size_t none = 0;
    std::size_t some = 0;
    std::size_t throughout = 0;
    std::size_t not_applicable = 0;

    void add(PatternStatus s) {
        switch (s) {
            case PatternStatus::None: ++none; break;
            case PatternStatus::Some: ++some; break;
            case PatternStatus::Throughout: ++throughout; break;
            case PatternStatus::NotApplicable: ++not_applicable; break;
        }
    }
};

struct SegmentReport {
    std::size_t schema_count = 0;
    CorpusStats characteristics;                     // characteristics and feature use
    std::array<ConventionShare, 7> conventions{};   // naming conventions
    std::array<ClassShare, 5> complexity{};         // worst-case response size, cheapest first
    StatusShare slicing;                            // slicing arguments on object-list fields
    StatusShare connections;                        // slicing on connection-returning fields
};

struct SchemaAnalysis {
    SchemaStats stats;
    LintReport lint;
    ComplexityReport complexity;
    PaginationReport pagination;
};

struct CorpusReport {
    std::size_t large_threshold = kLargeSchemaThreshold;
    SegmentReport all;
    std::optional<SegmentReport> large;  // absent when no schema is large
    std::vector<SchemaAnalysis> schemas;  // input order
};

struct ReportOptions {
    std::size_t large_threshold = kLargeSchemaThreshold;
    MetricsOptions metrics;
    LintOptions lint;
    TypeGraphOptions type_graph;
    PaginationOptions pagination;
    std::size_t threads = 0;
};

inline SchemaAnalysis analyze_schema(const SchemaDocument& doc, const ReportOptions& opts = {}) {
    return {characteristics(doc, opts.metrics), lint(doc, opts.lint), classify(doc, opts.type_graph),
            detect_pagination(doc, opts.pagination)};
}

inline SegmentReport summarize_segment(std::span<const SchemaAnalysis* const> members) {
    if (members.empty()) throw EmptyCorpus();
    SegmentReport seg;
    seg.schema_count = members.size();
    std::vector<SchemaStats> stats;
    std::vector<LintReport> lints;
    for (const auto* a : members) {
        stats.push_back(a->stats);
        lints.push_back(a->lint);
    }
    seg.characteristics = corpus_aggregate(stats);
    seg.conventions = corpus_convention_summary(lints);
    for (std::size_t c = 0; c < seg.complexity.size(); ++c) seg.complexity[c].cls = static_cast<ComplexityClass>(c);
    for (const auto* a : members) {
        ++seg.complexity[static_cast<std::size_t>(a->complexity.cls)].count;
        seg.slicing.add(a->pagination.slicing_status);
        seg.connections.add(a->pagination.connections_status);
    }
    for (auto& share : seg.complexity) {
        share.proportion = static_cast<double>(share.count) / static_cast<double>(seg.schema_count);
    }
    return seg;
}

// Runs every analysis over the corpus and aggregates it for the whole
// corpus and for the large-schema segment.
inline CorpusReport corpus_report(std::span<const SchemaDocument> docs, const ReportOptions& opts = {}) {
    if (docs.empty()) throw EmptyCorpus();
    CorpusReport report;
    report.large_threshold = opts.large_threshold;
    report.schemas.resize(docs.size());
    parallel_for(docs.size(), [&](std::size_t i) { report.schemas[i] = analyze_schema(docs[i], opts); }, opts.threads);
    std::vector<const SchemaAnalysis*> all, large;
    for (const auto& a : report.schemas) {
        all.push_back(&a);
        if (is_large(a.stats, opts.large_threshold)) large.push_back(&a);
    }
    report.all = summarize_segment(all);
    if (!large.empty()) report.large = summarize_segment(large);
    return report;
}

}  // namespace gqla
