#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gqla/complexity.hpp"
#include "gqla/funnel.hpp"
#include "gqla/github_search.hpp"
#include "gqla/introspection_client.hpp"
#include "gqla/json_io.hpp"
#include "gqla/lint.hpp"
#include "gqla/metrics.hpp"
#include "gqla/pagination.hpp"
#include "gqla/parallel.hpp"
#include "gqla/parser.hpp"
#include "gqla/printer.hpp"
#include "gqla/recovery.hpp"
#include "gqla/report.hpp"
#include "gqla/search.hpp"
#include "gqla/validate.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace gqla;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write " + p.string());
}

SchemaDocument load_schema(const std::string& path) { return parse(read_file(path), path); }

// Table rendering flattens the JSON document into path/value rows, so both
// formats carry the same data.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        if (j.empty()) rows.emplace_back(prefix, "{}");
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (j.is_array()) {
        bool scalars = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
        if (scalars) {
            std::string joined;
            for (const auto& e : j) joined += (joined.empty() ? "" : ", ") + (e.is_string() ? e.get<std::string>() : e.dump());
            rows.emplace_back(prefix, j.empty() ? "[]" : joined);
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        }
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

void emit(const json& doc, const std::string& format) {
    if (format == "json") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) {
        std::istringstream lines(v);
        std::string line;
        bool first = true;
        while (std::getline(lines, line) || first) {
            std::cout << (first ? k : std::string()) << std::string(width - (first ? k.size() : 0) + 2, ' ') << line << '\n';
            first = false;
        }
    }
}

struct FileResult {
    json body;
    int code = kOk;
};

// Runs fn over every file in parallel; one file gives one object, several
// give an array in input order.
template <typename Fn>
int per_file(const std::vector<std::string>& files, const std::string& format, Fn fn) {
    std::vector<FileResult> results(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        try {
            results[i] = fn(files[i]);
        } catch (const IoError& e) {
            results[i] = {{{"file", files[i]}, {"error", e.what()}}, kUsage};
        } catch (const ParseError& e) {
            results[i] = {{{"file", files[i]}, {"error", e.what()}}, kFinding};
        }
    });
    int code = kOk;
    json out = json::array();
    for (auto& r : results) {
        if (r.body.contains("error")) std::cerr << r.body["file"].get<std::string>() << ": " << r.body["error"].get<std::string>() << '\n';
        code = std::max(code, r.code);
        out.push_back(std::move(r.body));
    }
    emit(files.size() == 1 ? out[0] : out, format);
    return code;
}

json with_file(json j, const std::string& file) {
    j["file"] = file;
    return j;
}

std::map<std::string, std::string> parse_headers(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> headers;
    for (const auto& h : raw) {
        auto colon = h.find(':');
        if (colon == std::string::npos || colon == 0) throw UsageError("--header expects \"Name: value\", got \"" + h + "\"");
        std::string value = h.substr(colon + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        headers[h.substr(0, colon)] = value;
    }
    return headers;
}

std::vector<CandidateFile> recovery_pool(const fs::path& root, const fs::path& entry) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        auto ext = e.path().extension();
        if ((ext == ".graphql" || ext == ".gql") && !fs::equivalent(e.path(), entry)) paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<CandidateFile> pool;
    for (const auto& p : paths) {
        std::string rel = fs::relative(p, root).generic_string();
        try {
            ParsedDocument doc = parse_document(read_file(p));
            if (!doc.executables.empty()) continue;
            pool.push_back({rel, std::move(doc.schema)});
        } catch (const ParseError& e) {
            std::cerr << "skipping " << rel << ": " << e.what() << '\n';
        }
    }
    return pool;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static analysis for GraphQL schemas", "gqla"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    std::vector<std::string> files;
    std::size_t threshold = kLargeSchemaThreshold;
    std::uint64_t n = 0, d = 0;
    bool query_only = false, canonical = false, mutation_infix = false, live = false;
    std::vector<std::string> headers, slicing_names;
    std::string root, out_dir, url;
    std::uint64_t min_size = 0, max_size = 512 * 1024;
    double rpm = 10;

    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

    auto* parse_cmd = app.add_subcommand("parse", "Parse SDL files and list their definitions");
    auto* validate_cmd = app.add_subcommand("validate", "Validate schemas (exit 1 unless all are valid)");
    auto* recover_cmd = app.add_subcommand("recover", "Reassemble a partitioned schema from files under --root");
    auto* stats_cmd = app.add_subcommand("stats", "Schema characteristics and feature use");
    auto* lint_cmd = app.add_subcommand("lint", "Naming convention statuses");
    auto* complexity_cmd = app.add_subcommand("complexity", "Worst-case response size class");
    auto* pagination_cmd = app.add_subcommand("pagination", "Slicing arguments and connections");
    auto* report_cmd = app.add_subcommand("report", "Corpus report over several schemas");
    auto* funnel_cmd = app.add_subcommand("funnel", "Run the corpus funnel over a replay directory or live search");
    auto* introspect_cmd = app.add_subcommand("introspect", "Fetch a schema from a live endpoint");

    for (auto* cmd : {parse_cmd, validate_cmd, stats_cmd, lint_cmd, complexity_cmd, pagination_cmd, report_cmd}) {
        cmd->add_option("files", files, "SDL files")->required()->check(CLI::ExistingFile);
    }
    recover_cmd->add_option("entry", files, "Entry file holding the query operation")->required()->expected(1);
    recover_cmd->add_option("--root", root, "Repository root to draw candidate files from")->required()->check(CLI::ExistingDirectory);
    for (auto* cmd : {stats_cmd, report_cmd, funnel_cmd}) cmd->add_option("--threshold", threshold, "Large-schema cutoff");
    complexity_cmd->add_option("--n", n, "Query size for the response bound");
    complexity_cmd->add_option("--d", d, "Maximum list length for the response bound");
    for (auto* cmd : {complexity_cmd, report_cmd, funnel_cmd}) {
        cmd->add_flag("--query-only", query_only, "Only the query root starts type-graph paths");
    }
    for (auto* cmd : {pagination_cmd, report_cmd, funnel_cmd}) {
        cmd->add_option("--slicing-arg", slicing_names, "Slicing argument names (repeatable)");
    }
    for (auto* cmd : {lint_cmd, report_cmd, funnel_cmd}) {
        cmd->add_flag("--mutation-infix", mutation_infix, "Accept mutation verbs inside field names");
    }
    std::string funnel_dir;
    funnel_cmd->add_option("dir", funnel_dir, "Replay directory")->check(CLI::ExistingDirectory);
    funnel_cmd->add_option("--out", out_dir, "Write funnel.json, dispositions.ndjson and corpus_report.json here");
    funnel_cmd->add_flag("--canonical", canonical, "Deduplicate under canonical AST equivalence");
    funnel_cmd->add_flag("--live", live, "Query live code search (token in GQLA_SEARCH_TOKEN)");
    funnel_cmd->add_option("--min-size", min_size, "Smallest file size for live search");
    funnel_cmd->add_option("--max-size", max_size, "Largest file size for live search");
    funnel_cmd->add_option("--rpm", rpm, "Live search request ceiling per minute");
    introspect_cmd->add_option("url", url, "GraphQL endpoint")->required();
    introspect_cmd->add_option("--header", headers, "Extra request header \"Name: value\" (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n";
        const CLI::App* failing = &app;
        for (const auto* sub : app.get_subcommands()) failing = sub;
        std::cerr << failing->help();
        return kUsage;
    }

    ReportOptions report_opts;
    report_opts.large_threshold = threshold;
    report_opts.type_graph.query_only = query_only;
    report_opts.lint.mutation_verb_infix = mutation_infix;
    if (!slicing_names.empty()) report_opts.pagination.slicing_names = {slicing_names.begin(), slicing_names.end()};

    try {
        if (*parse_cmd) {
            return per_file(files, format, [](const std::string& f) -> FileResult {
                ParsedDocument doc = parse_document(read_file(f));
                json defs = json::array();
                for (const auto& def : doc.schema.definitions) {
                    defs.push_back({{"kind", to_string(kind_of(def))},
                                    {"name", name_of(def)},
                                    {"extension", is_extension(def)},
                                    {"line", location_of(def).line}});
                }
                return {{{"file", f},
                         {"pure", doc.executables.empty()},
                         {"executable_count", doc.executables.size()},
                         {"definitions", defs}}};
            });
        }
        if (*validate_cmd) {
            return per_file(files, format, [](const std::string& f) -> FileResult {
                auto v = validate(load_schema(f));
                return {with_file(json_io::to_json(v), f), v.status == ValidationStatus::Valid ? kOk : kFinding};
            });
        }
        if (*stats_cmd) {
            return per_file(files, format, [&](const std::string& f) -> FileResult {
                return {with_file(json_io::to_json(characteristics(load_schema(f)), threshold), f)};
            });
        }
        if (*lint_cmd) {
            return per_file(files, format, [&](const std::string& f) -> FileResult {
                return {with_file(json_io::to_json(lint(load_schema(f), report_opts.lint)), f)};
            });
        }
        if (*complexity_cmd) {
            if ((n == 0) != (d == 0)) throw UsageError("--n and --d must be given together");
            std::optional<json_io::BoundRequest> bound;
            if (n != 0) bound = json_io::BoundRequest{n, d};
            return per_file(files, format, [&](const std::string& f) -> FileResult {
                return {with_file(json_io::to_json(classify(load_schema(f), report_opts.type_graph), bound), f)};
            });
        }
        if (*pagination_cmd) {
            return per_file(files, format, [&](const std::string& f) -> FileResult {
                return {with_file(json_io::to_json(detect_pagination(load_schema(f), report_opts.pagination)), f)};
            });
        }
        if (*report_cmd) {
            std::vector<std::optional<SchemaDocument>> parsed(files.size());
            std::vector<std::string> errors(files.size());
            parallel_for(files.size(), [&](std::size_t i) {
                try {
                    parsed[i] = load_schema(files[i]);
                } catch (const ParseError& e) {
                    errors[i] = e.what();
                }
            });
            int code = kOk;
            std::vector<SchemaDocument> docs;
            for (std::size_t i = 0; i < files.size(); ++i) {
                if (parsed[i]) {
                    docs.push_back(std::move(*parsed[i]));
                } else {
                    std::cerr << files[i] << ": " << errors[i] << " (skipped)\n";
                    code = kFinding;
                }
            }
            emit(json_io::to_json(corpus_report(docs, report_opts)), format);
            return code;
        }
        if (*recover_cmd) {
            const std::string& entry = files.front();
            fs::path entry_path(entry);
            std::string rel = fs::relative(entry_path, root).generic_string();
            if (rel.empty() || rel.starts_with("..")) rel = entry_path.filename().generic_string();
            CandidateFile entry_file{rel, load_schema(entry)};
            if (!has_query_operation(entry_file.document)) throw UsageError(entry + " has no query operation");
            auto outcome = recover(entry_file, recovery_pool(root, entry_path));
            json j = json_io::to_json(outcome);
            j["entry"] = rel;
            if (outcome.status == RecoveryStatus::Recovered) j["sdl"] = print(*outcome.merged);
            emit(j, format);
            return outcome.status == RecoveryStatus::Unresolvable ? kFinding : kOk;
        }
        if (*funnel_cmd) {
            std::vector<SearchHit> hits;
            if (live) {
                if (!funnel_dir.empty()) throw UsageError("give either a replay directory or --live");
                GitHubSearchOptions gh;
                gh.requests_per_minute = rpm;
                GitHubSearchProvider provider(gh);
                hits = collect_search_results(provider, min_size, max_size, kSearchResultCap,
                                              [](const std::string& w) { std::cerr << "warning: " << w << '\n'; });
            } else {
                if (funnel_dir.empty()) throw UsageError("funnel needs a replay directory or --live");
                hits = ReplaySearchProvider(funnel_dir).all();
            }
            FunnelOptions fopts;
            if (canonical) fopts.dedup_mode = EquivalenceMode::Canonical;
            FunnelResult result = run_funnel(hits, fopts);
            json funnel = json_io::to_json(result.funnel);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_file(fs::path(out_dir) / "funnel.json", funnel.dump(2) + "\n");
                std::string ndjson;
                for (const auto& disp : result.funnel.dispositions) ndjson += json_io::to_json(disp).dump() + "\n";
                write_file(fs::path(out_dir) / "dispositions.ndjson", ndjson);
                json report = nullptr;
                if (!result.schemas.empty()) {
                    std::vector<SchemaDocument> docs;
                    for (const auto& s : result.schemas) docs.push_back(s.document);
                    report = json_io::to_json(corpus_report(docs, report_opts));
                }
                write_file(fs::path(out_dir) / "corpus_report.json", report.dump(2) + "\n");
            }
            emit(funnel, format);
            return kOk;
        }
        if (*introspect_cmd) {
            IntrospectOptions opts;
            opts.headers = parse_headers(headers);
            try {
                SchemaDocument doc = introspect(url, opts);
                emit({{"url", url}, {"sdl", print(doc)}}, format);
                return kOk;
            } catch (const IntrospectionError& e) {
                json j = {{"url", url}, {"error", to_string(e.kind())}, {"message", e.what()}};
                if (e.kind() == IntrospectionError::Kind::Http) j["status"] = e.status();
                std::cerr << e.what() << '\n';
                emit(j, format);
                return e.kind() == IntrospectionError::Kind::Network ? kUsage : kFinding;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n\n" << app.get_subcommands().front()->help();
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kFinding;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
