#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gqla {

struct SearchHit {
    std::string url;
    std::string path;        // path inside the repository, slash-separated
    std::string repository;  // "owner/name"
    std::string content;
};

struct SizeRange {
    std::uint64_t min = 0;
    std::uint64_t max = 0;  // inclusive
};

class SearchProvider {
public:
    virtual ~SearchProvider() = default;
    // Files matching `query` whose size in bytes lies within `range`.
    virtual std::vector<SearchHit> search(const std::string& query, SizeRange range) = 0;
    // Number of results the provider reports for `query` within `range`.
    virtual std::uint64_t count(const std::string& query, SizeRange range) = 0;
};

inline constexpr std::string_view kSchemaSearchTerms = "type extension:graphql extension:gql";
inline constexpr std::uint64_t kSearchResultCap = 1000;

inline std::string size_range_query(SizeRange r, std::string_view terms = kSchemaSearchTerms) {
    return std::string(terms) + " size:" + std::to_string(r.min) + ".." + std::to_string(r.max) + " fork:false";
}

struct SizeRangeQuery {
    SizeRange range;
    std::uint64_t observed = 0;
    std::string query;
    // The range is a single byte size and still over the cap; results
    // beyond the cap are lost.
    bool exhausted = false;
};

// Bisects [min, max] into [a, mid] and [mid+1, b] until each range's
// observed result count is within `cap`.
inline std::vector<SizeRangeQuery> partition_search_queries(
    std::uint64_t min, std::uint64_t max, std::uint64_t cap,
    const std::function<std::uint64_t(SizeRange)>& observed,
    const std::function<void(const std::string&)>& warn = {}) {
    if (min > max) throw std::invalid_argument("partition_search_queries: min exceeds max");
    std::vector<SizeRangeQuery> out;
    std::vector<SizeRange> todo{{min, max}};
    while (!todo.empty()) {
        SizeRange r = todo.back();
        todo.pop_back();
        std::uint64_t n = observed(r);
        if (n <= cap || r.min == r.max) {
            SizeRangeQuery q{r, n, size_range_query(r), n > cap};
            if (q.exhausted && warn) {
                warn("size range " + std::to_string(r.min) + ".." + std::to_string(r.max) + " has " +
                     std::to_string(n) + " results, over the cap of " + std::to_string(cap) + "; keeping it");
            }
            out.push_back(std::move(q));
            continue;
        }
        std::uint64_t mid = r.min + (r.max - r.min) / 2;
        // Pushed in reverse so ranges come out in ascending order.
        todo.push_back({mid + 1, r.max});
        todo.push_back({r.min, mid});
    }
    return out;
}

// Histogram form: `observed_counts` maps a file size to the number of
// results of exactly that size.
inline std::vector<SizeRangeQuery> partition_search_queries(
    std::uint64_t min, std::uint64_t max, std::uint64_t cap, const std::map<std::uint64_t, std::uint64_t>& observed_counts,
    const std::function<void(const std::string&)>& warn = {}) {
    auto count = [&](SizeRange r) {
        std::uint64_t n = 0;
        for (auto it = observed_counts.lower_bound(r.min); it != observed_counts.end() && it->first <= r.max; ++it) {
            n += it->second;
        }
        return n;
    };
    return partition_search_queries(min, max, cap, count, warn);
}

// Runs every partition query and concatenates the hits. Hits repeated
// across ranges are kept; the funnel removes them by URL.
inline std::vector<SearchHit> collect_search_results(SearchProvider& provider, std::uint64_t min, std::uint64_t max,
                                                     std::uint64_t cap = kSearchResultCap,
                                                     const std::function<void(const std::string&)>& warn = {}) {
    auto count = [&](SizeRange r) { return provider.count(size_range_query(r), r); };
    std::vector<SearchHit> hits;
    for (const auto& q : partition_search_queries(min, max, cap, count, warn)) {
        auto part = provider.search(q.query, q.range);
        hits.insert(hits.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return hits;
}

// Replays a local fixture. The directory holds either a search_log.ndjson
// file (one JSON object per line with url, path, repository and content;
// repeated URLs allowed) or a tree laid out as <owner>/<repo>/<path>.
class ReplaySearchProvider : public SearchProvider {
public:
    explicit ReplaySearchProvider(const std::filesystem::path& root) : hits_(load(root)) {}

    std::vector<SearchHit> search(const std::string&, SizeRange range) override {
        std::vector<SearchHit> out;
        for (const auto& h : hits_) {
            if (h.content.size() >= range.min && h.content.size() <= range.max) out.push_back(h);
        }
        return out;
    }

    std::uint64_t count(const std::string& query, SizeRange range) override { return search(query, range).size(); }

    const std::vector<SearchHit>& all() const { return hits_; }

    static std::string blob_url(const std::string& repository, const std::string& path) {
        return "https://github.com/" + repository + "/blob/master/" + path;
    }

private:
    static std::string slurp(const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<SearchHit> load(const std::filesystem::path& root) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(root)) throw std::runtime_error("replay fixture is not a directory: " + root.string());
        std::vector<SearchHit> hits;
        fs::path log = root / "search_log.ndjson";
        if (fs::exists(log)) {
            std::istringstream lines(slurp(log));
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(lines, line)) {
                ++lineno;
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                auto j = nlohmann::json::parse(line, nullptr, false);
                if (j.is_discarded() || !j.is_object()) {
                    throw std::runtime_error(log.string() + ":" + std::to_string(lineno) + ": not a JSON object");
                }
                SearchHit h;
                h.repository = j.value("repository", "");
                h.path = j.value("path", "");
                h.url = j.value("url", blob_url(h.repository, h.path));
                if (j.contains("content")) {
                    h.content = j.at("content").get<std::string>();
                } else if (j.contains("file")) {
                    h.content = slurp(root / j.at("file").get<std::string>());
                }
                hits.push_back(std::move(h));
            }
            return hits;
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(root)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension();
            if (ext == ".graphql" || ext == ".gql") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::string rel = fs::relative(f, root).generic_string();
            // owner/repo/rest...
            auto first = rel.find('/');
            auto second = first == std::string::npos ? std::string::npos : rel.find('/', first + 1);
            if (second == std::string::npos) continue;
            SearchHit h;
            h.repository = rel.substr(0, second);
            h.path = rel.substr(second + 1);
            h.url = blob_url(h.repository, h.path);
            h.content = slurp(f);
            hits.push_back(std::move(h));
        }
        return hits;
    }

    std::vector<SearchHit> hits_;
};

}  // namespace gqla
