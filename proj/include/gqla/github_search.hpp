#pragma once

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gqla/search.hpp"

namespace gqla {

struct HttpRequest {
    std::string host;
    std::string path;
    std::multimap<std::string, std::string> params;
    std::map<std::string, std::string> headers;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

using HttpTransport = std::function<HttpResponse(const HttpRequest&)>;

class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// HTTPS GET via cpp-httplib. Needs a build with OpenSSL support.
inline HttpResponse https_get(const HttpRequest& req) {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    httplib::SSLClient client(req.host, 443);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(std::chrono::seconds(60));
    httplib::Params params(req.params.begin(), req.params.end());
    httplib::Headers headers(req.headers.begin(), req.headers.end());
    auto res = client.Get(req.path, params, headers);
    if (!res) throw SearchError("GET https://" + req.host + req.path + " failed: " + httplib::to_string(res.error()));
    return {res->status, res->body};
#else
    (void)req;
    throw SearchError("live code search needs a build with OpenSSL support");
#endif
}

struct GitHubSearchOptions {
    std::string token;  // empty: read GQLA_SEARCH_TOKEN
    double requests_per_minute = 10;
    std::size_t per_page = 100;
    std::uint64_t result_cap = kSearchResultCap;
    HttpTransport transport = https_get;
    std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };
    std::function<std::chrono::steady_clock::time_point()> now = [] { return std::chrono::steady_clock::now(); };
};

// Code search against the GitHub REST API. File contents are fetched raw
// through each hit's contents URL. All requests share one rate ceiling.
class GitHubSearchProvider : public SearchProvider {
public:
    explicit GitHubSearchProvider(GitHubSearchOptions opts = {}) : opts_(std::move(opts)) {
        if (opts_.token.empty()) {
            if (const char* env = std::getenv("GQLA_SEARCH_TOKEN")) opts_.token = env;
        }
        if (opts_.token.empty()) throw SearchError("GQLA_SEARCH_TOKEN is not set");
        if (opts_.requests_per_minute <= 0) throw std::invalid_argument("requests_per_minute must be positive");
    }

    std::uint64_t count(const std::string& query, SizeRange) override {
        auto j = get_json("api.github.com", "/search/code", {{"q", query}, {"per_page", "1"}});
        return j.value("total_count", std::uint64_t{0});
    }

    std::vector<SearchHit> search(const std::string& query, SizeRange) override {
        std::vector<SearchHit> hits;
        for (std::size_t page = 1; hits.size() < opts_.result_cap; ++page) {
            auto j = get_json("api.github.com", "/search/code",
                              {{"q", query}, {"per_page", std::to_string(opts_.per_page)}, {"page", std::to_string(page)}});
            const auto& items = j.at("items");
            for (const auto& item : items) {
                SearchHit h;
                h.url = item.value("html_url", "");
                h.path = item.value("path", "");
                h.repository = item.contains("repository") ? item["repository"].value("full_name", "") : "";
                h.content = fetch_raw(item.value("url", ""));
                hits.push_back(std::move(h));
            }
            if (items.size() < opts_.per_page) break;
        }
        return hits;
    }

private:
    void throttle() {
        auto gap = std::chrono::milliseconds(static_cast<long long>(60000.0 / opts_.requests_per_minute));
        auto now = opts_.now();
        if (last_ && now - *last_ < gap) {
            opts_.sleep(std::chrono::duration_cast<std::chrono::milliseconds>(gap - (now - *last_)));
        }
        last_ = opts_.now();
    }

    HttpResponse get(const std::string& host, const std::string& path, std::multimap<std::string, std::string> params,
                     const std::string& accept) {
        throttle();
        HttpRequest req{host, path, std::move(params),
                        {{"Authorization", "token " + opts_.token}, {"Accept", accept}, {"User-Agent", "gqla"}}};
        HttpResponse res = opts_.transport(req);
        if (res.status == 403 || res.status == 429) {
            throw SearchError("rate limited by " + host + " (HTTP " + std::to_string(res.status) + ")");
        }
        if (res.status < 200 || res.status >= 300) {
            throw SearchError("GET " + host + path + " returned HTTP " + std::to_string(res.status));
        }
        return res;
    }

    nlohmann::json get_json(const std::string& host, const std::string& path,
                            std::multimap<std::string, std::string> params) {
        auto res = get(host, path, std::move(params), "application/vnd.github+json");
        auto j = nlohmann::json::parse(res.body, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw SearchError("malformed search response from " + host);
        return j;
    }

    std::string fetch_raw(const std::string& api_url) {
        const std::string prefix = "https://";
        if (!api_url.starts_with(prefix)) throw SearchError("unexpected contents URL: " + api_url);
        std::string rest = api_url.substr(prefix.size());
        auto slash = rest.find('/');
        std::string host = rest.substr(0, slash);
        std::string target = slash == std::string::npos ? "/" : rest.substr(slash);
        std::multimap<std::string, std::string> params;
        if (auto q = target.find('?'); q != std::string::npos) {
            std::string query = target.substr(q + 1);
            target.resize(q);
            httplib::Params parsed;
            httplib::detail::parse_query_text(query, parsed);
            params.insert(parsed.begin(), parsed.end());
        }
        return get(host, target, std::move(params), "application/vnd.github.raw").body;
    }

    GitHubSearchOptions opts_;
    std::optional<std::chrono::steady_clock::time_point> last_;
};

}  // namespace gqla
