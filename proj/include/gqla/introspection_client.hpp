#pragma once

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <map>
#include <stdexcept>
#include <string>

#include "gqla/introspection.hpp"
#include "gqla/validate.hpp"

namespace gqla {

class IntrospectionError : public std::runtime_error {
public:
    enum class Kind : std::uint8_t { Network, Http, Disabled, Malformed };

    IntrospectionError(Kind kind, const std::string& message, int status = 0)
        : std::runtime_error(message), kind_(kind), status_(status) {}

    Kind kind() const noexcept { return kind_; }
    int status() const noexcept { return status_; }  // HTTP status for Kind::Http

private:
    Kind kind_;
    int status_;
};

inline std::string_view to_string(IntrospectionError::Kind k) {
    switch (k) {
        case IntrospectionError::Kind::Network: return "network_error";
        case IntrospectionError::Kind::Http: return "http_error";
        case IntrospectionError::Kind::Disabled: return "introspection_disabled";
        case IntrospectionError::Kind::Malformed: return "malformed_response";
    }
    return "network_error";
}

struct Endpoint {
    std::string scheme;  // "http" or "https"
    std::string host;
    int port = 0;
    std::string path;
};

inline Endpoint parse_endpoint(const std::string& url) {
    Endpoint e;
    auto sep = url.find("://");
    if (sep == std::string::npos) throw std::invalid_argument("endpoint URL needs a scheme: " + url);
    e.scheme = url.substr(0, sep);
    if (e.scheme != "http" && e.scheme != "https") throw std::invalid_argument("unsupported URL scheme: " + e.scheme);
    std::string rest = url.substr(sep + 3);
    auto slash = rest.find('/');
    std::string authority = rest.substr(0, slash);
    e.path = slash == std::string::npos ? "/" : rest.substr(slash);
    auto colon = authority.rfind(':');
    if (colon != std::string::npos && authority.find(']') == std::string::npos) {
        e.host = authority.substr(0, colon);
        e.port = std::stoi(authority.substr(colon + 1));
    } else {
        e.host = authority;
        e.port = e.scheme == "https" ? 443 : 80;
    }
    if (e.host.empty()) throw std::invalid_argument("endpoint URL has no host: " + url);
    return e;
}

struct IntrospectOptions {
    std::map<std::string, std::string> headers;
    std::chrono::seconds timeout{30};
};

// POSTs the introspection query and converts the answer to SDL.
inline SchemaDocument introspect(const std::string& url, const IntrospectOptions& opts = {}) {
    using Kind = IntrospectionError::Kind;
    Endpoint ep;
    try {
        ep = parse_endpoint(url);
    } catch (const std::exception& e) {
        throw IntrospectionError(Kind::Network, e.what());
    }

    httplib::Headers headers;
    for (const auto& [k, v] : opts.headers) headers.emplace(k, v);
    headers.emplace("Accept", "application/json");
    std::string body = nlohmann::json{{"query", kIntrospectionQuery}}.dump();

    auto send = [&](auto& client) {
        client.set_connection_timeout(opts.timeout);
        client.set_read_timeout(opts.timeout);
        return client.Post(ep.path, headers, body, "application/json");
    };
    httplib::Result res;
    if (ep.scheme == "https") {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        httplib::SSLClient client(ep.host, ep.port);
        res = send(client);
#else
        throw IntrospectionError(Kind::Network, "https endpoints need a build with OpenSSL support");
#endif
    } else {
        httplib::Client client(ep.host, ep.port);
        res = send(client);
    }
    if (!res) throw IntrospectionError(Kind::Network, "request to " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
        throw IntrospectionError(Kind::Http, "HTTP " + std::to_string(res->status) + " from " + url, res->status);
    }

    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object()) throw IntrospectionError(Kind::Malformed, "response is not a JSON object");
    bool has_schema = reply.contains("data") && reply["data"].is_object() && reply["data"].contains("__schema") &&
                      !reply["data"]["__schema"].is_null();
    if (!has_schema) {
        if (reply.contains("errors") && reply["errors"].is_array() && !reply["errors"].empty()) {
            std::string first = reply["errors"][0].is_object() && reply["errors"][0].contains("message")
                                    ? reply["errors"][0]["message"].dump()
                                    : reply["errors"][0].dump();
            throw IntrospectionError(Kind::Disabled, "introspection refused: " + first);
        }
        throw IntrospectionError(Kind::Malformed, "response has no data.__schema");
    }

    SchemaDocument doc;
    try {
        doc = schema_from_introspection(reply);
    } catch (const std::exception& e) {
        throw IntrospectionError(Kind::Malformed, e.what());
    }
    doc.source_name = url;
    ValidationResult v = validate(doc);
    if (v.status != ValidationStatus::Valid) {
        std::string why = v.diagnostics.empty() ? std::string(to_string(v.status)) : v.diagnostics.front().message;
        throw IntrospectionError(Kind::Malformed, "introspected schema does not validate: " + why);
    }
    return doc;
}

}  // namespace gqla
