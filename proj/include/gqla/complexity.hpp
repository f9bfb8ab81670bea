#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/errors.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

struct TypeEdge {
    std::string from;
    std::string to;
    std::string via;  // field name, or empty for an interface/union expansion
    std::size_t weight = 0;

    bool is_expansion() const { return via.empty(); }
    // "Type.field" for field edges, "Type...on Member" for expansions.
    std::string step() const { return via.empty() ? from + "...on " + to : from + "." + via; }

    friend bool operator==(const TypeEdge&, const TypeEdge&) = default;
};

struct TypeGraph {
    std::set<std::string> nodes;
    std::vector<TypeEdge> edges;
    std::set<std::string> roots;
};

struct TypeGraphOptions {
    // Restrict reachability to the query root.
    bool query_only = false;
};

inline TypeGraph build_type_graph(const SchemaDocument& doc, TypeGraphOptions opts = {}) {
    SchemaIndex index(doc);
    TypeGraph g;
    const RootTypes& r = index.roots();
    for (const auto& root : {r.query, r.mutation, r.subscription}) {
        if (!root || !index.is_composite_output(*root)) continue;
        if (opts.query_only && root != r.query) continue;
        g.roots.insert(*root);
    }

    auto out_edges = [&](const std::string& type) {
        std::vector<TypeEdge> out;
        if (const auto* fields = index.fields(type)) {
            for (const auto& f : *fields) {
                if (!index.is_composite_output(f.type.name)) continue;
                out.push_back({type, f.type.name, f.name, f.type.list_depth()});
            }
        }
        auto k = index.kind(type);
        if (k == DefinitionKind::Interface) {
            for (auto& impl : index.implementers(type)) out.push_back({type, impl, "", 0});
        } else if (k == DefinitionKind::Union) {
            for (const auto& m : std::get<UnionTypeDefinition>(*index.type(type)).members) {
                if (index.is_composite_output(m)) out.push_back({type, m, "", 0});
            }
        }
        return out;
    };

    std::deque<std::string> queue(g.roots.begin(), g.roots.end());
    g.nodes = g.roots;
    while (!queue.empty()) {
        std::string type = std::move(queue.front());
        queue.pop_front();
        for (auto& e : out_edges(type)) {
            if (g.nodes.insert(e.to).second) queue.push_back(e.to);
            g.edges.push_back(std::move(e));
        }
    }
    return g;
}

// Ordered from cheapest to most expensive.
enum class ComplexityClass : std::uint8_t { LinearInN, LinearInND, Quadratic, Polynomial, Exponential };

inline std::string_view to_string(ComplexityClass c) {
    switch (c) {
        case ComplexityClass::LinearInN: return "linear-n";
        case ComplexityClass::LinearInND: return "linear-nd";
        case ComplexityClass::Quadratic: return "quadratic";
        case ComplexityClass::Polynomial: return "polynomial";
        case ComplexityClass::Exponential: return "exponential";
    }
    return "exponential";
}

inline ComplexityClass class_for_nesting(std::size_t k) {
    if (k == 0) return ComplexityClass::LinearInN;
    if (k == 1) return ComplexityClass::LinearInND;
    if (k == 2) return ComplexityClass::Quadratic;
    return ComplexityClass::Polynomial;
}

struct ComplexityReport {
    ComplexityClass cls = ComplexityClass::LinearInN;
    std::optional<std::size_t> k;  // absent for exponential schemas
    // Exponential: a cycle through a list edge. Otherwise a root path
    // carrying k list levels.
    std::vector<TypeEdge> witness;

    std::vector<std::string> witness_steps() const {
        std::vector<std::string> out;
        for (const auto& e : witness) out.push_back(e.step());
        return out;
    }
};

namespace detail {

struct Tarjan {
    const std::vector<std::vector<std::size_t>>& adj;  // node -> edge targets
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<std::size_t> stack;
    int counter = 0;
    int components = 0;

    explicit Tarjan(const std::vector<std::vector<std::size_t>>& a)
        : adj(a), index(a.size(), -1), low(a.size(), 0), comp(a.size(), -1), on_stack(a.size(), false) {
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (index[v] < 0) visit(v);
        }
    }

    // Iterative to stay safe on long type chains.
    void visit(std::size_t start) {
        std::vector<std::pair<std::size_t, std::size_t>> frames{{start, 0}};
        open(start);
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < adj[v].size()) {
                std::size_t w = adj[v][next++];
                if (index[w] < 0) {
                    open(w);
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = components;
                } while (w != v);
                ++components;
            }
            std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        }
    }

    void open(std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
    }
};

}  // namespace detail

inline ComplexityReport classify(const TypeGraph& g) {
    std::vector<std::string> names(g.nodes.begin(), g.nodes.end());
    std::map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = i;
    std::vector<std::vector<std::size_t>> adj(names.size());
    std::vector<std::vector<std::size_t>> out(names.size());  // node -> edge indices
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto f = id.find(g.edges[e].from);
        auto t = id.find(g.edges[e].to);
        if (f == id.end() || t == id.end()) continue;
        adj[f->second].push_back(t->second);
        out[f->second].push_back(e);
    }
    detail::Tarjan scc(adj);
    auto comp_of = [&](const std::string& n) { return scc.comp[id.at(n)]; };

    // Shortest edge path between two nodes of one component.
    auto path_within = [&](std::size_t from, std::size_t to) {
        std::vector<std::optional<std::size_t>> via(names.size());
        std::vector<bool> seen(names.size(), false);
        std::deque<std::size_t> queue{from};
        seen[from] = true;
        while (!queue.empty() && !seen[to]) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t e : out[v]) {
                std::size_t w = id.at(g.edges[e].to);
                if (seen[w] || scc.comp[w] != scc.comp[from]) continue;
                seen[w] = true;
                via[w] = e;
                queue.push_back(w);
            }
        }
        std::vector<TypeEdge> path;
        for (std::size_t v = to; v != from;) {
            const TypeEdge& e = g.edges[*via[v]];
            path.push_back(e);
            v = id.at(e.from);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    ComplexityReport report;
    for (const auto& e : g.edges) {
        if (e.weight == 0 || comp_of(e.from) != comp_of(e.to)) continue;
        report.cls = ComplexityClass::Exponential;
        report.witness.push_back(e);
        auto back = path_within(id.at(e.to), id.at(e.from));
        report.witness.insert(report.witness.end(), back.begin(), back.end());
        return report;
    }

    // Tarjan numbers components in reverse topological order, so walking
    // from the highest number down visits every predecessor first.
    const int n_comp = scc.components;
    std::vector<std::optional<std::size_t>> dist(static_cast<std::size_t>(n_comp));
    std::vector<std::optional<std::size_t>> entry_edge(static_cast<std::size_t>(n_comp));
    std::vector<std::size_t> entry_node(static_cast<std::size_t>(n_comp), 0);
    for (const auto& r : g.roots) {
        auto c = static_cast<std::size_t>(comp_of(r));
        if (!dist[c]) {
            dist[c] = 0;
            entry_node[c] = id.at(r);
        }
    }
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(n_comp));
    for (std::size_t v = 0; v < names.size(); ++v) members[static_cast<std::size_t>(scc.comp[v])].push_back(v);
    for (int c = n_comp - 1; c >= 0; --c) {
        auto cu = static_cast<std::size_t>(c);
        if (!dist[cu]) continue;
        for (std::size_t v : members[cu]) {
            for (std::size_t e : out[v]) {
                auto ct = static_cast<std::size_t>(comp_of(g.edges[e].to));
                if (ct == cu) continue;
                std::size_t d = *dist[cu] + g.edges[e].weight;
                if (!dist[ct] || d > *dist[ct]) {
                    dist[ct] = d;
                    entry_edge[ct] = e;
                    entry_node[ct] = id.at(g.edges[e].to);
                }
            }
        }
    }

    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < dist.size(); ++c) {
        if (dist[c] && (!best || *dist[c] > *dist[*best])) best = c;
    }
    report.k = best ? *dist[*best] : 0;
    report.cls = class_for_nesting(*report.k);
    if (best && *report.k > 0) {
        std::size_t c = *best;
        std::size_t exit = entry_node[c];
        while (true) {
            auto inner = path_within(entry_node[c], exit);
            report.witness.insert(report.witness.begin(), inner.begin(), inner.end());
            if (!entry_edge[c]) break;
            const TypeEdge& e = g.edges[*entry_edge[c]];
            report.witness.insert(report.witness.begin(), e);
            exit = id.at(e.from);
            c = static_cast<std::size_t>(scc.comp[exit]);
        }
        // Plain fields after the last list level add nothing.
        while (!report.witness.empty() && report.witness.back().weight == 0) report.witness.pop_back();
    }
    return report;
}

inline ComplexityReport classify(const SchemaDocument& doc, TypeGraphOptions opts = {}) {
    return classify(build_type_graph(doc, opts));
}

// Worst-case response size of a query of n fields with k nested lists of
// at most d elements each: (n-k)*d^k + (d^k - 1)/(d - 1).
inline std::uint64_t response_bound(std::uint64_t n, std::uint64_t k, std::uint64_t d) {
    if (d < 1) throw DomainError("response_bound: D must be at least 1");
    if (n <= k) throw DomainError("response_bound: n must exceed K");
    auto overflow = [] { return std::overflow_error("response_bound: result exceeds 64 bits"); };
    std::uint64_t power = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (__builtin_mul_overflow(power, d, &power)) throw overflow();
    }
    std::uint64_t geometric = d == 1 ? k : (power - 1) / (d - 1);
    std::uint64_t result;
    if (__builtin_mul_overflow(n - k, power, &result) || __builtin_add_overflow(result, geometric, &result)) {
        throw overflow();
    }
    return result;
}

}  // namespace gqla
