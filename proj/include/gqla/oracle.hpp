#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gqla/ast.hpp"
#include "gqla/errors.hpp"
#include "gqla/schema_index.hpp"

namespace gqla {

// A literal query selection. Repeated fields are treated as aliased, so
// a selection set may name the same field more than once.
struct QueryNode {
    enum class Kind : std::uint8_t { Field, InlineFragment };
    Kind kind = Kind::Field;
    std::string name;  // field name or type condition
    std::vector<QueryNode> selections;
};

struct OracleLimits {
    std::size_t max_types = 10;  // object, interface and union types
    std::size_t max_n = 8;
    std::uint64_t max_d = 4;
};

namespace detail {

class QueryOracle {
public:
    QueryOracle(const SchemaDocument& doc, std::uint64_t d) : index_(doc), d_(d) {}

    const SchemaIndex& index() const { return index_; }

    // Response units for `selections` run on a value of `type`, with every
    // list holding d elements. Scalars, enums, __typename and list-naming
    // fields count one unit each; a plain object field adds only what its
    // sub-selection returns. Abstract values take whichever concrete type
    // answers the most.
    std::uint64_t execute(const std::vector<QueryNode>& selections, const std::string& type) const {
        if (index_.kind(type) != DefinitionKind::Object) {
            std::uint64_t best = 0;
            for (const auto& concrete : index_.possible_types(type)) best = std::max(best, execute(selections, concrete));
            return best;
        }
        std::uint64_t total = 0;
        for (const auto& sel : selections) {
            if (sel.kind == QueryNode::Kind::InlineFragment) {
                if (applies(sel.name, type)) total += execute(sel.selections, type);
                continue;
            }
            if (sel.name == "__typename") {
                total += 1;
                continue;
            }
            const FieldDefinition* f = field(type, sel.name);
            if (!f) throw PreconditionViolation("oracle: " + type + " has no field " + sel.name);
            if (index_.is_composite_output(f->type.name)) {
                std::uint64_t inner = execute(sel.selections, f->type.name);
                std::size_t depth = f->type.list_depth();
                if (depth == 0) {
                    total += inner;
                } else {
                    std::uint64_t copies = 1;
                    for (std::size_t i = 0; i < depth; ++i) copies *= d_;
                    total += 1 + copies * inner;
                }
            } else {
                total += 1;
            }
        }
        return total;
    }

    // Calls `emit` with every selection set on `type` spending exactly
    // `size` fields. Fields are chosen in non-decreasing order, so each
    // multiset of top-level choices is produced once.
    void enumerate(const std::string& type, std::size_t size, const std::function<void(const std::vector<QueryNode>&)>& emit) {
        std::vector<QueryNode> acc;
        fill(type, size, 0, acc, emit);
    }

private:
    struct Choice {
        QueryNode::Kind kind;
        std::string name;
        std::optional<std::string> target;  // sub-selection type; absent for leaves
    };

    const FieldDefinition* field(const std::string& type, const std::string& name) const {
        if (const auto* fields = index_.fields(type)) {
            for (const auto& f : *fields) {
                if (f.name == name) return &f;
            }
        }
        return nullptr;
    }

    bool applies(const std::string& condition, const std::string& concrete) const {
        auto possible = index_.possible_types(condition);
        return std::find(possible.begin(), possible.end(), concrete) != possible.end();
    }

    const std::vector<Choice>& choices(const std::string& type) {
        auto it = choices_.find(type);
        if (it != choices_.end()) return it->second;
        std::vector<Choice> out;
        if (const auto* fields = index_.fields(type)) {
            for (const auto& f : *fields) {
                std::optional<std::string> target;
                if (index_.is_composite_output(f.type.name)) target = f.type.name;
                out.push_back({QueryNode::Kind::Field, f.name, target});
            }
        }
        out.push_back({QueryNode::Kind::Field, "__typename", std::nullopt});
        if (index_.kind(type) != DefinitionKind::Object) {
            for (const auto& concrete : index_.possible_types(type)) {
                out.push_back({QueryNode::Kind::InlineFragment, concrete, concrete});
            }
        }
        return choices_.emplace(type, std::move(out)).first->second;
    }

    void fill(const std::string& type, std::size_t size, std::size_t first, std::vector<QueryNode>& acc,
              const std::function<void(const std::vector<QueryNode>&)>& emit) {
        if (size == 0) {
            if (!acc.empty()) emit(acc);
            return;
        }
        const auto& options = choices(type);
        for (std::size_t c = first; c < options.size(); ++c) {
            const Choice& choice = options[c];
            if (!choice.target) {
                acc.push_back({choice.kind, choice.name, {}});
                fill(type, size - 1, c, acc, emit);
                acc.pop_back();
                continue;
            }
            // A field spends one unit itself; a fragment spends none.
            std::size_t own = choice.kind == QueryNode::Kind::Field ? 1 : 0;
            if (size < own + 1) continue;
            for (std::size_t sub = 1; sub + own <= size; ++sub) {
                std::vector<QueryNode> inner;
                fill(*choice.target, sub, 0, inner, [&](const std::vector<QueryNode>& sel) {
                    acc.push_back({choice.kind, choice.name, sel});
                    fill(type, size - own - sub, c, acc, emit);
                    acc.pop_back();
                });
            }
        }
    }

    SchemaIndex index_;
    std::uint64_t d_;
    std::map<std::string, std::vector<Choice>> choices_;
};

}  // namespace detail

// Largest response any query of exactly n fields can produce when every
// list holds d elements, found by running every such query.
inline std::uint64_t oracle_worst_case(const SchemaDocument& doc, std::size_t n, std::uint64_t d,
                                       OracleLimits limits = {}) {
    detail::QueryOracle oracle(doc, d);
    const SchemaIndex& index = oracle.index();
    std::size_t composite = 0;
    for (const auto& def : index.document().definitions) {
        if (!is_extension(def) && index.is_composite_output(name_of(def))) ++composite;
    }
    if (composite > limits.max_types) {
        throw GuardExceeded("oracle: " + std::to_string(composite) + " output types exceed the limit of " +
                            std::to_string(limits.max_types));
    }
    if (n < 1 || n > limits.max_n) throw GuardExceeded("oracle: n must be in 1.." + std::to_string(limits.max_n));
    if (d < 1 || d > limits.max_d) throw GuardExceeded("oracle: D must be in 1.." + std::to_string(limits.max_d));
    const auto& root = index.roots().query;
    if (!root || !index.is_composite_output(*root)) throw PreconditionViolation("oracle: schema has no query root");

    std::uint64_t best = 0;
    oracle.enumerate(*root, n, [&](const std::vector<QueryNode>& query) {
        best = std::max(best, oracle.execute(query, *root));
    });
    return best;
}

}  // namespace gqla
