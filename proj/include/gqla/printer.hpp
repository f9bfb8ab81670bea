#pragma once

#include <string>
#include <variant>

#include "gqla/ast.hpp"

namespace gqla {

struct PrintOptions {
    bool descriptions = true;
};

namespace detail {

inline void print_string(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

inline void print_value(std::string& out, const Value& v) {
    switch (v.kind) {
        case Value::Kind::Variable: out += '$'; out += v.text; break;
        case Value::Kind::String: print_string(out, v.text); break;
        case Value::Kind::Null: out += "null"; break;
        case Value::Kind::List:
            out += '[';
            for (std::size_t i = 0; i < v.items.size(); ++i) {
                if (i) out += ", ";
                print_value(out, v.items[i]);
            }
            out += ']';
            break;
        case Value::Kind::Object:
            out += '{';
            for (std::size_t i = 0; i < v.fields.size(); ++i) {
                if (i) out += ", ";
                out += v.fields[i].name;
                out += ": ";
                print_value(out, v.fields[i].value);
            }
            out += '}';
            break;
        default: out += v.text; break;
    }
}

class Printer {
public:
    explicit Printer(PrintOptions opts) : opts_(opts) {}

    std::string document(const SchemaDocument& doc) {
        for (std::size_t i = 0; i < doc.definitions.size(); ++i) {
            if (i) out_ += '\n';
            std::visit([this](const auto& d) { definition(d); }, doc.definitions[i]);
        }
        return std::move(out_);
    }

private:
    void description(const std::optional<std::string>& d, const char* indent) {
        if (opts_.descriptions && d) {
            out_ += indent;
            print_string(out_, *d);
            out_ += '\n';
        }
    }

    void head(bool extension, std::string_view keyword) {
        if (extension) out_ += "extend ";
        out_ += keyword;
    }

    void directives(const std::vector<Directive>& dirs) {
        for (const auto& d : dirs) {
            out_ += " @";
            out_ += d.name;
            if (!d.arguments.empty()) {
                out_ += '(';
                for (std::size_t i = 0; i < d.arguments.size(); ++i) {
                    if (i) out_ += ", ";
                    out_ += d.arguments[i].name;
                    out_ += ": ";
                    print_value(out_, d.arguments[i].value);
                }
                out_ += ')';
            }
        }
    }

    void type(const TypeRef& t) {
        std::string s = t.name;
        for (auto it = t.wrappers.rbegin(); it != t.wrappers.rend(); ++it) {
            s = *it == Wrapper::List ? "[" + s + "]" : s + "!";
        }
        out_ += s;
    }

    void input_value(const InputValueDefinition& v) {
        if (opts_.descriptions && v.description) {
            print_string(out_, *v.description);
            out_ += ' ';
        }
        out_ += v.name;
        out_ += ": ";
        type(v.type);
        if (v.default_value) {
            out_ += " = ";
            print_value(out_, *v.default_value);
        }
        directives(v.directives);
    }

    void argument_list(const std::vector<InputValueDefinition>& args) {
        if (args.empty()) return;
        out_ += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out_ += ", ";
            input_value(args[i]);
        }
        out_ += ')';
    }

    void fields(const std::vector<FieldDefinition>& fs) {
        if (fs.empty()) {
            out_ += '\n';
            return;
        }
        out_ += " {\n";
        for (const auto& f : fs) {
            description(f.description, "  ");
            out_ += "  ";
            out_ += f.name;
            argument_list(f.arguments);
            out_ += ": ";
            type(f.type);
            directives(f.directives);
            out_ += '\n';
        }
        out_ += "}\n";
    }

    void implements(const std::vector<std::string>& ifaces) {
        for (std::size_t i = 0; i < ifaces.size(); ++i) {
            out_ += i ? " & " : " implements ";
            out_ += ifaces[i];
        }
    }

    void definition(const SchemaDefinition& d) {
        description(d.description, "");
        head(d.extension, "schema");
        directives(d.directives);
        if (d.operations.empty()) {
            out_ += '\n';
            return;
        }
        out_ += " {\n";
        for (const auto& op : d.operations) {
            out_ += "  ";
            out_ += to_string(op.operation);
            out_ += ": ";
            out_ += op.type_name;
            out_ += '\n';
        }
        out_ += "}\n";
    }

    void definition(const ScalarTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "scalar ");
        out_ += d.name;
        directives(d.directives);
        out_ += '\n';
    }

    void definition(const ObjectTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "type ");
        out_ += d.name;
        implements(d.interfaces);
        directives(d.directives);
        fields(d.fields);
    }

    void definition(const InterfaceTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "interface ");
        out_ += d.name;
        implements(d.interfaces);
        directives(d.directives);
        fields(d.fields);
    }

    void definition(const UnionTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "union ");
        out_ += d.name;
        directives(d.directives);
        for (std::size_t i = 0; i < d.members.size(); ++i) {
            out_ += i ? " | " : " = ";
            out_ += d.members[i];
        }
        out_ += '\n';
    }

    void definition(const EnumTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "enum ");
        out_ += d.name;
        directives(d.directives);
        if (d.values.empty()) {
            out_ += '\n';
            return;
        }
        out_ += " {\n";
        for (const auto& v : d.values) {
            description(v.description, "  ");
            out_ += "  ";
            out_ += v.name;
            directives(v.directives);
            out_ += '\n';
        }
        out_ += "}\n";
    }

    void definition(const InputObjectTypeDefinition& d) {
        description(d.description, "");
        head(d.extension, "input ");
        out_ += d.name;
        directives(d.directives);
        if (d.fields.empty()) {
            out_ += '\n';
            return;
        }
        out_ += " {\n";
        for (const auto& f : d.fields) {
            description(f.description, "  ");
            out_ += "  ";
            InputValueDefinition copy = f;
            copy.description.reset();
            input_value(copy);
            out_ += '\n';
        }
        out_ += "}\n";
    }

    void definition(const DirectiveDefinition& d) {
        description(d.description, "");
        out_ += "directive @";
        out_ += d.name;
        argument_list(d.arguments);
        if (d.repeatable) out_ += " repeatable";
        out_ += " on ";
        for (std::size_t i = 0; i < d.locations.size(); ++i) {
            if (i) out_ += " | ";
            out_ += d.locations[i];
        }
        out_ += '\n';
    }

    PrintOptions opts_;
    std::string out_;
};

}  // namespace detail

// Renders SDL with two-space indentation and a blank line between
// definitions. The output reparses to an equivalent document.
inline std::string print(const SchemaDocument& doc, PrintOptions opts = {}) {
    return detail::Printer(opts).document(doc);
}

inline std::string print(const TypeRef& t) {
    std::string s = t.name;
    for (auto it = t.wrappers.rbegin(); it != t.wrappers.rend(); ++it) {
        s = *it == Wrapper::List ? "[" + s + "]" : s + "!";
    }
    return s;
}

inline std::string print(const Value& v) {
    std::string out;
    detail::print_value(out, v);
    return out;
}

}  // namespace gqla
