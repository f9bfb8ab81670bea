#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "gqla/errors.hpp"

namespace gqla {

enum class TokenKind : std::uint8_t {
    EndOfFile,
    Bang,
    Dollar,
    Amp,
    ParenL,
    ParenR,
    Spread,
    Colon,
    Equals,
    At,
    BracketL,
    BracketR,
    BraceL,
    Pipe,
    BraceR,
    Name,
    Int,
    Float,
    String,
    BlockString,
};

inline std::string_view describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::EndOfFile: return "<EOF>";
        case TokenKind::Bang: return "\"!\"";
        case TokenKind::Dollar: return "\"$\"";
        case TokenKind::Amp: return "\"&\"";
        case TokenKind::ParenL: return "\"(\"";
        case TokenKind::ParenR: return "\")\"";
        case TokenKind::Spread: return "\"...\"";
        case TokenKind::Colon: return "\":\"";
        case TokenKind::Equals: return "\"=\"";
        case TokenKind::At: return "\"@\"";
        case TokenKind::BracketL: return "\"[\"";
        case TokenKind::BracketR: return "\"]\"";
        case TokenKind::BraceL: return "\"{\"";
        case TokenKind::Pipe: return "\"|\"";
        case TokenKind::BraceR: return "\"}\"";
        case TokenKind::Name: return "Name";
        case TokenKind::Int: return "Int";
        case TokenKind::Float: return "Float";
        case TokenKind::String: return "String";
        case TokenKind::BlockString: return "BlockString";
    }
    return "token";
}

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    // Name or numeric text as written; decoded contents for strings.
    std::string value;
    Location loc;
};

namespace detail {

inline bool is_name_start(char c) {
    return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline bool is_name_continue(char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Common-indent removal and blank first/last line trimming for """ strings.
inline std::string block_string_value(std::string_view raw) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\n' || raw[i] == '\r') {
            lines.push_back(raw.substr(start, i - start));
            if (raw[i] == '\r' && i + 1 < raw.size() && raw[i + 1] == '\n') {
                ++i;
            }
            start = i + 1;
        }
    }
    lines.push_back(raw.substr(start));

    auto leading_ws = [](std::string_view line) {
        std::size_t n = 0;
        while (n < line.size() && (line[n] == ' ' || line[n] == '\t')) {
            ++n;
        }
        return n;
    };

    std::size_t common = std::string_view::npos;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t ws = leading_ws(lines[i]);
        if (ws < lines[i].size() && ws < common) {
            common = ws;
        }
    }
    if (common != std::string_view::npos) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            lines[i] = lines[i].size() >= common ? lines[i].substr(common) : std::string_view{};
        }
    }
    auto blank = [&](std::string_view line) { return leading_ws(line) == line.size(); };
    std::size_t first = 0;
    std::size_t last = lines.size();
    while (first < last && blank(lines[first])) {
        ++first;
    }
    while (last > first && blank(lines[last - 1])) {
        --last;
    }
    std::string out;
    for (std::size_t i = first; i < last; ++i) {
        if (i != first) {
            out += '\n';
        }
        out.append(lines[i]);
    }
    return out;
}

}  // namespace detail

// Single-pass tokenizer over GraphQL source text. Commas, whitespace,
// comments and a leading byte-order mark are insignificant.
class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
        }
    }

    Token next() {
        skip_ignored();
        Token tok;
        tok.loc = here();
        if (pos_ >= src_.size()) {
            tok.kind = TokenKind::EndOfFile;
            return tok;
        }
        char c = src_[pos_];
        auto single = [&](TokenKind kind) {
            advance();
            tok.kind = kind;
            return tok;
        };
        switch (c) {
            case '!': return single(TokenKind::Bang);
            case '$': return single(TokenKind::Dollar);
            case '&': return single(TokenKind::Amp);
            case '(': return single(TokenKind::ParenL);
            case ')': return single(TokenKind::ParenR);
            case ':': return single(TokenKind::Colon);
            case '=': return single(TokenKind::Equals);
            case '@': return single(TokenKind::At);
            case '[': return single(TokenKind::BracketL);
            case ']': return single(TokenKind::BracketR);
            case '{': return single(TokenKind::BraceL);
            case '|': return single(TokenKind::Pipe);
            case '}': return single(TokenKind::BraceR);
            case '.':
                if (src_.substr(pos_, 3) == "...") {
                    advance(3);
                    tok.kind = TokenKind::Spread;
                    return tok;
                }
                throw ParseError("unexpected character \".\"", tok.loc);
            case '"':
                if (src_.substr(pos_, 3) == "\"\"\"") {
                    return read_block_string(tok);
                }
                return read_string(tok);
            default: break;
        }
        if (detail::is_name_start(c)) {
            std::size_t begin = pos_;
            while (pos_ < src_.size() && detail::is_name_continue(src_[pos_])) {
                advance();
            }
            tok.kind = TokenKind::Name;
            tok.value = std::string(src_.substr(begin, pos_ - begin));
            return tok;
        }
        if (c == '-' || detail::is_digit(c)) {
            return read_number(tok);
        }
        throw ParseError(unexpected_char(c), tok.loc);
    }

private:
    Location here() const { return {line_, pos_ - line_start_ + 1}; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            char c = src_[pos_++];
            if (c == '\n' || (c == '\r' && (pos_ >= src_.size() || src_[pos_] != '\n'))) {
                ++line_;
                line_start_ = pos_;
            }
        }
    }

    static std::string unexpected_char(char c) {
        if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned char>(c));
            return std::string("unexpected character ") + buf;
        }
        return std::string("unexpected character \"") + c + "\"";
    }

    void skip_ignored() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    Token read_number(Token& tok) {
        std::size_t begin = pos_;
        bool is_float = false;
        if (src_[pos_] == '-') {
            advance();
        }
        if (pos_ < src_.size() && src_[pos_] == '0') {
            advance();
            if (pos_ < src_.size() && detail::is_digit(src_[pos_])) {
                throw ParseError("invalid number, unexpected digit after 0", here());
            }
        } else {
            read_digits();
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            is_float = true;
            advance();
            read_digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            is_float = true;
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                advance();
            }
            read_digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' || detail::is_name_start(src_[pos_]))) {
            throw ParseError("invalid number, expected digit", here());
        }
        tok.kind = is_float ? TokenKind::Float : TokenKind::Int;
        tok.value = std::string(src_.substr(begin, pos_ - begin));
        return tok;
    }

    void read_digits() {
        if (pos_ >= src_.size() || !detail::is_digit(src_[pos_])) {
            throw ParseError("invalid number, expected digit", here());
        }
        while (pos_ < src_.size() && detail::is_digit(src_[pos_])) {
            advance();
        }
    }

    static int hex_value(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    std::uint32_t read_hex4() {
        std::uint32_t cp = 0;
        for (int i = 0; i < 4; ++i) {
            int h = pos_ < src_.size() ? hex_value(src_[pos_]) : -1;
            if (h < 0) {
                throw ParseError("invalid unicode escape sequence", here());
            }
            cp = cp * 16 + static_cast<std::uint32_t>(h);
            advance();
        }
        return cp;
    }

    Token read_string(Token& tok) {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n' || src_[pos_] == '\r') {
                throw ParseError("unterminated string", here());
            }
            char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (static_cast<unsigned char>(c) < 0x20 && c != '\t') {
                throw ParseError("invalid character within string", here());
            }
            if (c != '\\') {
                out += c;
                advance();
                continue;
            }
            advance();
            if (pos_ >= src_.size()) {
                throw ParseError("unterminated string", here());
            }
            char e = src_[pos_];
            switch (e) {
                case '"': out += '"'; advance(); break;
                case '\\': out += '\\'; advance(); break;
                case '/': out += '/'; advance(); break;
                case 'b': out += '\b'; advance(); break;
                case 'f': out += '\f'; advance(); break;
                case 'n': out += '\n'; advance(); break;
                case 'r': out += '\r'; advance(); break;
                case 't': out += '\t'; advance(); break;
                case 'u': {
                    advance();
                    std::uint32_t cp = read_hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF && src_.substr(pos_, 2) == "\\u") {
                        std::size_t save_pos = pos_;
                        std::size_t save_line = line_;
                        std::size_t save_start = line_start_;
                        advance(2);
                        std::uint32_t low = read_hex4();
                        if (low >= 0xDC00 && low <= 0xDFFF) {
                            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
                        } else {
                            pos_ = save_pos;
                            line_ = save_line;
                            line_start_ = save_start;
                        }
                    }
                    detail::append_utf8(out, cp);
                    break;
                }
                default: throw ParseError(std::string("invalid escape sequence \\") + e, here());
            }
        }
        tok.kind = TokenKind::String;
        tok.value = std::move(out);
        return tok;
    }

    Token read_block_string(Token& tok) {
        advance(3);
        std::string raw;
        while (true) {
            if (pos_ >= src_.size()) {
                throw ParseError("unterminated block string", here());
            }
            if (src_.substr(pos_, 3) == "\"\"\"") {
                advance(3);
                break;
            }
            if (src_.substr(pos_, 4) == "\\\"\"\"") {
                raw += "\"\"\"";
                advance(4);
                continue;
            }
            char c = src_[pos_];
            if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' && c != '\r') {
                throw ParseError("invalid character within block string", here());
            }
            raw += c;
            advance();
        }
        tok.kind = TokenKind::BlockString;
        tok.value = detail::block_string_value(raw);
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

}  // namespace gqla
