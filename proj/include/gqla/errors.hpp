#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gqla {

struct Location {
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==(const Location&, const Location&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, Location where)
        : std::runtime_error(format(message, where)), message_(message), where_(where) {}

    const std::string& message() const noexcept { return message_; }
    Location where() const noexcept { return where_; }

private:
    static std::string format(const std::string& message, Location where) {
        return "syntax error at " + std::to_string(where.line) + ":" + std::to_string(where.column) +
               ": " + message;
    }

    std::string message_;
    Location where_;
};

// Raised when an operation is called outside its documented domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyCorpus : public std::invalid_argument {
public:
    EmptyCorpus() : std::invalid_argument("empty corpus") {}
};

}  // namespace gqla
