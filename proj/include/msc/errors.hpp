#pragma once

#include <stdexcept>
#include <string>

namespace msc {

struct SourceSpan {
    std::string file;
    int line = 0;
    int col_begin = 0;
    int col_end = 0;

    std::string str() const;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const SourceSpan& span, const std::string& msg);
    const SourceSpan& span() const { return span_; }
    const std::string& message() const { return msg_; }

private:
    SourceSpan span_;
    std::string msg_;
};

// Raised when a validation constraint on an already-parsed object fails.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A run hit its round cap before reaching a verdict.
class UndeterminedError : public Error {
public:
    UndeterminedError(long rounds);
    long rounds() const { return rounds_; }

private:
    long rounds_;
};

// An enumeration or construction would exceed the configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

class IllegalMove : public Error {
public:
    IllegalMove(std::string rule, const std::string& why);
    const std::string& rule() const { return rule_; }

private:
    std::string rule_;
};

}  // namespace msc
