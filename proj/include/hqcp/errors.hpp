#pragma once

#include <stdexcept>
#include <string>

namespace hqcp {

// 1-based position of a syntax node inside an input text.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;

    std::string str() const {
        return (file.empty() ? std::string("<input>") : file) + ":" +
               std::to_string(line) + ":" + std::to_string(column);
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourceSpan span)
        : std::runtime_error(span.str() + ": " + msg), span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownTask : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnboundVariable : public std::runtime_error {
public:
    explicit UnboundVariable(const std::string& var)
        : std::runtime_error("unbound variable " + var) {}
};

class InvalidDistribution : public std::runtime_error {
public:
    explicit InvalidDistribution(const std::string& msg)
        : std::runtime_error(msg) {}
};

class DepthExceeded : public std::runtime_error {
public:
    explicit DepthExceeded(int limit)
        : std::runtime_error("recursion depth limit exceeded (" +
                             std::to_string(limit) + ")") {}
};

class NoMatchingBelief : public std::runtime_error {
public:
    explicit NoMatchingBelief(const std::string& msg)
        : std::runtime_error(msg) {}
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(long long budget)
        : std::runtime_error("oracle node budget exceeded (" +
                             std::to_string(budget) + ")") {}
};

class BranchMissing : public std::runtime_error {
public:
    explicit BranchMissing(const std::string& msg)
        : std::runtime_error(msg) {}
};

}  // namespace hqcp
