#pragma once

#include <stdexcept>
#include <string>

namespace asg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lexing or parsing failure at a source location.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line, int col)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line_(line), col_(col) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

class LexError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class ParseError : public SyntaxError {
public:
    ParseError(const std::string& what, int line, int col, std::string expected)
        : SyntaxError(what + " (expected " + expected + ")", line, col),
          expected_(std::move(expected)) {}

    /// Human-readable set of tokens the parser would have accepted.
    const std::string& expected() const noexcept { return expected_; }

private:
    std::string expected_;
};

class DuplicateDeclaration : public SyntaxError {
public:
    DuplicateDeclaration(const std::string& name, int line, int col)
        : SyntaxError("duplicate declaration of '" + name + "'", line, col), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class MalformedAsg : public Error {
public:
    using Error::Error;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("empty corpus") {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ManifestError : public Error {
public:
    using Error::Error;
};

class MissingTokenCounts : public Error {
public:
    explicit MissingTokenCounts(const std::string& sample_id)
        : Error("record '" + sample_id + "' has no token counts") {}
};

} // namespace asg
