#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

// Error taxonomy shared by the library and the CLI. The CLI maps each
// category to a process exit code: usage 2, parse 3, internal 4.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

// Caller violated a documented precondition (bad length, width mismatch,
// out-of-range argument).
class UsageError : public Error {
public:
    explicit UsageError(std::string msg) : Error(std::move(msg), 2) {}
};

// A request exceeded a configured resource cap (e.g. dense materialization
// above the size limit). Treated as a usage problem by the CLI.
class ResourceError : public UsageError {
public:
    explicit ResourceError(std::string msg) : UsageError(std::move(msg)) {}
};

// Malformed input data (file contents, not arguments).
class ParseError : public Error {
public:
    explicit ParseError(std::string msg) : Error(std::move(msg), 3) {}
};

// A library invariant failed; indicates a bug, not a user mistake.
class InternalError : public Error {
public:
    explicit InternalError(std::string msg) : Error(std::move(msg), 4) {}
};

}  // namespace weyl
