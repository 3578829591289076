#ifndef QMATCH_ERRORS_HPP
#define QMATCH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmatch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: unknown ids, duplicate edges, length mismatches.
class InputError : public Error {
public:
    using Error::Error;
};

/// A file could not be parsed. `line()` is 1-based.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The requested needs cannot be met. `vertices()` lists the offending
/// vertex indices (0-based, side given by context).
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, std::vector<std::size_t> vertices)
        : Error(what), vertices_(std::move(vertices)) {}

    const std::vector<std::size_t>& vertices() const noexcept { return vertices_; }

private:
    std::vector<std::size_t> vertices_;
};

/// No augmenting path starts at the requested vertex.
class NoPathError : public Error {
public:
    using Error::Error;
};

/// A path handed to an exchange routine does not alternate as required.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace qmatch

#endif  // QMATCH_ERRORS_HPP
