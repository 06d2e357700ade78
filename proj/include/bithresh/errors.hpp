#pragma once

#include <stdexcept>
#include <string>

namespace bithresh {

// Thrown when a computation would exceed a configured size cap. The message
// names the cap so callers can tell which limit was hit.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an operation's structural precondition fails, e.g. asking for
// the stride-2 partition of a row whose period is at most 2, or running a
// check that requires a specific threshold profile on a system without it.
class NotApplicableError : public std::runtime_error {
public:
    explicit NotApplicableError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an internally verified identity fails at runtime. This always
// indicates a bug in this library, never bad input.
class InternalInconsistencyError : public std::logic_error {
public:
    explicit InternalInconsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace bithresh
