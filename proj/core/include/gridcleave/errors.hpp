#ifndef GRIDCLEAVE_ERRORS_HPP
#define GRIDCLEAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gridcleave {

// Error taxonomy mirrors the CLI exit-code contract:
//   ParseError -> 2, PreconditionError -> 3, CapExceededError -> 4.
// InternalError marks a violated invariant the theory says cannot fail;
// it is always a bug, never an input problem.

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace gridcleave

#endif
