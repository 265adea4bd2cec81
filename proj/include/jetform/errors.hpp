#pragma once

#include <stdexcept>
#include <string>

namespace jetform {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct VariableMismatch : Error {
    using Error::Error;
};
struct SingularJacobian : Error {
    using Error::Error;
};
struct PreconditionViolated : Error {
    using Error::Error;
};
struct NotDivisible : Error {
    using Error::Error;
};
struct NotClosed : Error {
    using Error::Error;
};
struct ZeroAtOrigin : Error {
    using Error::Error;
};
struct DegenerateForm : Error {
    using Error::Error;
};
struct DegenerateDifferential : Error {
    using Error::Error;
};
struct NotS1 : Error {
    using Error::Error;
};
struct NotNonSingular : Error {
    using Error::Error;
};
struct OutsideU : Error {
    using Error::Error;
};
struct NotStraightened : Error {
    using Error::Error;
};

// Signals a broken pipeline invariant: a property the construction guarantees
// failed on actual data, so the bug is upstream, not in the input.
struct StructureViolation : Error {
    using Error::Error;
};
struct InvalidTriple : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    size_t position;
    SyntaxError(const std::string& what, size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};
struct UnknownVariable : Error {
    using Error::Error;
};
struct DegreeMismatch : Error {
    using Error::Error;
};

}  // namespace jetform
