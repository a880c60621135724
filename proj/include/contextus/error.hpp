#pragma once

#include <stdexcept>
#include <string>

namespace contextus {

// Base class for everything this library throws on bad input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Rows of unequal width, or a system whose shape contradicts itself.
class MalformedSystemError : public Error {
public:
    using Error::Error;
};

// Operands defined on different numbers of qubits / coordinates.
class ArityError : public Error {
public:
    using Error::Error;
};

// Text input rejected; carries the byte offset of the offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A documented precondition does not hold (non-commuting triple,
// state not stabilised, non-closed subgroup, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Instance exceeds a documented size guard.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

} // namespace contextus
