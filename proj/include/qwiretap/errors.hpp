#pragma once

#include <stdexcept>
#include <string>

namespace qwiretap {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension mismatch between operands.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// Input violates a mathematical precondition (non-Hermitian, invalid state,
// non-normal operator, invalid POVM, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Requested object exceeds a configured size limit.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(what) {}
};

// An iterative routine failed to converge.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

// Linearly dependent input where independence is required.
class DegeneracyError : public Error {
public:
    explicit DegeneracyError(const std::string& what) : Error(what) {}
};

// Malformed input file or command line.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace qwiretap
