#pragma once

#include <stdexcept>
#include <string>

namespace sesh {

// Base class for all errors raised by the library. Errors that stem from
// user-supplied data derive from InputError so the CLI can map them to the
// input-error exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

class NotSquarefree : public InputError {
public:
    explicit NotSquarefree(const std::string& what) : InputError(what) {}
};

// Thrown when the modular degree-pattern certification cannot establish
// irreducibility within the prime budget. This includes actually reducible
// inputs; the message says which.
class IrreducibilityUnverified : public InputError {
public:
    explicit IrreducibilityUnverified(const std::string& what) : InputError(what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class AllCoordsZero : public InputError {
public:
    explicit AllCoordsZero(const std::string& what) : InputError(what) {}
};

class DuplicatePoint : public InputError {
public:
    explicit DuplicatePoint(const std::string& what) : InputError(what) {}
};

class CommonComponent : public InputError {
public:
    explicit CommonComponent(const std::string& what) : InputError(what) {}
};

class GammaOutOfRange : public InputError {
public:
    explicit GammaOutOfRange(const std::string& what) : InputError(what) {}
};

class NoBoundInBudget : public Error {
public:
    explicit NoBoundInBudget(const std::string& what) : Error(what) {}
};

class UnsupportedConfiguration : public InputError {
public:
    explicit UnsupportedConfiguration(const std::string& what) : InputError(what) {}
};

class DimensionMismatch : public InputError {
public:
    explicit DimensionMismatch(const std::string& what) : InputError(what) {}
};

class NoCurveThroughPoint : public InputError {
public:
    explicit NoCurveThroughPoint(const std::string& what) : InputError(what) {}
};

class ShapeMismatch : public InputError {
public:
    explicit ShapeMismatch(const std::string& what) : InputError(what) {}
};

class ParseError : public InputError {
public:
    explicit ParseError(const std::string& what) : InputError(what) {}
};

} // namespace sesh
