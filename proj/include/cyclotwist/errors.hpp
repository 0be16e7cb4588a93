#pragma once

#include <stdexcept>
#include <string>

namespace cyclotwist {

// Base class for every contract violation raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& w) : Error(w) {}
};

struct NotADivisor : Error {
    explicit NotADivisor(const std::string& w) : Error(w) {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("singular matrix") {}
};

// num and den vanish simultaneously; impossible for a coprime pair, so this
// always indicates internal corruption rather than bad user data.
struct Indeterminate : Error {
    Indeterminate() : Error("indeterminate evaluation: num and den both vanish") {}
};

struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& w) : Error(w) {}
};

struct BadPrime : Error {
    explicit BadPrime(const std::string& w) : Error(w) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& w) : Error(w) {}
};

struct DegenerateProbes : Error {
    explicit DegenerateProbes(const std::string& w) : Error(w) {}
};

struct NonconstantDegreeOne : Error {
    NonconstantDegreeOne() : Error("degree-1 map has infinite automorphism group") {}
};

struct NotASubfield : Error {
    explicit NotASubfield(const std::string& w) : Error(w) {}
};

struct InvalidCocycle : Error {
    explicit InvalidCocycle(const std::string& w) : Error(w) {}
};

struct NormMismatch : Error {
    explicit NormMismatch(const std::string& w) : Error(w) {}
};

// Raised only when the averaging projector fails to produce a full-rank set,
// which the descent theory rules out; treat as an implementation bug.
struct ProjectionRankDeficient : Error {
    ProjectionRankDeficient() : Error("hilbert90 projection produced a rank-deficient set") {}
};

struct ConventionMismatch : Error {
    explicit ConventionMismatch(const std::string& w) : Error(w) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& w) : Error(w) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w) : Error(w) {}
};

struct SearchBudgetExceeded : Error {
    explicit SearchBudgetExceeded(const std::string& w) : Error(w) {}
};

} // namespace cyclotwist
