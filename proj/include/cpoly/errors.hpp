#ifndef CPOLY_ERRORS_HPP
#define CPOLY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpoly {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
    explicit NotPrimeError(unsigned long long p)
        : Error("modulus " + std::to_string(p) + " is not prime") {}
};

struct TooLargeError : Error {
    explicit TooLargeError(unsigned long long p)
        : Error("modulus " + std::to_string(p) + " exceeds the 2^26 cap") {}
};

struct FieldMismatchError : Error {
    FieldMismatchError() : Error("operands belong to different prime fields") {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what = "dimension mismatch")
        : Error(what) {}
};

struct DivisionByZeroPolyError : Error {
    DivisionByZeroPolyError() : Error("polynomial division by zero") {}
};

struct ZeroVectorError : Error {
    ZeroVectorError() : Error("zero vector is not a valid Krylov seed") {}
};

struct NotUnitDiagonalError : Error {
    NotUnitDiagonalError() : Error("triangular factor does not have a unit diagonal") {}
};

struct UnsupportedSizeError : Error {
    explicit UnsupportedSizeError(std::size_t n)
        : Error("dimension " + std::to_string(n) + " is not a power of two") {}
};

struct PoleAtOmegaTwoError : Error {
    PoleAtOmegaTwoError() : Error("constant expression has a pole at omega = 2") {}
};

struct InsufficientSamplesError : Error {
    InsufficientSamplesError() : Error("need at least 3 samples with distinct sizes") {}
};

struct PrimePoolExhaustedError : Error {
    PrimePoolExhaustedError() : Error("prime pool exhausted") {}
};

struct DegreeMismatchError : Error {
    DegreeMismatchError() : Error("residue polynomial degree differs from accumulator") {}
};

struct DegreeCapExceededError : Error {
    explicit DegreeCapExceededError(std::size_t d)
        : Error("degree " + std::to_string(d) + " exceeds the factorization cap of 64") {}
};

struct NotCoprimeError : Error {
    NotCoprimeError() : Error("modular factors are not coprime") {}
};

struct ParseError : Error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what)
        : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct DuplicateEntryError : Error {
    DuplicateEntryError(std::size_t r, std::size_t c)
        : Error("duplicate sparse entry at (" + std::to_string(r) + ", " + std::to_string(c) + ")") {}
};

struct MissingTerminatorError : Error {
    MissingTerminatorError() : Error("missing 0 0 0 terminator in SMS file") {}
};

}  // namespace cpoly

#endif
