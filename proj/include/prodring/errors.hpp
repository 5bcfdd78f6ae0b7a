#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prodring {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct NotASubfield : Error {
    NotASubfield(unsigned from, unsigned to)
        : Error("Q(zeta_" + std::to_string(from) + ") is not a subfield of Q(zeta_" +
                std::to_string(to) + ")") {}
};

struct ZeroElement : Error {
    ZeroElement() : Error("zero element") {}
};

struct NotSquarefree : Error {
    explicit NotSquarefree(long d) : Error("not a squarefree integer >= 2: " + std::to_string(d)) {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("zero polynomial") {}
};

struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error("syntax error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
};

struct InvalidLowerBound : Error {
    long offending;
    InvalidLowerBound(const std::string& product, long j)
        : Error("invalid lower bound in " + product + ": multiplicand has a zero or pole at " +
                std::to_string(j)),
          offending(j) {}
};

struct NonUnitDivisor : Error {
    NonUnitDivisor() : Error("divisor is not a unit monomial") {}
};

struct RelationSearchExhausted : Error {
    explicit RelationSearchExhausted(const std::string& msg)
        : Error("relation search exhausted: " + msg) {}
};

struct PeriodCapExceeded : Error {
    explicit PeriodCapExceeded(unsigned long cap)
        : Error("period iteration exceeded cap " + std::to_string(cap)) {}
};

struct ShiftCoprimalityViolated : Error {
    explicit ShiftCoprimalityViolated(const std::string& msg)
        : Error("hypergeometric bases not shift-coprime: " + msg) {}
};

}  // namespace prodring
