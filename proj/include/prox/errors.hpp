#pragma once

#include <stdexcept>
#include <string>

namespace prox {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (vector length, matrix size).
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// A value is outside the domain an operation accepts (non-integer matrix
/// entry, epsilon out of range, non-unimodular transform, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Caller-supplied data violates a documented precondition.
class InputError : public Error
{
public:
    using Error::Error;
};

class InfeasibleError : public Error
{
public:
    using Error::Error;
};

class UnboundedError : public Error
{
public:
    using Error::Error;
};

/// Target vector is not a conic combination of the supplied generators.
class NotInConeError : public Error
{
public:
    using Error::Error;
};

/// The two sides of a two-representation certificate are different points.
class RepresentationMismatch : public Error
{
public:
    using Error::Error;
};

/// A proximity-proof claim failed at runtime. `claim()` names it.
class InvariantViolation : public Error
{
public:
    InvariantViolation(std::string claim, const std::string& detail)
        : Error("invariant violation [" + claim + "]: " + detail), claim_(std::move(claim))
    {
    }

    const std::string& claim() const noexcept { return claim_; }

private:
    std::string claim_;
};

} // namespace prox
