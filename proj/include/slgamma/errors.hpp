#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slgamma {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text could not be parsed; `line` and `column` are 1-based.
struct ParseError : Error {
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : Error("parse error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + std::move(msg)),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

/// Inversion of the zero vector (or a zero factor in a Gamma factorization).
struct ZeroVector : Error {
    using Error::Error;
};

/// A CliffordNumber with grade > 1 support was used where a vector is required.
struct NotAVector : Error {
    using Error::Error;
};

/// Matrix validation: Delta(g) = a d* - b c* differs from 1.
struct DeterminantNotOne : Error {
    DeterminantNotOne(std::string delta_str)
        : Error("determinant condition failed: Delta = " + delta_str),
          delta(std::move(delta_str)) {}
    std::string delta;  // formatted value of the computed Delta
};

/// Matrix validation: one of ab*, d*b, cd*, c*a is not a vector.
struct EntryNotVectorCondition : Error {
    EntryNotVectorCondition(std::string which_condition)
        : Error("vector condition failed for " + which_condition),
          which(std::move(which_condition)) {}
    std::string which;  // "ab*", "d*b", "cd*" or "c*a"
};

/// Full certification requested but a nonzero entry has no Gamma factorization.
struct MissingGammaEvidence : Error {
    MissingGammaEvidence(std::string entry_name)
        : Error("missing Gamma evidence for entry " + entry_name),
          entry(std::move(entry_name)) {}
    std::string entry;
};

/// A canonical-form constructor was called with an invalid parameter.
struct BadParameter : Error {
    using Error::Error;
};

/// The iteration engine requires f = diag(r, 1/r) with r real, r != 0, |r| != 1.
struct NotDiagonalHyperbolic : Error {
    using Error::Error;
};

/// The Moebius action produced higher-grade residue beyond tolerance.
struct NonVectorResult : Error {
    using Error::Error;
};

/// An operation's stated precondition does not hold for the given input.
struct PreconditionNotMet : Error {
    using Error::Error;
};

}  // namespace slgamma
