#pragma once

#include <stdexcept>
#include <string>

namespace clust {

// Base class of every failure the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact division was requested but no Laurent-polynomial quotient exists.
struct NotDivisible : Error {
    using Error::Error;
};

// A seed invariant does not hold (dimensions, sign pattern, coefficient support, ...).
struct InvalidSeed : Error {
    using Error::Error;
};

// No positive integer diagonal D makes D*B skew-symmetric.  A seed over
// such a matrix is invalid, hence the parent.
struct NotSkewSymmetrizable : InvalidSeed {
    using InvalidSeed::InvalidSeed;
};

// An exchange-relation division failed.  Mutation of a valid seed always
// divides exactly, so this indicates a corrupted seed or an internal bug.
struct LaurentViolation : Error {
    using Error::Error;
};

struct NotAcyclic : Error {
    using Error::Error;
};

struct NotIsolated : Error {
    using Error::Error;
};

struct NotFiniteType : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct UnknownVariable : ParseError {
    using ParseError::ParseError;
};

}  // namespace clust
