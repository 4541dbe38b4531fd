#ifndef NILGEO_ERRORS_HPP
#define NILGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nilgeo {

/// A stated precondition of an operation is violated by the input.
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The restriction of the metric to the center is degenerate, so the
/// orthogonal-splitting machinery (j-maps, Ricci blocks, isotropy pairs)
/// does not apply.
struct DegenerateCenterError : PreconditionError {
  explicit DegenerateCenterError(const std::string& what)
    : PreconditionError("degenerate center: " + what) {}
};

/// A subspace offered as a complement of the center does not give a direct
/// sum decomposition of the algebra.
struct NotComplementError : PreconditionError {
  explicit NotComplementError(const std::string& what)
    : PreconditionError("not a complement: " + what) {}
};

/// The metric is not ad-invariant, so bi-invariant-only formulas do not apply.
struct NotBiInvariantError : PreconditionError {
  explicit NotBiInvariantError(const std::string& what)
    : PreconditionError("metric is not ad-invariant: " + what) {}
};

struct NotTwoStepError : PreconditionError {
  explicit NotTwoStepError(const std::string& what)
    : PreconditionError("algebra is not 2-step nilpotent: " + what) {}
};

struct NotSolvableError : PreconditionError {
  explicit NotSolvableError(const std::string& what)
    : PreconditionError("algebra is not solvable: " + what) {}
};

/// Rational irreducible factorization gave up (degree bound or divisor
/// enumeration budget exceeded). Never downgraded to floating point.
struct FactorizationIncompleteError : std::runtime_error {
  explicit FactorizationIncompleteError(const std::string& what)
    : std::runtime_error("irreducible factorization incomplete: " + what) {}
};

struct DimensionMismatchError : std::invalid_argument {
  explicit DimensionMismatchError(const std::string& what)
    : std::invalid_argument("dimension mismatch: " + what) {}
};

} // namespace nilgeo

#endif
