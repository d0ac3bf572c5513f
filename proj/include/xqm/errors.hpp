// Typed failure modes. Singular and degenerate paths throw instead of
// returning NaN so callers can dispatch (e.g. fall back to the brute-force
// oracle near a pure block).
#pragma once

#include <stdexcept>
#include <string>

namespace xqm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input matrix has entries outside the diagonal/anti-diagonal pattern.
class NonXSupport : public Error {
 public:
  using Error::Error;
};

// Candidate state violates positivity (Schur conditions or eigenvalues).
class NotPositive : public Error {
 public:
  using Error::Error;
};

// Parameter left the declared interval of a family (or a finite-difference
// stencil would).
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Block coefficients too close to the light cone for the mixed-state
// Fisher formulas.
class SingularBlock : public Error {
 public:
  using Error::Error;
};

// Pure-state formula invoked on a block that fails the purity test.
class NotPure : public Error {
 public:
  using Error::Error;
};

// Square-root coefficients undefined (zero block).
class DegenerateBlock : public Error {
 public:
  using Error::Error;
};

// Square-root coefficient derivatives undefined (pure/degenerate block).
class SingularSqrt : public Error {
 public:
  using Error::Error;
};

class InvalidDensityMatrix : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

}  // namespace xqm
