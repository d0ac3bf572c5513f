// Closed-form quantum Fisher information and Wigner-Yanase skew information
// for X-states, evaluated from block coefficients and their theta-derivatives.
//
// Each 2x2 block is handled on its own: a mixed block goes through the
// Minkowski-metric Fisher expression and the square-root coefficient
// derivatives; a pure block (coefficient vector on the light cone) goes
// through the quadratic pure-state forms. The pure forms are provided both
// literally (evaluated on chi, as printed) and in the derivative-bearing
// convention (evaluated on d_theta chi); the verification suite documents
// that only the derivative-bearing convention reproduces the brute-force
// oracles.
#pragma once

#include "xqm/errors.hpp"
#include "xqm/state.hpp"

namespace xqm {

inline constexpr double kSingularTol = 1e-10;   // floor for chi0 and the Minkowski norm
inline constexpr double kPurityRel = 1e-9;      // block is pure when defect < kPurityRel*chi0^2
inline constexpr double kZeroBlockTol = 1e-12;  // block treated as absent below this weight

// Symmetric-logarithmic-derivative coefficients of both blocks.
struct SldCoeffs {
  Coeff4 p{};
  Coeff4 p_tilde{};
};

struct SqrtBlockCoeffs {
  double t0 = 0.0;
  std::array<double, 3> ti{};
};

// Expansion coefficients of sqrt(rho) over the block generators.
struct SqrtCoeffs {
  SqrtBlockCoeffs block;
  SqrtBlockCoeffs block_tilde;
};

struct MetrologyReport {
  double qfi_block = 0.0, qfi_block_tilde = 0.0, qfi_total = 0.0;
  double skew_block = 0.0, skew_block_tilde = 0.0, skew_total = 0.0;
  bool block_pure = false, block_tilde_pure = false;
};

enum class BlockKind { mixed, pure, zero };

// Minkowski pairing x0*y0 - x1*y1 - x2*y2 - x3*y3.
double minkowski(const Coeff4& x, const Coeff4& y);

BlockKind classify_block(const Coeff4& chi);

// ---- single-block operations ------------------------------------------

// Solves the block SLD linear system. Throws SingularBlock when chi0 or the
// Minkowski norm of chi is below kSingularTol.
Coeff4 sld_block(const Coeff4& chi, const Coeff4& dchi);

// Mixed-block quantum Fisher information. Throws SingularBlock like
// sld_block.
double qfi_block_mixed(const Coeff4& chi, const Coeff4& dchi);

// Quadratic functional v0^2 + v1^2 + v2^2 + v3^2 shared by both pure-state
// conventions.
double pure_block_functional(const Coeff4& v);

// Pure-block Fisher information, literal form (evaluated on chi itself).
// Throws NotPure when the block fails the purity test.
double qfi_block_pure(const Coeff4& chi);

// Square-root coefficients of one block. Throws DegenerateBlock for a zero
// block.
SqrtBlockCoeffs sqrt_block(const Coeff4& chi);

// Their theta-derivatives. Requires a strictly mixed block; throws
// SingularSqrt otherwise.
SqrtBlockCoeffs sqrt_block_derivs(const Coeff4& chi, const Coeff4& dchi);

// Mixed-block skew information 8[(dt0)^2 + sum (dti)^2].
double skew_block(const Coeff4& chi, const Coeff4& dchi);

// Pure-block skew information, literal form 2(chi0^2 + sum chi_i^2).
double skew_block_pure(const Coeff4& chi);

// ---- whole-state operations --------------------------------------------

SldCoeffs sld_coeffs(const BlockCoeffs& c, const BlockCoeffsDeriv& d);
SqrtCoeffs sqrt_coeffs(const BlockCoeffs& c);

// Dispatches each block to the mixed or pure path (derivative-bearing
// convention for pure blocks). A zero block with vanishing derivative
// contributes zero; anything else singular propagates SingularBlock /
// SingularSqrt so the caller can fall back to the oracle.
MetrologyReport qfi_total(const BlockCoeffs& c, const BlockCoeffsDeriv& d);
MetrologyReport skew_total(const BlockCoeffs& c, const BlockCoeffsDeriv& d);

// Both quantities in one report.
MetrologyReport metrology_report(const BlockCoeffs& c, const BlockCoeffsDeriv& d);

}  // namespace xqm
