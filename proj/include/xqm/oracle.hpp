// Brute-force reference implementations on general 4x4 density matrices:
// spectral quantum Fisher information, skew information via the matrix
// square root, Wootters concurrence, and a self-contained complex Hermitian
// eigensolver (cyclic Jacobi). Everything here deliberately avoids the
// block-coefficient formulas so the two routes stay independent.
#pragma once

#include <functional>

#include "xqm/errors.hpp"
#include "xqm/linalg.hpp"
#include "xqm/state.hpp"

namespace xqm {

inline constexpr double kJacobiOffTol = 1e-13;  // off-diagonal Frobenius mass at convergence
inline constexpr double kEigClampTol = 1e-12;   // eigenvalues in [-tol, 0] clamp to 0
inline constexpr double kSpectralCutoff = 1e-12;  // drop terms with p_i + p_j below this

struct EigenSystem {
  std::array<double, 4> values{};  // descending
  Mat4 vectors;                    // eigenvectors as columns, same order
};

// Cyclic Jacobi with complex rotations. Throws Error if the input is not
// Hermitian (1e-10) or the sweep limit is hit.
EigenSystem hermitian_eigensystem(const Mat4& m);

bool is_valid_density_matrix(const Mat4& rho, double eig_floor = -1e-10);

// Principal square root of a PSD Hermitian matrix. Eigenvalues in
// [-kEigClampTol, 0] are clamped to zero; anything lower throws NotPSD.
Mat4 matrix_sqrt(const Mat4& rho);

// Wootters concurrence, computed through the Hermitian similarity
// sqrt(rho) rho~ sqrt(rho) so only the Hermitian eigensolver is needed.
double concurrence_wootters(const Mat4& rho);

// Matrix-level oracles for an arbitrary Hermitian-matrix family; used by
// the X-state wrappers below and by block-restricted checks in the tests.
double qfi_oracle_matrix(const std::function<Mat4(double)>& rho, double theta, double fd_step,
                         const std::function<Mat4(double)>* analytic_drho = nullptr);
double skew_oracle_matrix(const std::function<Mat4(double)>& rho, double theta, double fd_step);

// Spectral formula F = sum 2|<i|drho|j>|^2/(p_i+p_j); the derivative comes
// from the family's analytic supplier when present, else central finite
// differences of the matrices.
double qfi_oracle(const ParametrizedFamily& f, double theta);
// Same, but with the derivative mode forced to finite differences.
double qfi_oracle_fd(const ParametrizedFamily& f, double theta);

// 4 Tr[(d/dtheta sqrt(rho))^2] with the square root by eigendecomposition
// and a central difference in theta.
double skew_oracle(const ParametrizedFamily& f, double theta);

}  // namespace xqm
