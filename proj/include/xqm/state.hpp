// Two-qubit X-states and their equivalent representations: matrix elements,
// the correlation (Fano-Bloch) matrix, and the two-block coefficient form
// used by the closed-form information measures.
//
// Basis order is fixed as {|00>, |01>, |10>, |11>}. The diagonal block acts
// on span{|00>,|11>}, the anti-diagonal ("tilde") block on span{|01>,|10>}.
#pragma once

#include <array>
#include <functional>

#include "xqm/errors.hpp"
#include "xqm/linalg.hpp"

namespace xqm {

inline constexpr double kTraceTol = 1e-12;
inline constexpr double kSchurSlack = 1e-12;   // slack on d1*d4 >= |a14|^2 checks
inline constexpr double kXSupportTol = 1e-10;  // max stray entry for X support
inline constexpr double kEigenFloor = -1e-10;  // smallest admissible eigenvalue

// X-shaped density matrix: four populations and the two coherences.
struct XState {
  double d1 = 0.25, d2 = 0.25, d3 = 0.25, d4 = 0.25;
  cplx a14{};
  cplx a23{};
};

XState maximally_mixed();
XState bell_phi_plus();  // (|00>+|11>)/sqrt(2)

// Unit trace, nonnegative populations, Schur positivity conditions.
bool is_valid_xstate(const XState& s, std::string* why = nullptr);
// Returns s unchanged or throws NotPositive with a diagnostic.
XState validated(const XState& s);

// Correlation matrix t[a][b] = Tr(rho sigma_a (x) sigma_b).
struct FanoBloch {
  std::array<std::array<double, 4>, 4> t{};

  double& operator()(int i, int j) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const double& operator()(int i, int j) const {
    return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

// Coefficient 4-vector of one block; index 0 is the identity-like weight.
using Coeff4 = std::array<double, 4>;

struct BlockCoeffs {
  Coeff4 chi{};        // diagonal block
  Coeff4 chi_tilde{};  // anti-diagonal block
};

struct BlockCoeffsDeriv {
  Coeff4 dchi{};
  Coeff4 dchi_tilde{};
};

FanoBloch to_fano_bloch(const XState& s);

// Inverse map. Throws NonXSupport when entries outside the eight X slots
// exceed kXSupportTol, NotPositive when the result fails validation.
XState from_fano_bloch(const FanoBloch& t);

BlockCoeffs block_coeffs(const XState& s);
BlockCoeffs block_coeffs(const FanoBloch& t);
XState state_from_block_coeffs(const BlockCoeffs& c);

// Interleave/split between the correlation matrix and the block form.
FanoBloch fano_bloch_from_block_coeffs(const BlockCoeffs& c);

Mat4 to_matrix(const XState& s);
XState xstate_from_matrix(const Mat4& rho);  // throws NonXSupport / NotPositive

// Block generators: theta_a spans the diagonal block, theta-tilde_a the
// anti-diagonal one. Both sets multiply like Pauli matrices on their
// two-dimensional subspace.
Mat4 block_generator(int a);
Mat4 block_generator_tilde(int a);

// (1/2) sum_a c_a theta_a + (1/2) sum_a ct_a theta-tilde_a.
Mat4 block_expansion(const Coeff4& c, const Coeff4& ct);
inline Mat4 block_expansion(const BlockCoeffs& c) { return block_expansion(c.chi, c.chi_tilde); }
inline Mat4 block_expansion(const BlockCoeffsDeriv& d) { return block_expansion(d.dchi, d.dchi_tilde); }

// One-parameter family of X-states over a closed interval, with either an
// analytic derivative supplier (in block-coefficient form) or central finite
// differences of configurable step.
class ParametrizedFamily {
 public:
  ParametrizedFamily(std::function<XState(double)> state, double theta_min, double theta_max);

  ParametrizedFamily& with_analytic_derivative(std::function<BlockCoeffsDeriv(double)> d);
  ParametrizedFamily& with_fd_step(double h);
  ParametrizedFamily& with_richardson(bool on);

  double theta_min() const { return lo_; }
  double theta_max() const { return hi_; }
  double fd_step() const { return h_; }
  bool has_analytic_derivative() const { return static_cast<bool>(analytic_); }

  XState state(double theta) const;  // throws OutOfDomain outside the interval
  BlockCoeffs coeffs(double theta) const;
  Mat4 matrix(double theta) const;

  // Analytic supplier if present, otherwise central differences. Throws
  // OutOfDomain when a stencil point would leave the interval.
  BlockCoeffsDeriv derivative(double theta) const;

  // Matrix-valued derivative: analytic mode expands the coefficient
  // derivative, finite-difference mode differences matrices directly.
  Mat4 matrix_derivative(double theta) const;
  Mat4 matrix_derivative_fd(double theta) const;

 private:
  std::function<XState(double)> state_;
  std::function<BlockCoeffsDeriv(double)> analytic_;
  double lo_, hi_;
  double h_ = 1e-5;
  bool richardson_ = false;

  void check_interior(double theta, double margin) const;
};

// theta in [0,1] interpolating a -> b linearly in matrix entries; the
// derivative is supplied analytically.
ParametrizedFamily linear_family(const XState& a, const XState& b);

BlockCoeffsDeriv family_derivative(const ParametrizedFamily& f, double theta);

}  // namespace xqm
