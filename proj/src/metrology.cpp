#include "xqm/metrology.hpp"

#include <cmath>

namespace xqm {

namespace {

double space_dot(const Coeff4& x, const Coeff4& y) {
  return x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

double max_abs(const Coeff4& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double minkowski(const Coeff4& x, const Coeff4& y) { return x[0] * y[0] - space_dot(x, y); }

BlockKind classify_block(const Coeff4& chi) {
  const double norm = std::sqrt(chi[0] * chi[0] + space_dot(chi, chi));
  if (norm < kZeroBlockTol) return BlockKind::zero;
  const double defect = minkowski(chi, chi);
  if (defect < kPurityRel * chi[0] * chi[0]) return BlockKind::pure;
  return BlockKind::mixed;
}

Coeff4 sld_block(const Coeff4& chi, const Coeff4& dchi) {
  const double q = minkowski(chi, chi);
  if (chi[0] <= kSingularTol || std::abs(q) <= kSingularTol)
    throw SingularBlock("block too close to the light cone for the SLD coefficients");
  const double s = minkowski(chi, dchi);
  Coeff4 p;
  p[0] = s / q;
  for (std::size_t i = 1; i < 4; ++i) p[i] = (dchi[i] - chi[i] * s / q) / chi[0];
  return p;
}

double qfi_block_mixed(const Coeff4& chi, const Coeff4& dchi) {
  const double q = minkowski(chi, chi);
  if (chi[0] <= kSingularTol || std::abs(q) <= kSingularTol)
    throw SingularBlock("block too close to the light cone for the mixed-state Fisher form");
  const double s = minkowski(chi, dchi);
  const double gdd = minkowski(dchi, dchi);
  return dchi[0] * dchi[0] / chi[0] + (s * s / q - gdd) / chi[0];
}

double pure_block_functional(const Coeff4& v) {
  return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}

namespace {

// Zero blocks count: the light-cone condition holds with equality.
void require_pure(const Coeff4& chi, const char* what) {
  const BlockKind kind = classify_block(chi);
  if (kind == BlockKind::mixed)
    throw NotPure(std::string(what) + ": block fails the purity test");
}

}  // namespace

double qfi_block_pure(const Coeff4& chi) {
  require_pure(chi, "qfi_block_pure");
  return pure_block_functional(chi);
}

SqrtBlockCoeffs sqrt_block(const Coeff4& chi) {
  const double defect = std::max(minkowski(chi, chi), 0.0);
  const double denom = chi[0] + std::sqrt(defect);
  if (denom <= kZeroBlockTol) throw DegenerateBlock("zero block has no square-root coefficients");
  SqrtBlockCoeffs t;
  t.t0 = 0.5 * std::sqrt(denom);
  for (std::size_t i = 0; i < 3; ++i) t.ti[i] = 0.5 * chi[i + 1] / std::sqrt(denom);
  return t;
}

SqrtBlockCoeffs sqrt_block_derivs(const Coeff4& chi, const Coeff4& dchi) {
  const double defect = minkowski(chi, chi);
  if (defect <= kZeroBlockTol)
    throw SingularSqrt("square-root derivatives need a strictly mixed block");
  const double root = std::sqrt(defect);       // sqrt(chi0^2 - |chi|^2)
  const double denom = chi[0] + root;          // chi0 + sqrt(...)
  const double sq = std::sqrt(denom);
  const double chi_dot = space_dot(chi, dchi);  // sum chi_j dchi_j

  SqrtBlockCoeffs dt;
  dt.t0 = (sq * dchi[0] - chi_dot / sq) / (4.0 * root);

  const double nu = 1.0 / (root * sq);
  const double mu = 1.0 / sq;
  const double gamma = 1.0 / (root * denom * sq);
  for (std::size_t i = 0; i < 3; ++i) {
    const double ci = chi[i + 1];
    dt.ti[i] = -0.25 * nu * ci * dchi[0] + 0.5 * mu * dchi[i + 1] + 0.25 * gamma * ci * chi_dot;
  }
  return dt;
}

double skew_block(const Coeff4& chi, const Coeff4& dchi) {
  const SqrtBlockCoeffs dt = sqrt_block_derivs(chi, dchi);
  return 8.0 * (dt.t0 * dt.t0 + dt.ti[0] * dt.ti[0] + dt.ti[1] * dt.ti[1] + dt.ti[2] * dt.ti[2]);
}

double skew_block_pure(const Coeff4& chi) {
  require_pure(chi, "skew_block_pure");
  return 2.0 * pure_block_functional(chi);
}

SldCoeffs sld_coeffs(const BlockCoeffs& c, const BlockCoeffsDeriv& d) {
  SldCoeffs out;
  out.p = sld_block(c.chi, d.dchi);
  out.p_tilde = sld_block(c.chi_tilde, d.dchi_tilde);
  return out;
}

SqrtCoeffs sqrt_coeffs(const BlockCoeffs& c) {
  SqrtCoeffs out;
  out.block = sqrt_block(c.chi);
  out.block_tilde = sqrt_block(c.chi_tilde);
  return out;
}

namespace {

// Shared dispatch for both information measures. `mixed` evaluates the
// mixed-block formula, `pure` the derivative-bearing pure form. A vanishing
// block may only contribute when its derivative vanishes too.
template <typename Mixed, typename Pure, typename Raise>
double block_dispatch(const Coeff4& chi, const Coeff4& dchi, Mixed mixed, Pure pure,
                      Raise raise_degenerate, bool* pure_flag) {
  switch (classify_block(chi)) {
    case BlockKind::zero:
      if (max_abs(dchi) > 1e-9) raise_degenerate();
      return 0.0;
    case BlockKind::pure:
      if (pure_flag) *pure_flag = true;
      return pure(dchi);
    case BlockKind::mixed:
    default:
      return mixed(chi, dchi);
  }
}

}  // namespace

MetrologyReport qfi_total(const BlockCoeffs& c, const BlockCoeffsDeriv& d) {
  MetrologyReport r;
  auto pure = [](const Coeff4& dv) { return pure_block_functional(dv); };
  auto raise = [] { throw SingularBlock("vanishing block with non-vanishing derivative"); };
  r.qfi_block = block_dispatch(c.chi, d.dchi, qfi_block_mixed, pure, raise, &r.block_pure);
  r.qfi_block_tilde = block_dispatch(c.chi_tilde, d.dchi_tilde, qfi_block_mixed, pure, raise,
                                     &r.block_tilde_pure);
  r.qfi_total = r.qfi_block + r.qfi_block_tilde;
  return r;
}

MetrologyReport skew_total(const BlockCoeffs& c, const BlockCoeffsDeriv& d) {
  MetrologyReport r;
  auto mixed = [](const Coeff4& chi, const Coeff4& dchi) { return skew_block(chi, dchi); };
  auto pure = [](const Coeff4& dv) { return 2.0 * pure_block_functional(dv); };
  auto raise = [] { throw SingularSqrt("vanishing block with non-vanishing derivative"); };
  r.skew_block = block_dispatch(c.chi, d.dchi, mixed, pure, raise, &r.block_pure);
  r.skew_block_tilde =
      block_dispatch(c.chi_tilde, d.dchi_tilde, mixed, pure, raise, &r.block_tilde_pure);
  r.skew_total = r.skew_block + r.skew_block_tilde;
  return r;
}

MetrologyReport metrology_report(const BlockCoeffs& c, const BlockCoeffsDeriv& d) {
  const MetrologyReport f = qfi_total(c, d);
  const MetrologyReport i = skew_total(c, d);
  MetrologyReport r = f;
  r.skew_block = i.skew_block;
  r.skew_block_tilde = i.skew_block_tilde;
  r.skew_total = i.skew_total;
  return r;
}

}  // namespace xqm
