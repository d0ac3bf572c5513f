#include "xqm/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace xqm {

namespace {

double offdiag_frobenius(const Mat4& m) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating m(p,q). The rotation is the
// product of a phase on column q and a real rotation by the classic
// smaller-angle choice.
void jacobi_rotate(Mat4& m, Mat4& v, int p, int q) {
  const cplx mpq = m(p, q);
  const double r = std::abs(mpq);
  if (r == 0.0) return;
  const cplx phase = mpq / r;  // e^{i phi}
  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G: identity except G(p,p)=c, G(p,q)=s, G(q,p)=-s*conj(phase),
  // G(q,q)=c*conj(phase). Apply m <- G^dag m G, v <- v G.
  for (int k = 0; k < 4; ++k) {
    const cplx mk_p = m(k, p);
    const cplx mk_q = m(k, q);
    m(k, p) = c * mk_p - s * std::conj(phase) * mk_q;
    m(k, q) = s * mk_p + c * std::conj(phase) * mk_q;
    const cplx vk_p = v(k, p);
    const cplx vk_q = v(k, q);
    v(k, p) = c * vk_p - s * std::conj(phase) * vk_q;
    v(k, q) = s * vk_p + c * std::conj(phase) * vk_q;
  }
  for (int k = 0; k < 4; ++k) {
    const cplx mp_k = m(p, k);
    const cplx mq_k = m(q, k);
    m(p, k) = c * mp_k - s * phase * mq_k;
    m(q, k) = s * mp_k + c * phase * mq_k;
  }
  // Clean the annihilated pair and enforce real diagonal.
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = cplx(m(p, p).real(), 0.0);
  m(q, q) = cplx(m(q, q).real(), 0.0);
}

}  // namespace

EigenSystem hermitian_eigensystem(const Mat4& input) {
  if (!is_hermitian(input, 1e-10)) throw Error("eigensystem requires a Hermitian matrix");
  Mat4 m = input;
  // Symmetrize away representation noise.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = 0.5 * (m(i, j) + std::conj(input(j, i)));
  Mat4 v = identity4();

  // Sweep to the numerical floor: the square roots taken downstream
  // (matrix_sqrt, Wootters) amplify eigenvalue noise near zero, so exiting
  // right at the documented tolerance is not good enough.
  constexpr int kMaxSweeps = 64;
  const double floor_target = 1e-16 * (1.0 + frobenius_norm(m));
  double off = offdiag_frobenius(m);
  int sweep = 0;
  while (off > floor_target) {
    if (++sweep > kMaxSweeps) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) jacobi_rotate(m, v, p, q);
    const double next = offdiag_frobenius(m);
    if (next >= off) break;  // stalled at the floating-point floor
    off = next;
  }
  if (off > kJacobiOffTol) throw Error("Jacobi eigensolver failed to converge");

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return m(a, a).real() > m(b, b).real(); });
  EigenSystem es;
  for (int k = 0; k < 4; ++k) {
    es.values[static_cast<std::size_t>(k)] = m(order[static_cast<std::size_t>(k)],
                                               order[static_cast<std::size_t>(k)]).real();
    for (int i = 0; i < 4; ++i) es.vectors(i, k) = v(i, order[static_cast<std::size_t>(k)]);
  }
  return es;
}

bool is_valid_density_matrix(const Mat4& rho, double eig_floor) {
  if (!is_hermitian(rho, 1e-10)) return false;
  if (std::abs(trace(rho).real() - 1.0) > 1e-10) return false;
  const EigenSystem es = hermitian_eigensystem(rho);
  return es.values[3] >= eig_floor;
}

Mat4 matrix_sqrt(const Mat4& rho) {
  const EigenSystem es = hermitian_eigensystem(rho);
  std::array<double, 4> roots{};
  for (std::size_t k = 0; k < 4; ++k) {
    double lam = es.values[k];
    if (lam < -kEigClampTol) throw NotPSD("matrix_sqrt: eigenvalue below the clamp window");
    // Symmetric clamp: the square root would otherwise turn zero
    // eigenvalues carried as +O(eps) noise into O(sqrt(eps)) artifacts.
    if (lam < kEigClampTol) lam = 0.0;
    roots[k] = std::sqrt(lam);
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k)
        s += es.vectors(i, k) * roots[static_cast<std::size_t>(k)] * std::conj(es.vectors(j, k));
      out(i, j) = s;
    }
  return out;
}

double concurrence_wootters(const Mat4& rho) {
  if (!is_valid_density_matrix(rho)) throw InvalidDensityMatrix("concurrence input invalid");
  const Mat4 yy = kron(pauli(2), pauli(2));
  const Mat4 rho_tilde = yy * conjugate(rho) * yy;
  const Mat4 s = matrix_sqrt(rho);
  const Mat4 h = s * rho_tilde * s;  // Hermitian, similar to rho*rho_tilde
  const EigenSystem es = hermitian_eigensystem(h);
  std::array<double, 4> lam{};
  // Eigenvalues inside the clamp window count as zero: taking the square
  // root of eigensolver noise would contribute O(1e-8) phantom terms.
  for (std::size_t k = 0; k < 4; ++k)
    lam[k] = es.values[k] <= kEigClampTol ? 0.0 : std::sqrt(es.values[k]);
  const double c = lam[0] - lam[1] - lam[2] - lam[3];
  return std::clamp(c, 0.0, 1.0);
}

double qfi_oracle_matrix(const std::function<Mat4(double)>& rho, double theta, double fd_step,
                         const std::function<Mat4(double)>* analytic_drho) {
  const Mat4 r = rho(theta);
  Mat4 dr;
  if (analytic_drho) {
    dr = (*analytic_drho)(theta);
  } else {
    dr = (1.0 / (2.0 * fd_step)) * (rho(theta + fd_step) - rho(theta - fd_step));
  }
  const EigenSystem es = hermitian_eigensystem(r);
  // <i| drho |j> in the eigenbasis.
  double f = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double denom = es.values[static_cast<std::size_t>(i)] +
                           es.values[static_cast<std::size_t>(j)];
      if (denom <= kSpectralCutoff) continue;
      cplx elem = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          elem += std::conj(es.vectors(a, i)) * dr(a, b) * es.vectors(b, j);
      f += 2.0 * std::norm(elem) / denom;
    }
  return f;
}

double skew_oracle_matrix(const std::function<Mat4(double)>& rho, double theta, double fd_step) {
  const Mat4 sp = matrix_sqrt(rho(theta + fd_step));
  const Mat4 sm = matrix_sqrt(rho(theta - fd_step));
  const Mat4 ds = (1.0 / (2.0 * fd_step)) * (sp - sm);
  return 4.0 * trace(ds * ds).real();
}

namespace {

std::function<Mat4(double)> matrix_fn(const ParametrizedFamily& f) {
  return [f](double th) { return f.matrix(th); };
}

// Second-order derivative of a matrix-valued map on [lo, hi]: central
// inside, one-sided three-point stencils at the edges.
template <typename Fn>
Mat4 matrix_derivative_stencil(Fn fn, double theta, double h, double lo, double hi) {
  if (theta - h >= lo && theta + h <= hi)
    return (1.0 / (2.0 * h)) * (fn(theta + h) - fn(theta - h));
  if (theta + 2.0 * h <= hi)
    return (1.0 / (2.0 * h)) *
           (-3.0 * fn(theta) + 4.0 * fn(theta + h) - 1.0 * fn(theta + 2.0 * h));
  if (theta - 2.0 * h >= lo)
    return (1.0 / (2.0 * h)) *
           (3.0 * fn(theta) - 4.0 * fn(theta - h) + 1.0 * fn(theta - 2.0 * h));
  throw OutOfDomain("stencil does not fit inside the family interval");
}

}  // namespace

double qfi_oracle(const ParametrizedFamily& f, double theta) {
  const auto fn = matrix_fn(f);
  if (f.has_analytic_derivative()) {
    const std::function<Mat4(double)> dfn = [f](double th) { return f.matrix_derivative(th); };
    return qfi_oracle_matrix(fn, theta, f.fd_step(), &dfn);
  }
  return qfi_oracle_fd(f, theta);
}

double qfi_oracle_fd(const ParametrizedFamily& f, double theta) {
  const auto fn = matrix_fn(f);
  const Mat4 dr = matrix_derivative_stencil(fn, theta, f.fd_step(), f.theta_min(),
                                            f.theta_max());
  const std::function<Mat4(double)> dfn = [dr](double) { return dr; };
  return qfi_oracle_matrix(fn, theta, f.fd_step(), &dfn);
}

double skew_oracle(const ParametrizedFamily& f, double theta) {
  const auto fn = matrix_fn(f);
  try {
    const Mat4 ds = matrix_derivative_stencil([&fn](double th) { return matrix_sqrt(fn(th)); },
                                              theta, f.fd_step(), f.theta_min(), f.theta_max());
    return 4.0 * trace(ds * ds).real();
  } catch (const NotPSD& e) {
    throw InvalidDensityMatrix(e.what());
  }
}

}  // namespace xqm
