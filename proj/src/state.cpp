#include "xqm/state.hpp"

#include <cmath>
#include <sstream>

namespace xqm {

XState maximally_mixed() { return XState{}; }

XState bell_phi_plus() {
  XState s;
  s.d1 = 0.5;
  s.d2 = 0.0;
  s.d3 = 0.0;
  s.d4 = 0.5;
  s.a14 = 0.5;
  s.a23 = 0.0;
  return s;
}

bool is_valid_xstate(const XState& s, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const double tr = s.d1 + s.d2 + s.d3 + s.d4;
  if (std::abs(tr - 1.0) > kTraceTol) return fail("trace " + std::to_string(tr) + " != 1");
  for (double d : {s.d1, s.d2, s.d3, s.d4})
    if (d < -kSchurSlack) return fail("negative population " + std::to_string(d));
  if (s.d1 * s.d4 < std::norm(s.a14) - kSchurSlack) return fail("d1*d4 < |a14|^2");
  if (s.d2 * s.d3 < std::norm(s.a23) - kSchurSlack) return fail("d2*d3 < |a23|^2");
  return true;
}

XState validated(const XState& s) {
  std::string why;
  if (!is_valid_xstate(s, &why)) throw NotPositive("invalid X-state: " + why);
  return s;
}

FanoBloch to_fano_bloch(const XState& s) {
  FanoBloch t;
  t(0, 0) = s.d1 + s.d2 + s.d3 + s.d4;
  t(3, 3) = s.d1 + s.d4 - s.d2 - s.d3;
  t(3, 0) = s.d1 - s.d4 + s.d2 - s.d3;
  t(0, 3) = s.d1 - s.d4 - s.d2 + s.d3;
  t(1, 1) = 2.0 * (s.a14.real() + s.a23.real());
  t(2, 2) = 2.0 * (s.a23.real() - s.a14.real());
  t(1, 2) = 2.0 * (s.a23.imag() - s.a14.imag());
  t(2, 1) = -2.0 * (s.a14.imag() + s.a23.imag());
  return t;
}

namespace {

constexpr bool x_slot(int i, int j) {
  return (i == 0 && j == 0) || (i == 3 && j == 3) || (i == 3 && j == 0) || (i == 0 && j == 3) ||
         (i == 1 && j == 1) || (i == 2 && j == 2) || (i == 1 && j == 2) || (i == 2 && j == 1);
}

}  // namespace

XState from_fano_bloch(const FanoBloch& t) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!x_slot(i, j) && std::abs(t(i, j)) > kXSupportTol) {
        std::ostringstream os;
        os << "correlation entry (" << i << "," << j << ") = " << t(i, j)
           << " breaks the X pattern";
        throw NonXSupport(os.str());
      }
  XState s;
  s.d1 = 0.25 * (t(0, 0) + t(3, 3) + t(3, 0) + t(0, 3));
  s.d2 = 0.25 * (t(0, 0) - t(3, 3) + t(3, 0) - t(0, 3));
  s.d3 = 0.25 * (t(0, 0) - t(3, 3) - t(3, 0) + t(0, 3));
  s.d4 = 0.25 * (t(0, 0) + t(3, 3) - t(3, 0) - t(0, 3));
  s.a14 = cplx(0.25 * (t(1, 1) - t(2, 2)), -0.25 * (t(1, 2) + t(2, 1)));
  s.a23 = cplx(0.25 * (t(1, 1) + t(2, 2)), 0.25 * (t(1, 2) - t(2, 1)));
  return validated(s);
}

BlockCoeffs block_coeffs(const XState& s) {
  BlockCoeffs c;
  c.chi = {s.d1 + s.d4, 2.0 * s.a14.real(), -2.0 * s.a14.imag(), s.d1 - s.d4};
  c.chi_tilde = {s.d2 + s.d3, 2.0 * s.a23.real(), -2.0 * s.a23.imag(), s.d2 - s.d3};
  return c;
}

BlockCoeffs block_coeffs(const FanoBloch& t) {
  BlockCoeffs c;
  c.chi = {0.5 * (t(0, 0) + t(3, 3)), 0.5 * (t(1, 1) - t(2, 2)), 0.5 * (t(1, 2) + t(2, 1)),
           0.5 * (t(3, 0) + t(0, 3))};
  c.chi_tilde = {0.5 * (t(0, 0) - t(3, 3)), 0.5 * (t(1, 1) + t(2, 2)), 0.5 * (t(2, 1) - t(1, 2)),
                 0.5 * (t(3, 0) - t(0, 3))};
  return c;
}

XState state_from_block_coeffs(const BlockCoeffs& c) {
  XState s;
  s.d1 = 0.5 * (c.chi[0] + c.chi[3]);
  s.d4 = 0.5 * (c.chi[0] - c.chi[3]);
  s.a14 = 0.5 * cplx(c.chi[1], -c.chi[2]);
  s.d2 = 0.5 * (c.chi_tilde[0] + c.chi_tilde[3]);
  s.d3 = 0.5 * (c.chi_tilde[0] - c.chi_tilde[3]);
  s.a23 = 0.5 * cplx(c.chi_tilde[1], -c.chi_tilde[2]);
  return s;
}

FanoBloch fano_bloch_from_block_coeffs(const BlockCoeffs& c) {
  FanoBloch t;
  t(0, 0) = c.chi[0] + c.chi_tilde[0];
  t(3, 3) = c.chi[0] - c.chi_tilde[0];
  t(1, 1) = c.chi[1] + c.chi_tilde[1];
  t(2, 2) = c.chi_tilde[1] - c.chi[1];
  t(1, 2) = c.chi[2] - c.chi_tilde[2];
  t(2, 1) = c.chi[2] + c.chi_tilde[2];
  t(3, 0) = c.chi[3] + c.chi_tilde[3];
  t(0, 3) = c.chi[3] - c.chi_tilde[3];
  return t;
}

Mat4 to_matrix(const XState& s) {
  Mat4 m;
  m(0, 0) = s.d1;
  m(1, 1) = s.d2;
  m(2, 2) = s.d3;
  m(3, 3) = s.d4;
  m(0, 3) = s.a14;
  m(3, 0) = std::conj(s.a14);
  m(1, 2) = s.a23;
  m(2, 1) = std::conj(s.a23);
  return m;
}

XState xstate_from_matrix(const Mat4& rho) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on_x = (i == j) || (i + j == 3);
      if (!on_x && std::abs(rho(i, j)) > kXSupportTol)
        throw NonXSupport("matrix entry off the X pattern");
    }
  for (int i = 0; i < 4; ++i)
    if (std::abs(rho(i, i).imag()) > kXSupportTol)
      throw NonXSupport("complex population");
  XState s;
  s.d1 = rho(0, 0).real();
  s.d2 = rho(1, 1).real();
  s.d3 = rho(2, 2).real();
  s.d4 = rho(3, 3).real();
  s.a14 = rho(0, 3);
  s.a23 = rho(1, 2);
  return validated(s);
}

Mat4 block_generator(int a) {
  // Pauli-like action on span{|00>,|11>} = indices {0,3}.
  Mat4 m;
  switch (a) {
    case 0: m(0, 0) = 1.0; m(3, 3) = 1.0; break;
    case 1: m(0, 3) = 1.0; m(3, 0) = 1.0; break;
    case 2: m(3, 0) = cplx(0.0, 1.0); m(0, 3) = cplx(0.0, -1.0); break;
    default: m(0, 0) = 1.0; m(3, 3) = -1.0; break;
  }
  return m;
}

Mat4 block_generator_tilde(int a) {
  // Pauli-like action on span{|01>,|10>} = indices {1,2}.
  Mat4 m;
  switch (a) {
    case 0: m(1, 1) = 1.0; m(2, 2) = 1.0; break;
    case 1: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
    case 2: m(2, 1) = cplx(0.0, 1.0); m(1, 2) = cplx(0.0, -1.0); break;
    default: m(1, 1) = 1.0; m(2, 2) = -1.0; break;
  }
  return m;
}

Mat4 block_expansion(const Coeff4& c, const Coeff4& ct) {
  Mat4 m;
  for (int a = 0; a < 4; ++a) {
    m = m + 0.5 * c[static_cast<std::size_t>(a)] * block_generator(a);
    m = m + 0.5 * ct[static_cast<std::size_t>(a)] * block_generator_tilde(a);
  }
  return m;
}

ParametrizedFamily::ParametrizedFamily(std::function<XState(double)> state, double theta_min,
                                       double theta_max)
    : state_(std::move(state)), lo_(theta_min), hi_(theta_max) {
  if (!(lo_ < hi_)) throw OutOfDomain("family interval is empty");
}

ParametrizedFamily& ParametrizedFamily::with_analytic_derivative(
    std::function<BlockCoeffsDeriv(double)> d) {
  analytic_ = std::move(d);
  return *this;
}

ParametrizedFamily& ParametrizedFamily::with_fd_step(double h) {
  if (!(h > 0.0)) throw OutOfDomain("finite-difference step must be positive");
  h_ = h;
  return *this;
}

ParametrizedFamily& ParametrizedFamily::with_richardson(bool on) {
  richardson_ = on;
  return *this;
}

void ParametrizedFamily::check_interior(double theta, double margin) const {
  if (theta - margin < lo_ - 1e-15 || theta + margin > hi_ + 1e-15) {
    std::ostringstream os;
    os << "theta = " << theta << " (margin " << margin << ") outside [" << lo_ << ", " << hi_
       << "]";
    throw OutOfDomain(os.str());
  }
}

XState ParametrizedFamily::state(double theta) const {
  check_interior(theta, 0.0);
  return state_(theta);
}

BlockCoeffs ParametrizedFamily::coeffs(double theta) const { return block_coeffs(state(theta)); }

Mat4 ParametrizedFamily::matrix(double theta) const { return to_matrix(state(theta)); }

namespace {

Coeff4 axpy(double a, const Coeff4& x, double b, const Coeff4& y) {
  Coeff4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = a * x[i] + b * y[i];
  return r;
}

}  // namespace

BlockCoeffsDeriv ParametrizedFamily::derivative(double theta) const {
  if (analytic_) {
    check_interior(theta, 0.0);
    return analytic_(theta);
  }
  auto central = [&](double h) {
    const BlockCoeffs cp = block_coeffs(state_(theta + h));
    const BlockCoeffs cm = block_coeffs(state_(theta - h));
    BlockCoeffsDeriv d;
    d.dchi = axpy(0.5 / h, cp.chi, -0.5 / h, cm.chi);
    d.dchi_tilde = axpy(0.5 / h, cp.chi_tilde, -0.5 / h, cm.chi_tilde);
    return d;
  };
  check_interior(theta, h_);
  const BlockCoeffsDeriv d1 = central(h_);
  if (!richardson_) return d1;
  const BlockCoeffsDeriv d2 = central(0.5 * h_);
  BlockCoeffsDeriv r;
  r.dchi = axpy(4.0 / 3.0, d2.dchi, -1.0 / 3.0, d1.dchi);
  r.dchi_tilde = axpy(4.0 / 3.0, d2.dchi_tilde, -1.0 / 3.0, d1.dchi_tilde);
  return r;
}

Mat4 ParametrizedFamily::matrix_derivative(double theta) const {
  if (analytic_) return block_expansion(analytic_(theta));
  return matrix_derivative_fd(theta);
}

Mat4 ParametrizedFamily::matrix_derivative_fd(double theta) const {
  auto central = [&](double h) {
    return (1.0 / (2.0 * h)) * (to_matrix(state_(theta + h)) - to_matrix(state_(theta - h)));
  };
  check_interior(theta, h_);
  const Mat4 m1 = central(h_);
  if (!richardson_) return m1;
  const Mat4 m2 = central(0.5 * h_);
  return (4.0 / 3.0) * m2 - (1.0 / 3.0) * m1;
}

ParametrizedFamily linear_family(const XState& a, const XState& b) {
  const XState av = validated(a);
  const XState bv = validated(b);
  auto mix = [av, bv](double theta) {
    XState s;
    const double u = 1.0 - theta;
    s.d1 = u * av.d1 + theta * bv.d1;
    s.d2 = u * av.d2 + theta * bv.d2;
    s.d3 = u * av.d3 + theta * bv.d3;
    s.d4 = u * av.d4 + theta * bv.d4;
    s.a14 = u * av.a14 + theta * bv.a14;
    s.a23 = u * av.a23 + theta * bv.a23;
    return s;
  };
  ParametrizedFamily f(mix, 0.0, 1.0);
  const BlockCoeffs ca = block_coeffs(av);
  const BlockCoeffs cb = block_coeffs(bv);
  BlockCoeffsDeriv d;
  d.dchi = axpy(1.0, cb.chi, -1.0, ca.chi);
  d.dchi_tilde = axpy(1.0, cb.chi_tilde, -1.0, ca.chi_tilde);
  f.with_analytic_derivative([d](double) { return d; });
  return f;
}

BlockCoeffsDeriv family_derivative(const ParametrizedFamily& f, double theta) {
  return f.derivative(theta);
}

}  // namespace xqm
