#include "xqm/channels.hpp"

#include <cmath>

#include "xqm/oracle.hpp"

namespace xqm {

Channel make_channel(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfDomain("decoherence probability outside [0,1]");
  return Channel{kind, p, 1.0 - p};
}

const char* channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::phase_damping: return "pdc";
    case ChannelKind::depolarizing: return "dpc";
    case ChannelKind::amplitude_damping: return "adc";
  }
  return "?";
}

KrausSet kraus_set(const Channel& ch) {
  const double p = ch.p;
  KrausSet ks;
  switch (ch.kind) {
    case ChannelKind::phase_damping: {
      ks.push_back(std::sqrt(1.0 - p) * identity2());
      ks.push_back(std::sqrt(p / 4.0) * (identity2() + pauli(3)));
      ks.push_back(std::sqrt(p / 4.0) * (identity2() - pauli(3)));
      break;
    }
    case ChannelKind::depolarizing: {
      ks.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * identity2());
      for (int k = 1; k <= 3; ++k) ks.push_back(std::sqrt(p / 4.0) * pauli(k));
      break;
    }
    case ChannelKind::amplitude_damping: {
      Mat2 k1;
      k1(0, 0) = std::sqrt(ch.s);
      k1(1, 1) = 1.0;
      Mat2 k2;
      k2(1, 0) = std::sqrt(p);  // pumps |0> population into |1>
      ks.push_back(k1);
      ks.push_back(k2);
      break;
    }
  }
  return ks;
}

namespace {

double identity_defect(const Mat2& m) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      d = std::max(d, std::abs(m(i, j) - (i == j ? cplx(1.0) : cplx(0.0))));
  return d;
}

}  // namespace

double kraus_completeness_defect(const KrausSet& ks) {
  Mat2 acc;
  for (const Mat2& k : ks) acc = acc + adjoint(k) * k;
  return identity_defect(acc);
}

double kraus_completeness_defect_flipped(const KrausSet& ks) {
  Mat2 acc;
  for (const Mat2& k : ks) acc = acc + k * adjoint(k);
  return identity_defect(acc);
}

Mat4 apply_channel_kraus(const Channel& ch, const Mat4& rho) {
  if (!is_valid_density_matrix(rho))
    throw InvalidDensityMatrix("channel input is not a density matrix");
  const KrausSet ks = kraus_set(ch);
  Mat4 out;
  for (const Mat2& ki : ks)
    for (const Mat2& kj : ks) {
      const Mat4 op = kron(ki, kj);
      out = out + op * rho * adjoint(op);
    }
  return out;
}

Transfer transfer_matrix(const Channel& ch) {
  const KrausSet ks = kraus_set(ch);
  Transfer w{};
  for (int a = 0; a < 4; ++a) {
    Mat2 heis;  // Phi^dag(sigma_a) = sum K^dag sigma_a K
    for (const Mat2& k : ks) heis = heis + adjoint(k) * pauli(a) * k;
    for (int b = 0; b < 4; ++b)
      w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          0.5 * trace(heis * pauli(b)).real();
  }
  return w;
}

FanoBloch evolve_fano_bloch(const Channel& ch, const FanoBloch& t) {
  const Transfer w = transfer_matrix(ch);
  FanoBloch out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 4; ++b2)
          s += w[static_cast<std::size_t>(a)][static_cast<std::size_t>(a2)] * t(a2, b2) *
               w[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
      out(a, b) = s;
    }
  return out;
}

EvolvedCoeffs evolve_coeff_vectors(const Channel& ch, const Coeff4& c, const Coeff4& ct) {
  const double s = ch.s;
  const double p = ch.p;
  EvolvedCoeffs e;
  switch (ch.kind) {
    case ChannelKind::phase_damping:
      e.lambda = {c[0], s * s * c[1], s * s * c[2], c[3]};
      e.lambda_tilde = {ct[0], s * s * ct[1], s * s * ct[2], ct[3]};
      break;
    case ChannelKind::depolarizing:
      // Index-3 weight scales with s, not s^2: only one qubit carries
      // sigma_3 there. The verification suite audits the alternative.
      e.lambda = {0.5 * ((c[0] + ct[0]) + s * s * (c[0] - ct[0])), s * s * c[1], s * s * c[2],
                  s * c[3]};
      e.lambda_tilde = {0.5 * ((c[0] + ct[0]) - s * s * (c[0] - ct[0])), s * s * ct[1],
                        s * s * ct[2], s * ct[3]};
      break;
    case ChannelKind::amplitude_damping:
      e.lambda = {0.5 * ((1.0 + p * p + s * s) * c[0] - 2.0 * s * p * c[3] +
                         (1.0 + p * p - s * s) * ct[0]),
                  s * c[1], s * c[2], s * c[3] - p * (c[0] + ct[0])};
      e.lambda_tilde = {0.5 * ((1.0 - p * p - s * s) * c[0] + 2.0 * s * p * c[3] +
                               (1.0 - p * p + s * s) * ct[0]),
                        s * ct[1], s * ct[2], s * ct[3]};
      break;
  }
  return e;
}

EvolvedCoeffs evolved_block_coeffs(const Channel& ch, const BlockCoeffs& c) {
  return evolve_coeff_vectors(ch, c.chi, c.chi_tilde);
}

ParametrizedFamily channel_evolved_family(const ParametrizedFamily& f, const Channel& ch) {
  auto evolved_state = [f, ch](double theta) {
    return xstate_from_matrix(apply_channel_kraus(ch, f.matrix(theta)));
  };
  ParametrizedFamily g(evolved_state, f.theta_min(), f.theta_max());
  g.with_fd_step(f.fd_step());
  if (f.has_analytic_derivative()) {
    ParametrizedFamily base = f;
    g.with_analytic_derivative([base, ch](double theta) {
      const BlockCoeffsDeriv d = base.derivative(theta);
      const EvolvedCoeffs e = evolve_coeff_vectors(ch, d.dchi, d.dchi_tilde);
      return BlockCoeffsDeriv{e.lambda, e.lambda_tilde};
    });
  }
  return g;
}

}  // namespace xqm
