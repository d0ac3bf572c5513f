#include "xqm/verify.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "xqm/channels.hpp"
#include "xqm/metrology.hpp"
#include "xqm/oracle.hpp"
#include "xqm/quasi_werner.hpp"
#include "xqm/sampling.hpp"
#include "xqm/state.hpp"

namespace xqm {

namespace {

// Deviations of printed formulas/claims from the brute-force oracles,
// confirmed numerically by this suite. The oracle value is the ground
// truth everywhere; entries here only stop a known mismatch from failing
// the run.
const std::map<std::string, std::string>& registry() {
  static const std::map<std::string, std::string> reg = {
      {"closed:dpc:qfi:plus",
       "printed depolarizing Fisher form tracks an index-3 coefficient scaled by s^2 where the "
       "transfer matrix gives s; deviates from the spectral oracle once the population "
       "asymmetry is nonzero"},
      {"closed:dpc:qfi:minus",
       "printed depolarizing Fisher form tracks an index-3 coefficient scaled by s^2 where the "
       "transfer matrix gives s; deviates from the spectral oracle once the population "
       "asymmetry is nonzero"},
      {"closed:pdc:skew:plus",
       "printed phase-damping skew form disagrees with the matrix-square-root oracle (prefactor "
       "and sign slips in the assembled terms); the block-coefficient route reproduces the "
       "oracle"},
      {"closed:pdc:skew:minus",
       "printed phase-damping skew form disagrees with the matrix-square-root oracle (prefactor "
       "and sign slips in the assembled terms); the block-coefficient route reproduces the "
       "oracle"},
      {"closed:dpc:skew:plus",
       "printed depolarizing skew form disagrees with the matrix-square-root oracle"},
      {"closed:dpc:skew:minus",
       "printed depolarizing skew form disagrees with the matrix-square-root oracle"},
      {"closed:adc:qfi:plus",
       "printed amplitude-damping Fisher form (plus family) disagrees with the spectral oracle"},
      {"closed:adc:qfi:minus",
       "printed amplitude-damping Fisher form (minus family) disagrees with the spectral "
       "oracle"},
      {"closed:adc:skew:plus",
       "printed amplitude-damping skew form (plus family) disagrees with the matrix-square-root "
       "oracle"},
      {"closed:adc:skew:minus",
       "printed amplitude-damping skew form (minus family) disagrees with the matrix-square-root "
       "oracle"},
      {"channels:dpc:printed_coefficients",
       "printed depolarizing coefficient list scales the index-3 weight by s^2 and drops the "
       "tildes; the Kraus and transfer routes agree on s and tilded entries and are adopted"},
      {"kraus:completeness_flipped:adc",
       "the K K^dag completeness variant fails for amplitude damping; the standard K^dag K "
       "condition holds for all three channels and is the one enforced"},
      {"claim:skew_bounded_by_qfi",
       "with this normalization the skew information reaches twice the Fisher information "
       "(equality on pure states, cf. the pure-state forms); the claimed bound holds only for "
       "commuting families"},
      {"pure_form:literal_convention",
       "pure-state forms evaluated literally on the coefficients disagree with the oracles; "
       "evaluating them on the theta-derivatives reproduces the oracles and is the convention "
       "used by the dispatcher"},
      {"correlations:plus_t11_t22_sign",
       "printed correlation list for the plus family carries the coherence entries with "
       "opposite signs relative to direct evaluation of the density matrix; the block "
       "coefficient list is consistent"},
      {"labels:adc_concurrence_families",
       "the second amplitude-damping concurrence expression matches the minus-family oracle, "
       "not the plus family it is labeled with"},
  };
  return reg;
}

struct SuiteBuilder {
  SuiteResult r;

  explicit SuiteBuilder(std::string name, double tol) {
    r.suite = std::move(name);
    r.tolerance = tol;
    r.ok = true;
    r.registered_only = true;
  }

  void check(double deviation) {
    ++r.checks;
    r.max_deviation = std::max(r.max_deviation, deviation);
    if (deviation > r.tolerance) {
      r.ok = false;
      r.registered_only = false;
    }
  }

  // Closed-form-vs-oracle comparison that may be excused by the registry.
  void audit(const std::string& check_id, const std::string& citation, double closed,
             double oracle, double deviation) {
    ++r.checks;
    r.max_deviation = std::max(r.max_deviation, deviation);
    if (!(deviation > r.tolerance)) return;
    r.ok = false;
    CheckRecord rec;
    rec.check_id = check_id;
    rec.location_citation = citation;
    rec.closed_form = closed;
    rec.oracle = oracle;
    rec.deviation = deviation;
    if (is_registered_deviation(check_id)) {
      rec.verdict = "known_deviation";
    } else {
      rec.verdict = "unregistered";
      r.registered_only = false;
    }
    r.records.push_back(std::move(rec));
  }

  void info(const std::string& check_id, const std::string& citation, double closed,
            double oracle) {
    CheckRecord rec;
    rec.check_id = check_id;
    rec.location_citation = citation;
    rec.closed_form = closed;
    rec.oracle = oracle;
    rec.deviation = std::abs(closed - oracle);
    rec.verdict = "info";
    r.records.push_back(std::move(rec));
  }

  void fail(const std::string& note) {
    r.ok = false;
    r.registered_only = false;
    r.note = note;
  }
};

// ---- individual suites ---------------------------------------------------

SuiteResult suite_eigensolver(const VerifyOptions& opt) {
  SuiteBuilder s("oracle:eigensolver_reconstruction", 1e-11);
  std::mt19937_64 rng(opt.seed + 1);
  const int n = opt.quick ? 500 : 10000;
  for (int k = 0; k < n; ++k) {
    const Mat4 m = random_hermitian(rng);
    const EigenSystem es = hermitian_eigensystem(m);
    Mat4 rec;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cplx acc = 0.0;
        for (int l = 0; l < 4; ++l)
          acc += es.vectors(i, l) * es.values[static_cast<std::size_t>(l)] *
                 std::conj(es.vectors(j, l));
        rec(i, j) = acc;
      }
    s.check(max_abs_diff(rec, m));
    // Orthonormality of the eigenvector columns.
    const Mat4 gram = adjoint(es.vectors) * es.vectors;
    s.check(max_abs_diff(gram, identity4()));
  }
  return s.r;
}

SuiteResult suite_state_roundtrip(const VerifyOptions& opt) {
  SuiteBuilder s("state:roundtrip_and_reconstruction", 1e-12);
  std::mt19937_64 rng(opt.seed + 2);
  const int n = opt.quick ? 500 : 10000;
  for (int k = 0; k < n; ++k) {
    const XState a = random_xstate(rng);
    const XState b = from_fano_bloch(to_fano_bloch(a));
    double dev = std::abs(a.d1 - b.d1);
    dev = std::max(dev, std::abs(a.d2 - b.d2));
    dev = std::max(dev, std::abs(a.d3 - b.d3));
    dev = std::max(dev, std::abs(a.d4 - b.d4));
    dev = std::max(dev, std::abs(a.a14 - b.a14));
    dev = std::max(dev, std::abs(a.a23 - b.a23));
    s.check(dev);

    const BlockCoeffs c = block_coeffs(a);
    s.check(std::abs(c.chi[0] + c.chi_tilde[0] - 1.0));
    s.check(max_abs_diff(block_expansion(c), to_matrix(a)));
    // Coefficients through the correlation route must agree with the
    // direct expressions.
    const BlockCoeffs c2 = block_coeffs(to_fano_bloch(a));
    double cdev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      cdev = std::max(cdev, std::abs(c.chi[i] - c2.chi[i]));
      cdev = std::max(cdev, std::abs(c.chi_tilde[i] - c2.chi_tilde[i]));
    }
    s.check(cdev);

    const EigenSystem es = hermitian_eigensystem(to_matrix(a));
    s.check(std::max(0.0, -(es.values[3]) - 1e-10));
  }
  return s.r;
}

SuiteResult suite_family_gradients(const VerifyOptions& opt) {
  SuiteBuilder s("state:family_gradients", 1e-8);
  std::mt19937_64 rng(opt.seed + 3);
  const int n = opt.quick ? 50 : 400;
  auto compare = [&](const ParametrizedFamily& f, double theta) {
    const BlockCoeffsDeriv a = f.derivative(theta);
    ParametrizedFamily fd = f;
    fd.with_analytic_derivative(nullptr);
    fd.with_fd_step(opt.fd_step).with_richardson(true);
    const BlockCoeffsDeriv b = fd.derivative(theta);
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      dev = std::max(dev, std::abs(a.dchi[i] - b.dchi[i]));
      dev = std::max(dev, std::abs(a.dchi_tilde[i] - b.dchi_tilde[i]));
    }
    s.check(dev);
    // Trace conservation: the identity weights move in opposition.
    s.check(std::abs(a.dchi[0] + a.dchi_tilde[0]));
  };
  for (int k = 0; k < n; ++k) compare(random_mixed_family(rng), random_interior_theta(rng));
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : {0.3, 0.5, 1.0})
      for (double q : {0.2, 0.5, 0.8}) compare(mixing_family(alpha, 0.7, sign), q);
  return s.r;
}

SuiteResult suite_sld_residual(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:sld_linear_system_residual", 1e-9);
  std::mt19937_64 rng(opt.seed + 4);
  const int n = opt.quick ? 100 : 1000;
  for (int k = 0; k < n; ++k) {
    const ParametrizedFamily f = random_mixed_family(rng);
    const double theta = random_interior_theta(rng);
    const BlockCoeffs c = f.coeffs(theta);
    const BlockCoeffsDeriv d = f.derivative(theta);
    const SldCoeffs p = sld_coeffs(c, d);
    auto residual = [&](const Coeff4& chi, const Coeff4& dchi, const Coeff4& pc) {
      double dev = std::abs(chi[0] * pc[0] + chi[1] * pc[1] + chi[2] * pc[2] + chi[3] * pc[3] -
                            dchi[0]);
      for (std::size_t i = 1; i < 4; ++i)
        dev = std::max(dev, std::abs(pc[0] * chi[i] + chi[0] * pc[i] - dchi[i]));
      return dev;
    };
    s.check(residual(c.chi, d.dchi, p.p));
    s.check(residual(c.chi_tilde, d.dchi_tilde, p.p_tilde));
  }
  return s.r;
}

double qfi_tolerance_scale(double oracle) { return std::max(1.0, std::abs(oracle)); }

SuiteResult suite_qfi_random(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:qfi_vs_spectral_oracle_random", 1e-6);
  std::mt19937_64 rng(opt.seed + 5);
  const int n = opt.quick ? 100 : 1000;
  for (int k = 0; k < n; ++k) {
    const ParametrizedFamily f = random_mixed_family(rng);
    const double theta = random_interior_theta(rng);
    const double closed = qfi_total(f.coeffs(theta), f.derivative(theta)).qfi_total;
    const double oracle = qfi_oracle(f, theta);
    s.check(std::abs(closed - oracle) / qfi_tolerance_scale(oracle));
  }
  return s.r;
}

SuiteResult suite_qfi_quasi_werner(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:qfi_vs_spectral_oracle_quasi_werner", 1e-6);
  const auto amps = {0.3, 0.5, 1.0, 1.5};
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : amps)
      for (double beta : amps) {
        ParametrizedFamily f = mixing_family(alpha, beta, sign);
        f.with_fd_step(opt.fd_step);
        for (int i = 1; i <= 19; ++i) {
          const double q = 0.05 * i;
          const double closed = qfi_total(f.coeffs(q), f.derivative(q)).qfi_total;
          const double oracle = qfi_oracle(f, q);
          s.check(std::abs(closed - oracle) / qfi_tolerance_scale(oracle));
        }
      }
  return s.r;
}

SuiteResult suite_skew_random(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:skew_vs_sqrt_oracle_random", 1e-6);
  std::mt19937_64 rng(opt.seed + 6);
  const int n = opt.quick ? 100 : 1000;
  for (int k = 0; k < n; ++k) {
    const ParametrizedFamily f = random_mixed_family(rng);
    const double theta = random_interior_theta(rng);
    const double closed = skew_total(f.coeffs(theta), f.derivative(theta)).skew_total;
    const double oracle = skew_oracle(f, theta);
    s.check(std::abs(closed - oracle));
  }
  return s.r;
}

SuiteResult suite_skew_quasi_werner(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:skew_vs_sqrt_oracle_quasi_werner", 1e-6);
  const auto amps = {0.3, 0.5, 1.0, 1.5};
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : amps)
      for (double beta : amps) {
        ParametrizedFamily f = mixing_family(alpha, beta, sign);
        f.with_fd_step(opt.fd_step);
        for (int i = 1; i <= 19; ++i) {
          const double q = 0.05 * i;
          const double closed = skew_total(f.coeffs(q), f.derivative(q)).skew_total;
          const double oracle = skew_oracle(f, q);
          s.check(std::abs(closed - oracle));
        }
      }
  return s.r;
}

SuiteResult suite_sqrt_gradcheck(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:sqrt_coefficient_gradients", 1e-6);
  std::mt19937_64 rng(opt.seed + 7);
  const int n = opt.quick ? 100 : 1000;
  const double h = opt.fd_step;
  for (int k = 0; k < n; ++k) {
    const ParametrizedFamily f = random_mixed_family(rng);
    const double theta = random_interior_theta(rng);
    const BlockCoeffs c = f.coeffs(theta);
    const BlockCoeffsDeriv d = f.derivative(theta);
    const BlockCoeffs cp = f.coeffs(theta + h);
    const BlockCoeffs cm = f.coeffs(theta - h);
    auto compare = [&](const Coeff4& chi, const Coeff4& dchi, const Coeff4& chip,
                       const Coeff4& chim) {
      const SqrtBlockCoeffs analytic = sqrt_block_derivs(chi, dchi);
      const SqrtBlockCoeffs tp = sqrt_block(chip);
      const SqrtBlockCoeffs tm = sqrt_block(chim);
      double dev = std::abs(analytic.t0 - (tp.t0 - tm.t0) / (2.0 * h));
      for (std::size_t i = 0; i < 3; ++i)
        dev = std::max(dev, std::abs(analytic.ti[i] - (tp.ti[i] - tm.ti[i]) / (2.0 * h)));
      return dev;
    };
    s.check(compare(c.chi, d.dchi, cp.chi, cm.chi));
    s.check(compare(c.chi_tilde, d.dchi_tilde, cp.chi_tilde, cm.chi_tilde));
  }
  return s.r;
}

SuiteResult suite_oracle_modes(const VerifyOptions& opt) {
  SuiteBuilder s("oracle:derivative_mode_agreement", 1e-6);
  std::mt19937_64 rng(opt.seed + 8);
  const int n = opt.quick ? 50 : 300;
  for (int k = 0; k < n; ++k) {
    const ParametrizedFamily f = random_mixed_family(rng);
    const double theta = random_interior_theta(rng);
    s.check(std::abs(qfi_oracle(f, theta) - qfi_oracle_fd(f, theta)));
  }
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const ParametrizedFamily f = mixing_family(0.5, 1.0, sign);
    for (double q : {0.2, 0.5, 0.8}) s.check(std::abs(qfi_oracle(f, q) - qfi_oracle_fd(f, q)));
  }
  return s.r;
}

SuiteResult suite_kraus_completeness(const VerifyOptions&) {
  SuiteBuilder s("channels:kraus_completeness", 1e-12);
  for (ChannelKind kind :
       {ChannelKind::phase_damping, ChannelKind::depolarizing, ChannelKind::amplitude_damping})
    for (double p : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      const KrausSet ks = kraus_set(make_channel(kind, p));
      s.check(kraus_completeness_defect(ks));
      const double flipped = kraus_completeness_defect_flipped(ks);
      if (flipped > 1e-12)
        s.info("kraus:completeness_flipped:adc",
               std::string("flipped completeness variant, ") + channel_name(kind) +
                   " channel, p=" + std::to_string(p),
               flipped, 0.0);
    }
  return s.r;
}

SuiteResult suite_commuting_diagram(const VerifyOptions& opt) {
  SuiteBuilder s("channels:kraus_vs_transfer_diagram", 1e-12);
  std::mt19937_64 rng(opt.seed + 9);
  const int n = opt.quick ? 100 : 1000;
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (ChannelKind kind :
       {ChannelKind::phase_damping, ChannelKind::depolarizing, ChannelKind::amplitude_damping})
    for (int k = 0; k < n; ++k) {
      const XState st = random_xstate(rng);
      const Channel ch = make_channel(kind, up(rng));
      const FanoBloch via_kraus = to_fano_bloch(xstate_from_matrix(
          apply_channel_kraus(ch, to_matrix(st))));
      const FanoBloch via_transfer = evolve_fano_bloch(ch, to_fano_bloch(st));
      double dev = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(via_kraus(i, j) - via_transfer(i, j)));
      s.check(dev);

      // Coefficient map consistency.
      const EvolvedCoeffs e = evolved_block_coeffs(ch, block_coeffs(st));
      const BlockCoeffs via_t = block_coeffs(via_transfer);
      double cdev = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        cdev = std::max(cdev, std::abs(e.lambda[i] - via_t.chi[i]));
        cdev = std::max(cdev, std::abs(e.lambda_tilde[i] - via_t.chi_tilde[i]));
      }
      s.check(cdev);
      s.check(std::abs(e.lambda[0] + e.lambda_tilde[0] - 1.0));
    }
  return s.r;
}

SuiteResult suite_channel_patterns(const VerifyOptions& opt) {
  SuiteBuilder s("channels:printed_entry_patterns", 1e-12);
  std::mt19937_64 rng(opt.seed + 10);
  const int n = opt.quick ? 40 : 200;
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    const XState st = random_xstate(rng);
    const FanoBloch t = to_fano_bloch(st);
    const double p = up(rng);
    const double sv = 1.0 - p;
    {
      const FanoBloch e = evolve_fano_bloch(make_channel(ChannelKind::phase_damping, p), t);
      s.check(std::abs(e(0, 0) - t(0, 0)));
      s.check(std::abs(e(0, 3) - t(0, 3)));
      s.check(std::abs(e(3, 0) - t(3, 0)));
      s.check(std::abs(e(3, 3) - t(3, 3)));
      for (int i : {1, 2})
        for (int j : {1, 2}) s.check(std::abs(e(i, j) - sv * sv * t(i, j)));
    }
    {
      const FanoBloch e = evolve_fano_bloch(make_channel(ChannelKind::depolarizing, p), t);
      s.check(std::abs(e(0, 0) - t(0, 0)));
      s.check(std::abs(e(0, 3) - sv * t(0, 3)));
      s.check(std::abs(e(3, 0) - sv * t(3, 0)));
      s.check(std::abs(e(3, 3) - sv * sv * t(3, 3)));
      for (int i : {1, 2})
        for (int j : {1, 2}) s.check(std::abs(e(i, j) - sv * sv * t(i, j)));
    }
    {
      const FanoBloch e = evolve_fano_bloch(make_channel(ChannelKind::amplitude_damping, p), t);
      s.check(std::abs(e(0, 0) - t(0, 0)));
      s.check(std::abs(e(0, 3) - (sv * t(0, 3) - p * t(0, 0))));
      s.check(std::abs(e(3, 0) - (sv * t(3, 0) - p * t(0, 0))));
      s.check(std::abs(e(3, 3) - (p * p * t(0, 0) - sv * p * (t(3, 0) + t(0, 3)) +
                                  sv * sv * t(3, 3))));
      for (int i : {1, 2})
        for (int j : {1, 2}) s.check(std::abs(e(i, j) - sv * t(i, j)));
    }
  }
  return s.r;
}

SuiteResult suite_semigroup(const VerifyOptions& opt) {
  SuiteBuilder s("channels:semigroup_composition", 1e-12);
  std::mt19937_64 rng(opt.seed + 11);
  const int n = opt.quick ? 40 : 200;
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (ChannelKind kind : {ChannelKind::phase_damping, ChannelKind::depolarizing})
    for (int k = 0; k < n; ++k) {
      const XState st = random_xstate(rng);
      const double p1 = up(rng), p2 = up(rng);
      const double s3 = (1.0 - p1) * (1.0 - p2);
      const FanoBloch two_steps = evolve_fano_bloch(
          make_channel(kind, p2), evolve_fano_bloch(make_channel(kind, p1), to_fano_bloch(st)));
      const FanoBloch one_step =
          evolve_fano_bloch(make_channel(kind, 1.0 - s3), to_fano_bloch(st));
      for (int i : {1, 2})
        for (int j : {1, 2}) s.check(std::abs(two_steps(i, j) - one_step(i, j)));
      s.check(std::abs(two_steps(3, 3) - one_step(3, 3)));
    }
  return s.r;
}

SuiteResult suite_cp_spotcheck(const VerifyOptions& opt) {
  SuiteBuilder s("channels:complete_positivity_spotcheck", 1e-10);
  std::mt19937_64 rng(opt.seed + 12);
  const int n = opt.quick ? 60 : 300;
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (ChannelKind kind :
       {ChannelKind::phase_damping, ChannelKind::depolarizing, ChannelKind::amplitude_damping})
    for (int k = 0; k < n; ++k) {
      const Mat4 evolved =
          apply_channel_kraus(make_channel(kind, up(rng)), to_matrix(random_xstate(rng)));
      const EigenSystem es = hermitian_eigensystem(evolved);
      s.check(std::max(0.0, -es.values[3]));
      s.check(std::abs(trace(evolved).real() - 1.0));
    }
  return s.r;
}

SuiteResult suite_dpc_coefficient_audit(const VerifyOptions& opt) {
  SuiteBuilder s("channels:depolarizing_coefficient_audit", 1e-12);
  std::mt19937_64 rng(opt.seed + 13);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  const int n = opt.quick ? 20 : 100;
  for (int k = 0; k < n; ++k) {
    const XState st = random_xstate(rng);
    const BlockCoeffs c = block_coeffs(st);
    const Channel ch = make_channel(ChannelKind::depolarizing, up(rng));
    const EvolvedCoeffs kraus_route = evolved_block_coeffs(ch, c);
    // Printed variant: index-3 weight scaled by s^2, tilde row built from
    // the untilded coefficients.
    const double s2 = ch.s * ch.s;
    const Coeff4 printed_lambda = {0.5 * ((c.chi[0] + c.chi_tilde[0]) + s2 * (c.chi[0] - c.chi_tilde[0])),
                                   s2 * c.chi[1], s2 * c.chi[2], s2 * c.chi[3]};
    const Coeff4 printed_tilde = {0.5 * ((c.chi[0] + c.chi_tilde[0]) - s2 * (c.chi[0] - c.chi_tilde[0])),
                                  s2 * c.chi[1], s2 * c.chi[2], s2 * c.chi[3]};
    const BlockCoeffs truth = block_coeffs(xstate_from_matrix(apply_channel_kraus(ch, to_matrix(st))));
    double dev_impl = 0.0, dev_printed = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      dev_impl = std::max(dev_impl, std::abs(kraus_route.lambda[i] - truth.chi[i]));
      dev_impl = std::max(dev_impl, std::abs(kraus_route.lambda_tilde[i] - truth.chi_tilde[i]));
      dev_printed = std::max(dev_printed, std::abs(printed_lambda[i] - truth.chi[i]));
      dev_printed = std::max(dev_printed, std::abs(printed_tilde[i] - truth.chi_tilde[i]));
    }
    s.check(dev_impl);
    if (dev_printed > 1e-12 && k < 3)
      s.info("channels:dpc:printed_coefficients",
             "printed depolarizing coefficient list vs Kraus route, p=" + std::to_string(ch.p),
             dev_printed, 0.0);
  }
  return s.r;
}

SuiteResult suite_correlation_list_audit(const VerifyOptions&) {
  SuiteBuilder s("quasi_werner:correlation_list_audit", 1e-12);
  // Direct evaluation vs the printed nonvanishing correlation entries.
  for (double alpha : {0.3, 0.5, 1.0})
    for (double q : {0.3, 0.7}) {
      const QuasiWernerParams plus{alpha, 0.5, q, Sign::plus};
      const QuasiWernerParams minus{alpha, 0.5, q, Sign::minus};
      const NormalizationPack n = normalizations(plus);
      const FanoBloch tp = to_fano_bloch(density_matrix(plus));
      const FanoBloch tm = to_fano_bloch(density_matrix(minus));
      const double np2 = n.n_plus * n.n_plus;
      const double nm2 = n.n_minus * n.n_minus;
      const double w = n.n_plus_a * n.n_minus_a * n.n_plus_b * n.n_minus_b;
      // Minus family: printed entries match direct evaluation.
      s.check(std::abs(tm(1, 1) - q * nm2 / (2.0 * w)));
      s.check(std::abs(tm(3, 3) - (-q)));
      // Plus family: the printed coherence entries have swapped signs;
      // recorded, while the direct values are asserted.
      s.check(std::abs(tp(1, 1) - q * np2 / (2.0 * w)));
      s.check(std::abs(tp(2, 2) - (-q * np2 / (2.0 * w))));
      s.info("correlations:plus_t11_t22_sign",
             "printed plus-family correlation entries (1,1)/(2,2) vs direct evaluation",
             -q * np2 / (2.0 * w), tp(1, 1));
    }
  return s.r;
}

SuiteResult suite_concurrence(const VerifyOptions& opt) {
  SuiteBuilder s("quasi_werner:concurrence_vs_wootters", 1e-10);
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : {0.3, 0.5, 1.0, 1.5})
      for (double beta : {0.3, 0.5, 1.0, 1.5})
        for (int i = 0; i <= 10; ++i) {
          const QuasiWernerParams p{alpha, beta, 0.1 * i, sign};
          const double closed = concurrence_closed(p);
          const double oracle = concurrence_wootters(to_matrix(density_matrix(p)));
          s.check(std::abs(closed - oracle));
        }
  // Standard Werner family built on the Bell state.
  for (int i = 0; i <= 20; ++i) {
    const double q = 0.05 * i;
    const ParametrizedFamily f = linear_family(maximally_mixed(), bell_phi_plus());
    const double oracle = concurrence_wootters(f.matrix(q));
    const double expected = std::max(0.0, (3.0 * q - 1.0) / 2.0);
    s.check(std::abs(oracle - expected));
  }
  (void)opt;
  return s.r;
}

SuiteResult suite_pure_convention(const VerifyOptions& opt) {
  SuiteBuilder s("metrology:pure_state_convention_study", 1e-9);
  const ParametrizedFamily f = bell_rotation_family();
  for (double theta : {0.3, 0.785398163397448279, 1.1}) {
    const BlockCoeffs c = f.coeffs(theta);
    const BlockCoeffsDeriv d = f.derivative(theta);
    const double qfi_deriv = qfi_total(c, d).qfi_total;
    const double qfi_literal = qfi_block_pure(c.chi);
    const double qfi_orc = qfi_oracle(f, theta);
    s.check(std::abs(qfi_deriv - qfi_orc));
    s.info("pure_form:literal_convention",
           "pure-state Fisher form, literal coefficients vs oracle", qfi_literal, qfi_orc);

    const double skew_deriv = skew_total(c, d).skew_total;
    const double skew_literal = skew_block_pure(c.chi);
    const double skew_orc = skew_oracle_matrix([&](double th) { return f.matrix(th); }, theta,
                                               opt.fd_step);
    s.check(std::abs(skew_deriv - skew_orc));
    s.info("pure_form:literal_convention",
           "pure-state skew form, literal coefficients vs oracle", skew_literal, skew_orc);
  }
  return s.r;
}

SuiteResult suite_closed_forms(const VerifyOptions& opt, ChannelKind kind, Sign sign) {
  const std::string name = std::string("quasi_werner:closed_forms:") + channel_name(kind) + ":" +
                           sign_name(sign);
  SuiteBuilder s(name, 1e-6);
  const std::array<std::pair<double, double>, 4> amps{
      {{0.5, 0.3}, {0.5, 0.5}, {0.5, 1.0}, {0.5, 1.5}}};
  const std::vector<double> qs = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<double> ps = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::string base = std::string("closed:") + channel_name(kind) + ":";
  for (const auto& [alpha, beta] : amps)
    for (double q : qs)
      for (double p : ps) {
        const QuasiWernerParams params{alpha, beta, q, sign};
        const Channel ch = make_channel(kind, p);
        ChannelClosedFormReport rep = channel_closed_forms(params, ch);
        if (opt.inject_perturbation && kind == ChannelKind::phase_damping) {
          rep.qfi_closed += 1e-3;
          rep.qfi_abs_dev += 1e-3;
        }
        std::ostringstream loc;
        loc << "alpha=" << alpha << " beta=" << beta << " q=" << q << " p=" << p;
        const std::string where = std::string(channel_name(kind)) + " " + sign_name(sign) +
                                  " family, " + loc.str();
        if (rep.qfi_closed_defined)
          s.audit(base + "qfi:" + sign_name(sign),
                  "closed-form Fisher information, " + where, rep.qfi_closed, rep.oracle_qfi,
                  rep.qfi_abs_dev);
        else
          s.info(base + "qfi:" + sign_name(sign),
                 "closed-form Fisher information undefined at " + where, 0.0, rep.oracle_qfi);
        if (rep.skew_closed_defined)
          s.audit(base + "skew:" + sign_name(sign), "closed-form skew information, " + where,
                  rep.skew_closed, rep.oracle_skew, rep.skew_abs_dev);
        else
          s.info(base + "skew:" + sign_name(sign),
                 "closed-form skew information undefined at " + where, 0.0, rep.oracle_skew);
        s.audit(base + "concurrence:" + sign_name(sign), "closed-form concurrence, " + where,
                rep.concurrence_closed, rep.oracle_concurrence, rep.concurrence_abs_dev);
      }
  return s.r;
}

SuiteResult suite_bound(const VerifyOptions& opt) {
  SuiteBuilder s("claims:skew_bounded_by_qfi", 1e-6);
  std::mt19937_64 rng(opt.seed + 14);
  const int n = opt.quick ? 60 : 400;
  auto check_family = [&](const ParametrizedFamily& f, double theta, const std::string& what) {
    const BlockCoeffs c = f.coeffs(theta);
    const BlockCoeffsDeriv d = f.derivative(theta);
    double qfi = 0.0, skew = 0.0;
    try {
      qfi = qfi_total(c, d).qfi_total;
      skew = skew_total(c, d).skew_total;
    } catch (const Error&) {
      return;  // singular points are oracle-only elsewhere
    }
    const double excess = skew - qfi;
    s.audit("claim:skew_bounded_by_qfi", "skew vs Fisher bound, " + what, skew, qfi,
            std::max(0.0, excess));
    // The factor-two bound implied by the pure-state forms.
    s.check(std::max(0.0, skew - 2.0 * qfi));
  };
  for (int k = 0; k < n; ++k) {
    std::ostringstream what;
    what << "random mixed family #" << k;
    check_family(random_mixed_family(rng), random_interior_theta(rng), what.str());
  }
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : {0.3, 0.5, 1.0, 1.5})
      for (int i = 1; i <= 9; ++i) {
        std::ostringstream what;
        what << "quasi-Werner " << sign_name(sign) << " alpha=" << alpha << " q=" << 0.1 * i;
        check_family(mixing_family(alpha, 0.5, sign), 0.1 * i, what.str());
      }
  return s.r;
}

SuiteResult suite_cramer_rao(const VerifyOptions&) {
  SuiteBuilder s("metrology:cramer_rao_bound_sanity", 0.0);
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : {0.3, 0.5, 1.0})
      for (int i = 1; i <= 9; ++i) {
        const double q = 0.1 * i;
        const ParametrizedFamily f = mixing_family(alpha, 0.8, sign);
        const double qfi = qfi_total(f.coeffs(q), f.derivative(q)).qfi_total;
        const bool ok = qfi > 0.0 && std::isfinite(1.0 / qfi) && 1.0 / qfi > 0.0;
        s.check(ok ? 0.0 : 1.0);
      }
  return s.r;
}

}  // namespace

bool is_registered_deviation(const std::string& check_id) {
  return registry().count(check_id) > 0;
}

std::string registered_deviation_note(const std::string& check_id) {
  auto it = registry().find(check_id);
  return it == registry().end() ? std::string() : it->second;
}

VerifyReport run_verify(const VerifyOptions& opt) {
  VerifyReport rep;
  rep.suites.push_back(suite_eigensolver(opt));
  rep.suites.push_back(suite_state_roundtrip(opt));
  rep.suites.push_back(suite_family_gradients(opt));
  rep.suites.push_back(suite_sld_residual(opt));
  rep.suites.push_back(suite_qfi_random(opt));
  rep.suites.push_back(suite_qfi_quasi_werner(opt));
  rep.suites.push_back(suite_skew_random(opt));
  rep.suites.push_back(suite_skew_quasi_werner(opt));
  rep.suites.push_back(suite_sqrt_gradcheck(opt));
  rep.suites.push_back(suite_oracle_modes(opt));
  rep.suites.push_back(suite_kraus_completeness(opt));
  rep.suites.push_back(suite_commuting_diagram(opt));
  rep.suites.push_back(suite_channel_patterns(opt));
  rep.suites.push_back(suite_semigroup(opt));
  rep.suites.push_back(suite_cp_spotcheck(opt));
  rep.suites.push_back(suite_dpc_coefficient_audit(opt));
  rep.suites.push_back(suite_correlation_list_audit(opt));
  rep.suites.push_back(suite_concurrence(opt));
  rep.suites.push_back(suite_pure_convention(opt));
  for (ChannelKind kind :
       {ChannelKind::phase_damping, ChannelKind::depolarizing, ChannelKind::amplitude_damping})
    for (Sign sign : {Sign::plus, Sign::minus})
      rep.suites.push_back(suite_closed_forms(opt, kind, sign));
  rep.suites.push_back(suite_bound(opt));
  rep.suites.push_back(suite_cramer_rao(opt));

  rep.clean = true;
  rep.accepted = true;
  for (const SuiteResult& s : rep.suites) {
    rep.clean = rep.clean && s.ok;
    rep.accepted = rep.accepted && (s.ok || s.registered_only);
  }
  return rep;
}

std::string report_to_json_lines(const VerifyReport& report) {
  std::ostringstream out;
  for (const SuiteResult& s : report.suites) {
    nlohmann::json j;
    j["type"] = "suite";
    j["suite"] = s.suite;
    j["tolerance"] = s.tolerance;
    j["max_deviation"] = s.max_deviation;
    j["checks"] = s.checks;
    j["pass"] = s.ok;
    j["registered_only"] = s.registered_only;
    if (!s.note.empty()) j["note"] = s.note;
    out << j.dump() << "\n";
    for (const CheckRecord& r : s.records) {
      nlohmann::json d;
      d["type"] = "discrepancy";
      d["check_id"] = r.check_id;
      d["location_citation"] = r.location_citation;
      d["closed_form"] = r.closed_form;
      d["oracle"] = r.oracle;
      d["deviation"] = r.deviation;
      d["verdict"] = r.verdict;
      const std::string note = registered_deviation_note(r.check_id);
      if (!note.empty()) d["note"] = note;
      out << d.dump() << "\n";
    }
  }
  nlohmann::json summary;
  summary["type"] = "summary";
  summary["clean"] = report.clean;
  summary["accepted"] = report.accepted;
  out << summary.dump() << "\n";
  return out.str();
}

std::string discrepancies_to_json_lines(const VerifyReport& report) {
  std::ostringstream out;
  for (const SuiteResult& s : report.suites)
    for (const CheckRecord& r : s.records) {
      nlohmann::json d;
      d["check_id"] = r.check_id;
      d["location_citation"] = r.location_citation;
      d["closed_form"] = r.closed_form;
      d["oracle"] = r.oracle;
      d["deviation"] = r.deviation;
      d["verdict"] = r.verdict;
      const std::string note = registered_deviation_note(r.check_id);
      if (!note.empty()) d["note"] = note;
      out << d.dump() << "\n";
    }
  return out.str();
}

}  // namespace xqm
