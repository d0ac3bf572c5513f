#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "xqm/channels.hpp"
#include "xqm/metrology.hpp"
#include "xqm/oracle.hpp"
#include "xqm/quasi_werner.hpp"
#include "xqm/sampling.hpp"

using namespace xqm;
using namespace xqm::test;

namespace {

Mat4 reconstruct(const EigenSystem& es) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k)
        acc += es.vectors(i, k) * es.values[static_cast<std::size_t>(k)] *
               std::conj(es.vectors(j, k));
      r(i, j) = acc;
    }
  return r;
}

// Concurrence shortcut for X-shaped matrices, an independent route.
double x_state_concurrence(const XState& s) {
  const double c1 = std::abs(s.a14) - std::sqrt(std::max(s.d2 * s.d3, 0.0));
  const double c2 = std::abs(s.a23) - std::sqrt(std::max(s.d1 * s.d4, 0.0));
  return std::max(0.0, 2.0 * std::max(c1, c2));
}

}  // namespace

TEST_CASE("hermitian eigensystem on random matrices") {
  std::mt19937_64 rng(kSeed + 10);
  for (int k = 0; k < 2000; ++k) {
    const Mat4 m = random_hermitian(rng);
    const EigenSystem es = hermitian_eigensystem(m);
    CHECK(max_abs_diff(reconstruct(es), m) < 1e-11);
    CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, identity4()) < 1e-11);
    CHECK(es.values[0] >= es.values[1]);
    CHECK(es.values[1] >= es.values[2]);
    CHECK(es.values[2] >= es.values[3]);
  }
  CHECK_THROWS_AS((void)hermitian_eigensystem(cplx(0.0, 1.0) * kron(pauli(1), pauli(2))),
                  Error);
}

TEST_CASE("matrix square root") {
  SUBCASE("maximally mixed") {
    const Mat4 s = matrix_sqrt(0.25 * identity4());
    CHECK(max_abs_diff(s, 0.5 * identity4()) < 1e-12);
  }
  SUBCASE("rank-one projector is its own square root") {
    const Mat4 p = to_matrix(bell_phi_plus());
    CHECK(max_abs_diff(matrix_sqrt(p), p) < 1e-11);
  }
  SUBCASE("squares back to the input and matches the coefficient expansion") {
    std::mt19937_64 rng(kSeed + 11);
    for (int k = 0; k < 300; ++k) {
      const XState st = random_mixed_xstate(rng);
      const Mat4 rho = to_matrix(st);
      const Mat4 s = matrix_sqrt(rho);
      CHECK(max_abs_diff(s * s, rho) < 1e-10);

      const SqrtCoeffs tc = sqrt_coeffs(block_coeffs(st));
      Mat4 expansion;
      for (int a = 0; a < 4; ++a) {
        const double w = a == 0 ? tc.block.t0 : tc.block.ti[static_cast<std::size_t>(a - 1)];
        const double wt =
            a == 0 ? tc.block_tilde.t0 : tc.block_tilde.ti[static_cast<std::size_t>(a - 1)];
        expansion = expansion + w * block_generator(a) + wt * block_generator_tilde(a);
      }
      CHECK(max_abs_diff(expansion, s) < 1e-10);
    }
  }
  SUBCASE("rejects indefinite input") {
    Mat4 m = identity4();
    m(3, 3) = -0.5;
    CHECK_THROWS_AS((void)matrix_sqrt(m), NotPSD);
  }
}

TEST_CASE("Wootters concurrence") {
  CHECK(concurrence_wootters(0.25 * identity4()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(concurrence_wootters(to_matrix(bell_phi_plus())) == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("standard Werner family") {
    const ParametrizedFamily f = linear_family(maximally_mixed(), bell_phi_plus());
    for (int i = 0; i <= 20; ++i) {
      const double q = 0.05 * i;
      const double expected = std::max(0.0, (3.0 * q - 1.0) / 2.0);
      CHECK(std::abs(concurrence_wootters(f.matrix(q)) - expected) < 1e-10);
    }
  }
  SUBCASE("agrees with the X-shaped shortcut") {
    std::mt19937_64 rng(kSeed + 12);
    for (int k = 0; k < 400; ++k) {
      const XState st = random_xstate(rng);
      CHECK(std::abs(concurrence_wootters(to_matrix(st)) - x_state_concurrence(st)) < 1e-10);
    }
  }
}

TEST_CASE("spectral Fisher oracle") {
  SUBCASE("constant family") {
    ParametrizedFamily f([](double) { return maximally_mixed(); }, 0.0, 1.0);
    CHECK(std::abs(qfi_oracle(f, 0.5)) < 1e-12);
  }
  SUBCASE("pure rotation family has unit information") {
    // Hand check via 4(<dpsi|dpsi> - |<psi|dpsi>|^2) with
    // psi = cos(theta/2)|00> + sin(theta/2)|11>: both routes give 1.
    const ParametrizedFamily f = bell_rotation_family();
    for (double theta : {0.3, 0.785398163397448279, 1.2}) {
      CHECK(qfi_oracle(f, theta) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(qfi_oracle_fd(f, theta) == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
  SUBCASE("derivative modes agree") {
    std::mt19937_64 rng(kSeed + 13);
    for (int k = 0; k < 100; ++k) {
      const ParametrizedFamily f = random_mixed_family(rng);
      const double theta = random_interior_theta(rng);
      CHECK(std::abs(qfi_oracle(f, theta) - qfi_oracle_fd(f, theta)) < 1e-6);
    }
  }
}

TEST_CASE("oracle values frozen from an independent high-precision run") {
  // References computed with 60-digit arithmetic (spectral formula with the
  // analytic channel-evolved derivative; square-root derivative for the
  // skew; Wootters eigenvalues for the concurrence).
  struct Fixture {
    ChannelKind kind;
    Sign sign;
    double alpha, beta, q, p;
    double qfi, skew, conc;
  };
  const Fixture fixtures[] = {
      {ChannelKind::phase_damping, Sign::plus, 0.5, 0.5, 0.6, 0.3, 2.3360590266536565,
       2.3360590266536565, 0.0},
      {ChannelKind::phase_damping, Sign::minus, 0.5, 0.5, 0.6, 0.3, 1.6980421414687371,
       1.6980421414687371, 0.094},
      {ChannelKind::depolarizing, Sign::plus, 0.5, 1.0, 0.8, 0.2, 1.2684662530810443,
       1.2684662530810443, 0.128730110961754},
      {ChannelKind::amplitude_damping, Sign::minus, 0.5, 0.5, 0.6, 0.3, 1.3548985359343722,
       1.3548985359343722, 0.15845841630822834},
      {ChannelKind::amplitude_damping, Sign::plus, 0.5, 1.0, 0.5, 0.4, 0.61337237958100292,
       0.65648523376185426, 0.0},
  };
  for (const Fixture& fx : fixtures) {
    const Channel ch = make_channel(fx.kind, fx.p);
    const ParametrizedFamily fam = mixing_family_evolved(fx.alpha, fx.beta, fx.sign, ch);
    CHECK(qfi_oracle(fam, fx.q) == doctest::Approx(fx.qfi).epsilon(1e-9));
    CHECK(skew_oracle(fam, fx.q) == doctest::Approx(fx.skew).epsilon(1e-7));
    CHECK(std::abs(concurrence_wootters(fam.matrix(fx.q)) - fx.conc) < 1e-9);
  }
}

TEST_CASE("skew oracle basics") {
  ParametrizedFamily constant([](double) { return maximally_mixed(); }, 0.0, 1.0);
  CHECK(std::abs(skew_oracle(constant, 0.5)) < 1e-10);

  // Pure rotation: skew and Fisher are both recorded; their ratio is two
  // with this normalization.
  const ParametrizedFamily f = bell_rotation_family();
  const double skew = skew_oracle(f, 0.6);
  const double qfi = qfi_oracle(f, 0.6);
  CHECK(skew == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(skew == doctest::Approx(2.0 * qfi).epsilon(1e-6));
}
