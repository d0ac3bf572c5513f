#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "xqm/metrology.hpp"
#include "xqm/oracle.hpp"
#include "xqm/quasi_werner.hpp"
#include "xqm/verify.hpp"

using namespace xqm;
using namespace xqm::test;

TEST_CASE("normalization constants") {
  SUBCASE("frozen values at alpha = beta = 0.5") {
    const NormalizationPack n = normalizations({0.5, 0.5, 0.5, Sign::plus});
    CHECK(n.chi_a == doctest::Approx(0.77880078307140487).epsilon(1e-15));
    CHECK(n.n_plus == doctest::Approx(0.60459018294626852).epsilon(1e-15));
    CHECK(n.n_minus == doctest::Approx(0.88937526018810711).epsilon(1e-15));
    CHECK(n.n_plus_a == doctest::Approx(0.55787961568866027).epsilon(1e-15));
    CHECK(n.n_minus_a == doctest::Approx(1.1272741641980442).epsilon(1e-15));
  }
  SUBCASE("large amplitudes approach the orthogonal limit") {
    const NormalizationPack n = normalizations({5.0, 5.0, 0.5, Sign::plus});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(n.chi_a) < 1e-10);
    CHECK(n.n_plus == doctest::Approx(inv_sqrt2).epsilon(1e-10));
    CHECK(n.n_minus == doctest::Approx(inv_sqrt2).epsilon(1e-10));
    CHECK(n.n_plus_a == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  }
  SUBCASE("symmetry in the amplitudes") {
    const NormalizationPack n = normalizations({0.8, 0.8, 0.2, Sign::minus});
    CHECK(n.n_plus_a == doctest::Approx(n.n_plus_b).epsilon(1e-15));
    CHECK(n.n_minus_a == doctest::Approx(n.n_minus_b).epsilon(1e-15));
    CHECK(n.n_plus <= n.n_minus);
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS((void)normalizations({-1.0, 0.5, 0.5, Sign::plus}), OutOfDomain);
    CHECK_THROWS_AS((void)normalizations({0.5, 0.5, 1.5, Sign::plus}), OutOfDomain);
  }
}

TEST_CASE("density matrices") {
  SUBCASE("q=0 is maximally mixed") {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      const XState s = density_matrix({0.7, 1.2, 0.0, sign});
      CHECK(max_state_diff(s, maximally_mixed()) < 1e-14);
    }
  }
  SUBCASE("unit trace and positivity across the grid") {
    for (Sign sign : {Sign::plus, Sign::minus})
      for (double alpha : {0.3, 0.5, 1.0, 1.5})
        for (double beta : {0.3, 0.5, 1.0, 1.5})
          for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const XState s = density_matrix({alpha, beta, q, sign});
            CHECK(std::abs(s.d1 + s.d2 + s.d3 + s.d4 - 1.0) < 1e-13);
            const EigenSystem es = hermitian_eigensystem(to_matrix(s));
            CHECK(es.values[3] >= -1e-12);
          }
  }
  SUBCASE("pure minus state at equal amplitudes is maximally entangled") {
    const XState s = density_matrix({0.5, 0.5, 1.0, Sign::minus});
    CHECK(concurrence_wootters(to_matrix(s)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("analytic block coefficients") {
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double alpha : {0.3, 0.8})
      for (double beta : {0.5, 1.3})
        for (double q : {0.2, 0.6, 0.9}) {
          const QuasiWernerParams p{alpha, beta, q, sign};
          const BlockCoeffs closed = closed_block_coeffs(p);
          const BlockCoeffs direct = block_coeffs(density_matrix(p));
          CHECK(max_coeff_diff(closed, direct) < 1e-13);
          // The nonvanishing weights sit on a sphere of radius q.
          const Coeff4& loaded = sign == Sign::plus ? closed.chi : closed.chi_tilde;
          CHECK(loaded[1] * loaded[1] + loaded[3] * loaded[3] ==
                doctest::Approx(q * q).epsilon(1e-12));
        }
}

TEST_CASE("undamped concurrence") {
  SUBCASE("vanishes at q=0 and peaks for the symmetric pure minus state") {
    CHECK(concurrence_closed({0.5, 1.0, 0.0, Sign::plus}) == doctest::Approx(0.0));
    CHECK(concurrence_closed({0.5, 0.5, 1.0, Sign::minus}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("frozen cross-check values") {
    CHECK(concurrence_closed({0.5, 0.5, 0.7, Sign::plus}) ==
          doctest::Approx(0.17348201008200679).epsilon(1e-14));
    CHECK(concurrence_closed({0.5, 1.0, 0.4, Sign::plus}) == doctest::Approx(0.0));
    CHECK(concurrence_closed({1.0, 1.5, 0.9, Sign::plus}) ==
          doctest::Approx(0.84032629670059367).epsilon(1e-14));
    CHECK(concurrence_closed({0.5, 0.5, 0.7, Sign::minus}) ==
          doctest::Approx(0.55).epsilon(1e-14));
    CHECK(concurrence_closed({0.5, 1.0, 0.4, Sign::minus}) ==
          doctest::Approx(0.043275981608527945).epsilon(1e-13));
    CHECK(concurrence_closed({1.0, 1.5, 0.9, Sign::minus}) ==
          doctest::Approx(0.84300743052025627).epsilon(1e-14));
  }
  SUBCASE("matches the Wootters oracle on the grid") {
    for (Sign sign : {Sign::plus, Sign::minus})
      for (double alpha : {0.3, 0.5, 1.0, 1.5})
        for (double beta : {0.3, 0.5, 1.0, 1.5})
          for (int i = 0; i <= 10; ++i) {
            const QuasiWernerParams p{alpha, beta, 0.1 * i, sign};
            CHECK(std::abs(concurrence_closed(p) -
                           concurrence_wootters(to_matrix(density_matrix(p)))) < 1e-10);
          }
  }
  SUBCASE("nondecreasing in q") {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      double prev = -1.0;
      for (int i = 0; i <= 50; ++i) {
        const double c = concurrence_closed({0.5, 0.7, 0.02 * i, sign});
        CHECK(c >= prev - 1e-12);
        prev = c;
      }
    }
  }
}

TEST_CASE("channel closed forms reduce to the undamped values at p=0") {
  for (Sign sign : {Sign::plus, Sign::minus})
    for (double q : {0.2, 0.5, 0.8}) {
      const QuasiWernerParams p{0.5, 1.0, q, sign};
      const Channel id = make_channel(ChannelKind::phase_damping, 0.0);
      CHECK(qfi_closed(p, id) == doctest::Approx(qfi_closed_undamped(p)).epsilon(1e-10));
      CHECK(concurrence_closed(p, id) == doctest::Approx(concurrence_closed(p)).epsilon(1e-12));
      const Channel id2 = make_channel(ChannelKind::depolarizing, 0.0);
      CHECK(qfi_closed(p, id2) == doctest::Approx(qfi_closed_undamped(p)).epsilon(1e-10));
      CHECK(concurrence_closed(p, id2) == doctest::Approx(concurrence_closed(p)).epsilon(1e-12));
      const Channel id3 = make_channel(ChannelKind::amplitude_damping, 0.0);
      CHECK(concurrence_closed(p, id3) == doctest::Approx(concurrence_closed(p)).epsilon(1e-12));
    }
}

TEST_CASE("exact closed forms against frozen references") {
  // Phase-damping Fisher and all concurrence expressions reproduce the
  // brute-force values; references from a 60-digit run.
  const QuasiWernerParams pp{0.5, 0.5, 0.6, Sign::plus};
  const QuasiWernerParams pm{0.5, 0.5, 0.6, Sign::minus};
  const Channel pdc = make_channel(ChannelKind::phase_damping, 0.3);
  CHECK(qfi_closed(pp, pdc) == doctest::Approx(2.3360590266536565).epsilon(1e-13));
  CHECK(qfi_closed(pm, pdc) == doctest::Approx(1.6980421414687371).epsilon(1e-13));
  CHECK(concurrence_closed(pm, pdc) == doctest::Approx(0.094).epsilon(1e-13));
  CHECK(concurrence_closed(pp, pdc) == doctest::Approx(0.0));

  const Channel adc = make_channel(ChannelKind::amplitude_damping, 0.3);
  CHECK(concurrence_closed(pm, adc) == doctest::Approx(0.15845841630822834).epsilon(1e-13));
  const Channel dpc = make_channel(ChannelKind::depolarizing, 0.2);
  CHECK(concurrence_closed(QuasiWernerParams{0.5, 1.0, 0.8, Sign::plus}, dpc) ==
        doctest::Approx(0.128730110961754).epsilon(1e-12));
}

TEST_CASE("printed-form transcriptions pinned to an independent evaluation") {
  // Every channel Fisher/skew expression evaluated at a fixture point and
  // compared against a second, independent transcription run at 60-digit
  // precision. This pins the formulas verbatim regardless of whether they
  // match the oracles.
  const QuasiWernerParams sym_p{0.5, 0.5, 0.6, Sign::plus};
  const QuasiWernerParams sym_m{0.5, 0.5, 0.6, Sign::minus};
  const Channel pdc = make_channel(ChannelKind::phase_damping, 0.3);
  CHECK(skew_closed(sym_p, pdc) == doctest::Approx(2.7214017292863979).epsilon(1e-13));
  CHECK(skew_closed(sym_m, pdc) == doctest::Approx(1.5697649483774991).epsilon(1e-13));

  const QuasiWernerParams asym_p{0.5, 1.0, 0.8, Sign::plus};
  const QuasiWernerParams asym_m{0.5, 1.0, 0.8, Sign::minus};
  const Channel dpc = make_channel(ChannelKind::depolarizing, 0.2);
  CHECK(qfi_closed(asym_p, dpc) == doctest::Approx(0.99291513678440292).epsilon(1e-13));
  CHECK(qfi_closed(asym_m, dpc) == doctest::Approx(0.99291513678440296).epsilon(1e-13));
  CHECK(skew_closed(asym_p, dpc) == doctest::Approx(1.6688762313460332).epsilon(1e-13));
  CHECK(skew_closed(asym_m, dpc) == doctest::Approx(1.6434275379005797).epsilon(1e-13));

  const Channel adc3 = make_channel(ChannelKind::amplitude_damping, 0.3);
  const Channel adc4 = make_channel(ChannelKind::amplitude_damping, 0.4);
  CHECK(qfi_closed(sym_m, adc3) == doctest::Approx(0.77791080561320709).epsilon(1e-13));
  CHECK(qfi_closed(QuasiWernerParams{0.5, 1.0, 0.5, Sign::plus}, adc4) ==
        doctest::Approx(-2.8172705388930478).epsilon(1e-12));
  CHECK(skew_closed(sym_m, adc3) == doctest::Approx(0.79442364809418884).epsilon(1e-13));
  CHECK(skew_closed(QuasiWernerParams{0.5, 1.0, 0.5, Sign::plus}, adc4) ==
        doctest::Approx(0.98397537838722926).epsilon(1e-10));
}

TEST_CASE("printed forms that deviate are registered") {
  // Depolarizing Fisher at a point with nonzero population asymmetry:
  // printed value 0.9929... vs oracle 1.2684... (60-digit references).
  const QuasiWernerParams p{0.5, 1.0, 0.8, Sign::plus};
  const Channel dpc = make_channel(ChannelKind::depolarizing, 0.2);
  const double printed = qfi_closed(p, dpc);
  CHECK(printed == doctest::Approx(0.99291513678440292).epsilon(1e-12));
  CHECK(std::abs(printed - 1.2684662530810443) > 0.2);
  CHECK(is_registered_deviation("closed:dpc:qfi:plus"));
  CHECK(is_registered_deviation("closed:adc:skew:minus"));
  CHECK_FALSE(is_registered_deviation("closed:pdc:qfi:plus"));
  CHECK_FALSE(is_registered_deviation("closed:pdc:concurrence:plus"));

  // Amplitude-damping skew, plus family, frozen printed value.
  const double printed_skew =
      skew_closed(QuasiWernerParams{0.5, 1.0, 0.5, Sign::plus},
                  make_channel(ChannelKind::amplitude_damping, 0.4));
  CHECK(printed_skew == doctest::Approx(0.98397537838722926).epsilon(1e-10));
}

TEST_CASE("full depolarization sends the Fisher information to zero") {
  const QuasiWernerParams p{0.5, 0.5, 0.6, Sign::plus};
  const Channel dpc = make_channel(ChannelKind::depolarizing, 1.0);
  CHECK(std::abs(qfi_closed(p, dpc)) < 1e-12);
  ParametrizedFamily f = mixing_family_evolved(0.5, 0.5, Sign::plus, dpc);
  CHECK(std::abs(qfi_oracle(f, 0.6)) < 1e-10);
}

TEST_CASE("closed-form reports populate both routes") {
  const QuasiWernerParams p{0.5, 0.5, 0.6, Sign::plus};
  const Channel pdc = make_channel(ChannelKind::phase_damping, 0.3);
  const ChannelClosedFormReport r = pdc_closed_forms(p, pdc);
  CHECK(r.qfi_closed_defined);
  CHECK(r.oracle_qfi > 0.0);
  CHECK(r.qfi_abs_dev < 1e-7);          // exact form
  CHECK(r.concurrence_abs_dev < 1e-9);  // exact form
  CHECK(r.skew_abs_dev > 1e-3);         // known deviation, oracle adjudicates
  CHECK_THROWS_AS((void)adc_closed_forms(p, pdc), OutOfDomain);
}

TEST_CASE("amplitude damping quantities decay with p") {
  // Oracle route; all three monotone nonincreasing on the sampled comb.
  double prev_f = 1e9, prev_i = 1e9, prev_c = 1e9;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const Channel ch = make_channel(ChannelKind::amplitude_damping, p);
    ParametrizedFamily f = mixing_family_evolved(0.5, 0.5, Sign::plus, ch);
    const double qfi = qfi_oracle(f, 0.6);
    const double skew = skew_oracle(f, 0.6);
    const double conc = concurrence_wootters(f.matrix(0.6));
    CHECK(qfi <= prev_f + 1e-9);
    CHECK(skew <= prev_i + 1e-7);
    CHECK(conc <= prev_c + 1e-12);
    prev_f = qfi;
    prev_i = skew;
    prev_c = conc;
  }
}
