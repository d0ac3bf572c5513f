// Quasi-Werner states built on bipartite superposed coherent states:
// normalization constants, the two density-matrix families, the analytic
// concurrence, and the channel-evolved closed forms for quantum Fisher and
// skew information. The closed forms are transcribed exactly as printed,
// each helper coefficient as its own function, and are audited against the
// brute-force oracles; known deviations are tracked by the verification
// registry rather than silently corrected.
#pragma once


#include "xqm/channels.hpp"
#include "xqm/state.hpp"

namespace xqm {

enum class Sign { plus, minus };

const char* sign_name(Sign s);

struct QuasiWernerParams {
  double alpha = 0.5;
  double beta = 0.5;
  double q = 0.5;
  Sign sign = Sign::plus;
};

struct NormalizationPack {
  double chi_a = 0.0, chi_b = 0.0;        // exp(-alpha^2), exp(-beta^2)
  double n_plus = 0.0, n_minus = 0.0;     // superposition normalizations
  double n_plus_a = 0.0, n_minus_a = 0.0; // even/odd basis normalizations
  double n_plus_b = 0.0, n_minus_b = 0.0;
};

NormalizationPack normalizations(const QuasiWernerParams& p);  // throws OutOfDomain

// Density matrix in the orthonormal even/odd product basis (an X-state).
XState density_matrix(const QuasiWernerParams& p);

// The analytic nonvanishing block coefficients and their q-derivative.
BlockCoeffs closed_block_coeffs(const QuasiWernerParams& p);
BlockCoeffsDeriv closed_block_coeffs_dq(const QuasiWernerParams& p);

// Family over the mixing parameter q in [0,1] with analytic derivative.
ParametrizedFamily mixing_family(double alpha, double beta, Sign sign);
ParametrizedFamily mixing_family_evolved(double alpha, double beta, Sign sign,
                                         const Channel& ch);

// Analytic concurrence of the undamped state.
double concurrence_closed(const QuasiWernerParams& p);

// Channel-evolved closed forms (theta = q). Throw SingularBlock when a
// printed denominator vanishes at the requested point.
double qfi_closed(const QuasiWernerParams& p, const Channel& ch);
double skew_closed(const QuasiWernerParams& p, const Channel& ch);
double concurrence_closed(const QuasiWernerParams& p, const Channel& ch);

// Undamped closed-form values through the block-coefficient route.
double qfi_closed_undamped(const QuasiWernerParams& p);
double skew_closed_undamped(const QuasiWernerParams& p);

struct ChannelClosedFormReport {
  double qfi_closed = 0.0, skew_closed = 0.0, concurrence_closed = 0.0;
  double oracle_qfi = 0.0, oracle_skew = 0.0, oracle_concurrence = 0.0;
  double qfi_abs_dev = 0.0, skew_abs_dev = 0.0, concurrence_abs_dev = 0.0;
  double qfi_rel_dev = 0.0, skew_rel_dev = 0.0, concurrence_rel_dev = 0.0;
  bool qfi_closed_defined = true, skew_closed_defined = true;
};

// Evaluates all three closed forms and the matching oracles on the
// Kraus-evolved family at theta = q.
ChannelClosedFormReport channel_closed_forms(const QuasiWernerParams& p, const Channel& ch);

// Spec'd per-channel entry points; they check the channel kind.
ChannelClosedFormReport pdc_closed_forms(const QuasiWernerParams& p, const Channel& ch);
ChannelClosedFormReport dpc_closed_forms(const QuasiWernerParams& p, const Channel& ch);
ChannelClosedFormReport adc_closed_forms(const QuasiWernerParams& p, const Channel& ch);

// Helper coefficients shared by the closed forms (kappa is the population
// asymmetry chi3/q, the coherence weight is chi1/q).
double coherence_weight(const NormalizationPack& n, Sign sign);
double population_asymmetry(const NormalizationPack& n, Sign sign);

}  // namespace xqm
