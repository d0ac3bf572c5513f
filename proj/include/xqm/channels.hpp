// Markovian single-qubit decoherence channels applied independently to both
// qubits: Kraus maps on 4x4 density matrices, the single-qubit transfer
// matrix W acting on the correlation matrix as W T W^t, and the induced
// linear map on block coefficients.
#pragma once

#include <vector>

#include "xqm/errors.hpp"
#include "xqm/linalg.hpp"
#include "xqm/state.hpp"

namespace xqm {

enum class ChannelKind { phase_damping, depolarizing, amplitude_damping };

struct Channel {
  ChannelKind kind = ChannelKind::phase_damping;
  double p = 0.0;  // decoherence probability
  double s = 1.0;  // survival factor, s = 1 - p
};

Channel make_channel(ChannelKind kind, double p);  // throws OutOfDomain for p outside [0,1]

const char* channel_name(ChannelKind kind);

using KrausSet = std::vector<Mat2>;

KrausSet kraus_set(const Channel& ch);

// max |sum K^dag K - 1| and max |sum K K^dag - 1|; the first is the
// trace-preservation condition and holds for all three sets, the second
// fails for amplitude damping.
double kraus_completeness_defect(const KrausSet& ks);
double kraus_completeness_defect_flipped(const KrausSet& ks);

// Two-qubit action sum_{ij} (K_i x K_j) rho (K_i x K_j)^dag.
// Throws InvalidDensityMatrix unless rho is Hermitian, unit-trace and PSD.
Mat4 apply_channel_kraus(const Channel& ch, const Mat4& rho);

// Single-qubit transfer matrix W_ab = Tr(Phi^dag(sigma_a) sigma_b)/2,
// computed from the Kraus set.
using Transfer = std::array<std::array<double, 4>, 4>;
Transfer transfer_matrix(const Channel& ch);

FanoBloch evolve_fano_bloch(const Channel& ch, const FanoBloch& t);

struct EvolvedCoeffs {
  Coeff4 lambda{};
  Coeff4 lambda_tilde{};
};

// Per-channel closed-form coefficient map (consistent with the transfer
// route and the Kraus route; see the verification suite for the audit of
// the printed depolarizing variant).
EvolvedCoeffs evolved_block_coeffs(const Channel& ch, const BlockCoeffs& c);

// The same linear map applied to an arbitrary coefficient pair; because the
// channel action is linear this also evolves derivative vectors.
EvolvedCoeffs evolve_coeff_vectors(const Channel& ch, const Coeff4& c, const Coeff4& ct);

inline BlockCoeffs as_block_coeffs(const EvolvedCoeffs& e) { return BlockCoeffs{e.lambda, e.lambda_tilde}; }

// Kraus-evolved family: states via the Kraus route, derivatives (when the
// base family has an analytic supplier) through the coefficient map.
ParametrizedFamily channel_evolved_family(const ParametrizedFamily& f, const Channel& ch);

}  // namespace xqm
