// Shared helpers for the test suites.
#pragma once

#include <random>

#include "xqm/linalg.hpp"
#include "xqm/state.hpp"

namespace xqm::test {

inline constexpr unsigned kSeed = 0xC0FFEEu;

// Correlation entry by explicit trace against the Pauli tensor basis;
// independent of the closed-form map.
inline double correlation_by_trace(const Mat4& rho, int a, int b) {
  return trace(rho * kron(pauli(a), pauli(b))).real();
}

inline double max_entry_diff(const FanoBloch& x, const FanoBloch& y) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
  return m;
}

inline double max_coeff_diff(const BlockCoeffs& x, const BlockCoeffs& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    m = std::max(m, std::abs(x.chi[i] - y.chi[i]));
    m = std::max(m, std::abs(x.chi_tilde[i] - y.chi_tilde[i]));
  }
  return m;
}

inline double max_state_diff(const XState& x, const XState& y) {
  double m = std::abs(x.d1 - y.d1);
  m = std::max(m, std::abs(x.d2 - y.d2));
  m = std::max(m, std::abs(x.d3 - y.d3));
  m = std::max(m, std::abs(x.d4 - y.d4));
  m = std::max(m, std::abs(x.a14 - y.a14));
  m = std::max(m, std::abs(x.a23 - y.a23));
  return m;
}

}  // namespace xqm::test
