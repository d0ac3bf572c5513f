#include "xqm/sampling.hpp"

#include <cmath>
#include <numbers>

namespace xqm {

namespace {

cplx random_coherence(std::mt19937_64& rng, double cap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = cap * std::sqrt(unit(rng));
  const double phase = 2.0 * std::numbers::pi * unit(rng);
  return radius * cplx(std::cos(phase), std::sin(phase));
}

}  // namespace

XState random_xstate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Exponential spacings normalized to the simplex.
  std::array<double, 4> d{};
  double sum = 0.0;
  for (double& x : d) {
    x = -std::log(std::max(unit(rng), 1e-300));
    sum += x;
  }
  for (double& x : d) x /= sum;
  XState s;
  s.d1 = d[0];
  s.d2 = d[1];
  s.d3 = d[2];
  s.d4 = d[3];
  s.a14 = random_coherence(rng, std::sqrt(s.d1 * s.d4));
  s.a23 = random_coherence(rng, std::sqrt(s.d2 * s.d3));
  return s;
}

XState random_mixed_xstate(std::mt19937_64& rng, double floor) {
  const XState raw = random_xstate(rng);
  XState s;
  const double u = 1.0 - floor;
  s.d1 = u * raw.d1 + floor * 0.25;
  s.d2 = u * raw.d2 + floor * 0.25;
  s.d3 = u * raw.d3 + floor * 0.25;
  s.d4 = u * raw.d4 + floor * 0.25;
  s.a14 = u * raw.a14;
  s.a23 = u * raw.a23;
  return s;
}

ParametrizedFamily random_mixed_family(std::mt19937_64& rng, double floor) {
  const XState a = random_mixed_xstate(rng, floor);
  const XState b = random_mixed_xstate(rng, floor);
  return linear_family(a, b);
}

double random_interior_theta(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 0.7);
  return u(rng);
}

ParametrizedFamily bell_rotation_family() {
  auto state = [](double theta) {
    XState s;
    s.d1 = 0.5 * (1.0 + std::cos(theta));
    s.d2 = 0.0;
    s.d3 = 0.0;
    s.d4 = 0.5 * (1.0 - std::cos(theta));
    s.a14 = 0.5 * std::sin(theta);
    s.a23 = 0.0;
    return s;
  };
  ParametrizedFamily f(state, 0.05, 1.5);
  f.with_analytic_derivative([](double theta) {
    BlockCoeffsDeriv d{};
    d.dchi = {0.0, std::cos(theta), 0.0, -std::sin(theta)};
    d.dchi_tilde = {0.0, 0.0, 0.0, 0.0};
    return d;
  });
  return f;
}

Mat4 random_hermitian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = u(rng);
    for (int j = i + 1; j < 4; ++j) {
      const cplx v(u(rng), u(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

}  // namespace xqm
