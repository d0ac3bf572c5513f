// Deterministic random generators for states, blocks and families.
#pragma once

#include <random>

#include "xqm/state.hpp"

namespace xqm {

// Uniform populations on the simplex, coherences uniform in the admissible
// Schur disc; the result always passes validation.
XState random_xstate(std::mt19937_64& rng);

// Same, but blended with the maximally mixed state so that every eigenvalue
// is at least floor/4 (strictly mixed blocks).
XState random_mixed_xstate(std::mt19937_64& rng, double floor = 0.2);

// Linear path between two strictly mixed states, analytic derivative.
ParametrizedFamily random_mixed_family(std::mt19937_64& rng, double floor = 0.2);

// Interior evaluation point theta ~ U[0.3, 0.7].
double random_interior_theta(std::mt19937_64& rng);

Mat4 random_hermitian(std::mt19937_64& rng);

// Pure family cos(theta/2)|00> + sin(theta/2)|11>, theta in [0.05, 1.5],
// with analytic derivative. Unit Fisher information everywhere.
ParametrizedFamily bell_rotation_family();

}  // namespace xqm
