// Time evolution of mu * u'' = Delta_f u: exact modal propagator (per-mode
// rotation at the Bloch frequencies, zero modes translate freely) and
// velocity-Verlet integration, plus energy/momentum bookkeeping.
#pragma once

#include <vector>

#include "nlchain/chain.hpp"
#include "nlchain/dft.hpp"

namespace nlchain {

struct EnergyBreakdown {
    double kinetic = 0;
    double potential = 0;
    double total = 0;
};

// modal amplitudes u_hat_s = <v(kappa_s), u>; Hermitian-symmetric for real states
struct ModalState {
    std::vector<cdouble> amplitude;
    std::vector<cdouble> velocity;
    double time = 0.0;
};

ModalState to_modal(const DisplacementState& state);
DisplacementState from_modal(const ModalState& modal);

// advances by t = dt*steps in a single analytic step; dt may be negative
// (time reversal); modes with |omega^2| < 1e-12 * omega_max^2 translate freely
DisplacementState evolve_exact(const DisplacementState& state, const CirculantLaplacian& lap,
                               double dt, long steps);

// velocity Verlet with force (Delta_f u); requires 0 < dt < 2/omega_max
// (StabilityError otherwise)
DisplacementState evolve_verlet(const DisplacementState& state, const CirculantLaplacian& lap,
                                double dt, long steps);

// kinetic = (mu/2) sum v^2, potential = -(1/2) u^T (Delta u)
EnergyBreakdown total_energy(const DisplacementState& state, const CirculantLaplacian& lap);

// mu * sum_p v_p (conserved: the force has no zero-mode component)
double total_momentum(const DisplacementState& state, const CirculantLaplacian& lap);

} // namespace nlchain
