#include "nlchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlchain {

namespace {

constexpr double kZeroModeRel = 1e-12; // |omega^2| below this times omega_max^2 is a free mode

void check_state(const DisplacementState& state, const CirculantLaplacian& lap)
{
    const auto n = static_cast<size_t>(lap.config().n);
    if (state.u.size() != n || state.v.size() != n)
        throw std::invalid_argument("state length does not match the chain size");
}

// mode frequencies omega_s^2 = -eigenvalue_s / mu, clamped at the zero-mode threshold
std::vector<double> mode_omega_sq(const CirculantLaplacian& lap)
{
    const auto& eig = lap.eigenvalues();
    const double mu = lap.config().mass;
    double max_sq = 0.0;
    for (double e : eig)
        max_sq = std::max(max_sq, -e / mu);
    std::vector<double> w2(eig.size());
    for (size_t s = 0; s < eig.size(); ++s) {
        const double val = -eig[s] / mu;
        w2[s] = (std::abs(val) < kZeroModeRel * max_sq) ? 0.0 : std::max(val, 0.0);
    }
    return w2;
}

} // namespace

ModalState to_modal(const DisplacementState& state)
{
    const double n = static_cast<double>(state.u.size());
    if (state.u.size() != state.v.size())
        throw std::invalid_argument("displacement/velocity lengths differ");
    const double norm = 1.0 / std::sqrt(n);
    ModalState modal;
    modal.amplitude = dft_forward(state.u);
    modal.velocity = dft_forward(state.v);
    for (auto& c : modal.amplitude)
        c *= norm;
    for (auto& c : modal.velocity)
        c *= norm;
    modal.time = state.time;
    return modal;
}

DisplacementState from_modal(const ModalState& modal)
{
    const double n = static_cast<double>(modal.amplitude.size());
    if (modal.amplitude.size() != modal.velocity.size())
        throw std::invalid_argument("modal amplitude/velocity lengths differ");
    const double norm = std::sqrt(n);
    auto scale_back = [&](const std::vector<cdouble>& x) {
        auto back = dft_inverse(x);
        std::vector<double> out(back.size());
        for (size_t p = 0; p < back.size(); ++p)
            out[p] = back[p].real() * norm; // imaginary residual is round-off
        return out;
    };
    DisplacementState state;
    state.u = scale_back(modal.amplitude);
    state.v = scale_back(modal.velocity);
    state.time = modal.time;
    return state;
}

DisplacementState evolve_exact(const DisplacementState& state, const CirculantLaplacian& lap,
                               double dt, long steps)
{
    check_state(state, lap);
    if (!std::isfinite(dt))
        throw std::invalid_argument("time step must be finite");
    if (steps < 0)
        throw std::invalid_argument("step count must be nonnegative");

    const double t = dt * static_cast<double>(steps);
    const auto w2 = mode_omega_sq(lap);
    ModalState modal = to_modal(state);
    for (size_t s = 0; s < w2.size(); ++s) {
        const cdouble a = modal.amplitude[s];
        const cdouble b = modal.velocity[s];
        if (w2[s] == 0.0) {
            modal.amplitude[s] = a + b * t; // free translation of the zero mode
            continue;
        }
        const double w = std::sqrt(w2[s]);
        const double c = std::cos(w * t);
        const double sn = std::sin(w * t);
        modal.amplitude[s] = a * c + b * (sn / w);
        modal.velocity[s] = -a * (w * sn) + b * c;
    }
    modal.time = state.time + t;
    return from_modal(modal);
}

DisplacementState evolve_verlet(const DisplacementState& state, const CirculantLaplacian& lap,
                                double dt, long steps)
{
    check_state(state, lap);
    if (!(dt > 0) || !std::isfinite(dt))
        throw std::invalid_argument("verlet requires a positive time step");
    if (steps < 0)
        throw std::invalid_argument("step count must be nonnegative");

    const auto w2 = mode_omega_sq(lap);
    const double omega_max = std::sqrt(*std::max_element(w2.begin(), w2.end()));
    if (omega_max > 0.0 && dt >= 2.0 / omega_max)
        throw StabilityError("verlet unstable: dt = " + std::to_string(dt) +
                             " exceeds 2/omega_max = " + std::to_string(2.0 / omega_max));

    const int n = lap.config().n;
    const double inv_mass = 1.0 / lap.config().mass;
    DisplacementState out = state;
    std::vector<double> acc = lap.apply(out.u);
    for (int p = 0; p < n; ++p)
        acc[p] *= inv_mass;
    for (long k = 0; k < steps; ++k) {
        for (int p = 0; p < n; ++p) {
            out.v[p] += 0.5 * dt * acc[p];
            out.u[p] += dt * out.v[p];
        }
        acc = lap.apply(out.u);
        for (int p = 0; p < n; ++p) {
            acc[p] *= inv_mass;
            out.v[p] += 0.5 * dt * acc[p];
        }
    }
    out.time = state.time + dt * static_cast<double>(steps);
    return out;
}

EnergyBreakdown total_energy(const DisplacementState& state, const CirculantLaplacian& lap)
{
    check_state(state, lap);
    const double mu = lap.config().mass;
    EnergyBreakdown e;
    for (double v : state.v)
        e.kinetic += v * v;
    e.kinetic *= 0.5 * mu;
    // the operator annihilates constants, so the potential is invariant under
    // rigid translation; remove the mean displacement before the quadratic
    // form so a drifting center of mass cannot amplify rounding
    double mean = 0.0;
    for (double u : state.u)
        mean += u;
    mean /= static_cast<double>(state.u.size());
    std::vector<double> centered(state.u.size());
    for (size_t p = 0; p < centered.size(); ++p)
        centered[p] = state.u[p] - mean;
    const auto du = lap.apply(centered);
    double quad = 0.0;
    for (size_t p = 0; p < du.size(); ++p)
        quad += centered[p] * du[p];
    e.potential = -0.5 * quad;
    e.total = e.kinetic + e.potential;
    return e;
}

double total_momentum(const DisplacementState& state, const CirculantLaplacian& lap)
{
    check_state(state, lap);
    double p = 0.0;
    for (double v : state.v)
        p += v;
    return lap.config().mass * p;
}

} // namespace nlchain
