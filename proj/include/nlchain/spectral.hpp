// Spectral machinery for circulant Laplacians: Bloch modes, dispersion
// tables, eigenvalue/synthesis round trips, the infinite-chain contour
// element and analytic group velocities.
#pragma once

#include <vector>

#include "nlchain/chain.hpp"
#include "nlchain/dft.hpp"

namespace nlchain {

// orthonormal plane-wave basis v_p(kappa_s) = exp(i kappa_s p)/sqrt(N)
struct BlochBasis {
    int n = 0;
    explicit BlochBasis(int n);
    double kappa(int s) const; // 2*pi*s/n
    std::vector<cdouble> mode(int s) const;
};

struct DispersionRow {
    int s = 0;
    double kappa = 0; // mapped into (-pi, pi]
    double omega_sq = 0;
    double group_velocity = 0;
};

struct DispersionTable {
    std::vector<DispersionRow> rows;
};

// mode index -> kappa in (-pi, pi] (s may be any integer; reduced mod n)
double mode_kappa(int s, int n);

// omega^2(kappa) = f(4 sin^2(kappa/2)); shared by dispersion and the
// inverse-reconstruction path so round trips evaluate identical expressions
double omega_sq_at(const CharacteristicSpec& spec, double spacing, double kappa);

DispersionTable dispersion(const CharacteristicSpec& spec, const ChainConfig& config);

// cached DFT of the first row; eigenvalue[s] = -mu * omega^2(kappa_s)
std::vector<double> eigenvalues(const CirculantLaplacian& lap);

// inverse route: eigenvalues from f, first row by inverse DFT
// (SynthesisError if the imaginary residual exceeds 1e-10 * ||row||_inf)
CirculantLaplacian synthesize_laplacian(const CharacteristicSpec& spec,
                                        const ChainConfig& config);

// infinite-chain Laplacian element at offset r: unit-circle contour integral
// of -mu f(2 - xi - 1/xi) xi^{r-1}, evaluated as an M-point uniform
// quadrature with doubling control (QuadratureError on non-convergence)
double infinite_chain_element(const CharacteristicSpec& spec, const ChainConfig& config,
                              int offset, int quadrature_points = 256);

// v(kappa) = h * (domega^2/dkappa) / (2 omega), with
// domega^2/dkappa = f'(4 sin^2(kappa/2)) * 2 sin(kappa); at kappa = 0 the
// acoustic limit h*sqrt(f'(0)) is returned (0 when the m=1 term is absent)
double group_velocity(const CharacteristicSpec& spec, const ChainConfig& config,
                      double kappa);

} // namespace nlchain
