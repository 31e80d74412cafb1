// Core model types for the N-periodic harmonic chain with power-law
// next-neighbor couplings: chain geometry, characteristic-function specs
// (explicit term lists or the Gaussian-kernel family), circulant Laplacian
// matrices and the symmetrized difference-form elastic energy.
#pragma once

#include <optional>
#include <vector>

#include "nlchain/errors.hpp"

namespace nlchain {

// exact integer power by repeated multiplication; shared by every module so
// renormalization/reconstruction round trips reuse the identical product
double pow_int(double base, int exponent);

struct ChainConfig {
    int n = 0;          // particle count, >= 3
    double spacing = 0; // lattice constant h > 0
    double mass = 0;    // per-particle mass mu > 0

    static ChainConfig with_mass(int n, double spacing, double mass);
    // mass given as a line density rho0, mu = rho0 * h
    static ChainConfig with_density(int n, double spacing, double density);

    double length() const { return n * spacing; }
    double density() const { return mass / spacing; }
};

// factories validate on construction; ops call this to reject hand-rolled
// aggregates with nonsensical fields
void validate_chain(const ChainConfig& config);

// one power term of the characteristic function: sign * magnitude * lambda^order
// (magnitude carries the squared coupling frequency for discrete specs)
struct Term {
    int order = 0;
    int sign = 0;         // -1, 0, +1
    double magnitude = 0; // >= 0
};

// Gaussian-modulus family parameters; the characteristic function is
// f(lambda) = (c0/rho0) * (lambda/h^2) * exp(-a*lambda/h^2), whose series
// coefficients alternate in sign and decay factorially
struct GaussianFamily {
    double c0 = 0;
    double a = 0;
    double rho0 = 0;
    int truncation_order = 40; // M, for series expansions
};

class CharacteristicSpec {
  public:
    static CharacteristicSpec explicit_terms(std::vector<Term> terms);
    static CharacteristicSpec gaussian_family(double c0, double a, double rho0,
                                              int truncation_order = 40);

    bool is_gaussian() const { return family_.has_value(); }
    const GaussianFamily& gaussian() const;
    // terms as stored (explicit variant only)
    const std::vector<Term>& stored_terms() const;

    // f(lambda); the spacing only matters for the Gaussian family
    double value(double lambda, double spacing = 1.0) const;
    // df/dlambda
    double derivative(double lambda, double spacing = 1.0) const;

    // coefficient list used by matrix builders: the explicit terms verbatim,
    // or the Gaussian family expanded to truncation_order with the
    // a-posteriori tail bound (throws TruncationError when it fails)
    std::vector<Term> series_terms(double spacing = 1.0) const;

  private:
    CharacteristicSpec() = default;
    std::vector<Term> terms_;
    std::optional<GaussianFamily> family_;
};

struct AdmissibilityReport {
    bool ok = false;
    double min_value = 0; // min of f over the grid
    double argmin = 0;    // lambda attaining it
};

// grid check of f > 0 on (0, 4]; grid_points uniform samples, endpoint included
AdmissibilityReport validate_admissibility(const CharacteristicSpec& spec,
                                           int grid_points = 4096,
                                           double spacing = 1.0);

// first row of (2 - D - D^{-1})^order on the N-ring, i.e. the mod-N
// periodization of the alternating binomial stencil (-1)^j C(2m, m+j)
std::vector<double> stencil_power(int order, int n);

// forward/backward cyclic difference powers (D-1)^order u resp. (D^{-1}-1)^order u
std::vector<double> cyclic_difference_power(const std::vector<double>& u, int order,
                                            bool forward);

class CirculantLaplacian {
  public:
    // validates symmetry, zero row sum and negative semi-definiteness
    CirculantLaplacian(std::vector<double> first_row, ChainConfig config);

    const std::vector<double>& first_row() const { return first_row_; }
    const ChainConfig& config() const { return config_; }
    // DFT of the first row, real by symmetry, cached at construction
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    // matrix-vector product: direct convolution over the nonzero support below
    // the crossover size, spectral multiplication above it
    std::vector<double> apply(const std::vector<double>& u) const;

  private:
    std::vector<double> first_row_;
    ChainConfig config_;
    std::vector<double> eigenvalues_;
    std::vector<std::pair<int, double>> support_; // nonzero (offset, value)
};

// first_row = -mu * sum_m a_m Omega_m^2 * stencil_power(m, N)
CirculantLaplacian build_laplacian(const CharacteristicSpec& spec,
                                   const ChainConfig& config);

// (mu/4) sum_m a_m Omega_m^2 sum_p { [(D-1)^m u]_p^2 + [(D^{-1}-1)^m u]_p^2 };
// agrees with -1/2 u^T (Delta u) and is >= 0 for admissible specs
double elastic_energy_difference_form(const CharacteristicSpec& spec,
                                      const ChainConfig& config,
                                      const std::vector<double>& u);

struct DisplacementState {
    std::vector<double> u; // displacements
    std::vector<double> v; // velocities
    double time = 0.0;
};

} // namespace nlchain
