// Inverse problem: rebuild discrete dispersion relations and potential
// coefficients from long-wave (renormalized) data, plus the closed-form
// Gaussian-kernel benchmark with its critical-point structure and the
// weak/strong limit regimes.
#pragma once

#include <vector>

#include "nlchain/chain.hpp"
#include "nlchain/spectral.hpp"

namespace nlchain {

// long-wave input: densities and renormalized coefficients A_m
// (Term.magnitude carries A_m here), target chain size n and spacing h
struct LongWaveData {
    double rho0 = 0;
    double spacing = 0;
    int n = 0;
    std::vector<Term> terms;
};

struct PotentialCoefficient {
    int order = 0;
    double prefactor = 0; // a_m * mu * A_m / (4 h^{2m}), mu = rho0 h
};

// discrete spec recovered from long-wave data: Omega_m^2 = A_m / h^{2m}
CharacteristicSpec reconstructed_spec(const LongWaveData& data);

// omega^2(kappa_s) = sum_m a_m (A_m/h^{2m}) 4^m sin^{2m}(kappa_s/2); uses the
// same evaluation kernel as the forward dispersion so round trips are
// bit-identical (AdmissibilityError if the recovered f fails the grid check)
double reconstruct_dispersion(const LongWaveData& data, int s);
DispersionTable reconstruct_dispersion_table(const LongWaveData& data);

std::vector<PotentialCoefficient>
reconstruct_potential_coefficients(const LongWaveData& data);

// V = sum_m p_m sum_p { [(D-1)^m u]_p^2 + [(D^{-1}-1)^m u]_p^2 }
double potential_energy_from_coefficients(const std::vector<PotentialCoefficient>& coeffs,
                                          const std::vector<double>& u);

// Gaussian benchmark: omega0_sq = 4 c0/(h^2 rho0), gamma = a/h^2, v0 = sqrt(c0/rho0)
struct GaussianBenchmark {
    double c0 = 0;
    double a = 0;
    double rho0 = 0;
    double spacing = 0;
    double omega0_sq = 0;
    double gamma = 0;
    double v0 = 0;

    static GaussianBenchmark from_physical(double c0, double a, double rho0, double spacing);
    // dimensionless convenience: c0 = rho0 = 1, a = gamma * h^2
    static GaussianBenchmark from_gamma(double gamma, double spacing = 1.0);
};

LongWaveData gaussian_long_wave_data(const GaussianBenchmark& bench, int n,
                                     int truncation_order = 40);

// omega^2(kappa) = omega0^2 sin^2(kappa/2) exp(-4 gamma sin^2(kappa/2))
double gaussian_dispersion(const GaussianBenchmark& bench, double kappa);

// v(kappa) = v0 cos(kappa/2) (1 - 4 gamma sin^2(kappa/2)) exp(-2 gamma sin^2(kappa/2))
double gaussian_group_velocity(const GaussianBenchmark& bench, double kappa);

// interior maximum exists iff gamma >= 1/4, at kappa* = 2 asin(1/(2 sqrt(gamma)))
// with omega^2_max = v0^2/(a e); the group speed always vanishes at +-pi
struct CriticalPoints {
    bool has_interior_max = false;
    double kappa_star = 0;
    double omega_sq_max = 0;
};

CriticalPoints gaussian_critical_points(const GaussianBenchmark& bench);

// limit diagnostics over a uniform kappa grid on [0, pi]
struct LimitRegimes {
    double max_rel_deviation_sine_square = 0; // vs omega0^2 sin^2(kappa/2)
    bool has_interior_max = false;
    double kappa_star = 0;
    double kappa_star_asymptotic = 0; // 1/sqrt(gamma)
    double omega_sq_max = 0;          // global max over the zone
    double localized_fraction = 0;    // share of the zone with omega^2 < 1% of max
};

LimitRegimes gaussian_limit_regimes(const GaussianBenchmark& bench, int grid_points = 4096);

} // namespace nlchain
