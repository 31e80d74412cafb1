#include "nlchain/inverse.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nlchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDefaultAdmissGrid = 4096;

void check_long_wave(const LongWaveData& data)
{
    if (!(data.rho0 > 0) || !std::isfinite(data.rho0))
        throw std::invalid_argument("long-wave density must be positive");
    if (!(data.spacing > 0) || !std::isfinite(data.spacing))
        throw std::invalid_argument("target lattice spacing must be positive");
    if (data.n < 3)
        throw std::invalid_argument("target chain needs at least 3 particles");
}

void check_benchmark(const GaussianBenchmark& b)
{
    if (!(b.c0 > 0) || !(b.a > 0) || !(b.rho0 > 0) || !(b.spacing > 0))
        throw std::invalid_argument("gaussian benchmark needs positive c0, a, rho0, h");
}

} // namespace

CharacteristicSpec reconstructed_spec(const LongWaveData& data)
{
    check_long_wave(data);
    std::vector<Term> terms;
    terms.reserve(data.terms.size());
    for (const Term& t : data.terms) {
        // Omega_m^2 = A_m / h^{2m}; pow_int matches the renormalization side
        const double omega_sq = t.magnitude / pow_int(data.spacing, 2 * t.order);
        terms.push_back(Term{t.order, t.sign, omega_sq});
    }
    return CharacteristicSpec::explicit_terms(std::move(terms));
}

double reconstruct_dispersion(const LongWaveData& data, int s)
{
    const CharacteristicSpec spec = reconstructed_spec(data);
    if (!validate_admissibility(spec, kDefaultAdmissGrid, data.spacing).ok)
        throw AdmissibilityError("reconstructed characteristic function not positive on (0,4]");
    return omega_sq_at(spec, data.spacing, mode_kappa(s, data.n));
}

DispersionTable reconstruct_dispersion_table(const LongWaveData& data)
{
    const CharacteristicSpec spec = reconstructed_spec(data);
    const ChainConfig config =
        ChainConfig::with_density(data.n, data.spacing, data.rho0);
    return dispersion(spec, config); // same evaluation path as the forward table
}

std::vector<PotentialCoefficient>
reconstruct_potential_coefficients(const LongWaveData& data)
{
    check_long_wave(data);
    const double mu = data.rho0 * data.spacing;
    std::vector<PotentialCoefficient> coeffs;
    coeffs.reserve(data.terms.size());
    for (const Term& t : data.terms) {
        const double pref =
            t.sign * mu * t.magnitude / (4.0 * pow_int(data.spacing, 2 * t.order));
        coeffs.push_back(PotentialCoefficient{t.order, pref});
    }
    return coeffs;
}

double potential_energy_from_coefficients(const std::vector<PotentialCoefficient>& coeffs,
                                          const std::vector<double>& u)
{
    if (u.size() < 3)
        throw std::invalid_argument("state needs at least 3 entries");
    double energy = 0.0;
    for (const PotentialCoefficient& c : coeffs) {
        if (c.prefactor == 0.0)
            continue;
        if (c.order < 1)
            throw TranslationalInvarianceViolation("potential coefficient of order " +
                                                   std::to_string(c.order));
        const auto fwd = cyclic_difference_power(u, c.order, true);
        const auto bwd = cyclic_difference_power(u, c.order, false);
        double ssq = 0.0;
        for (size_t p = 0; p < u.size(); ++p)
            ssq += fwd[p] * fwd[p] + bwd[p] * bwd[p];
        energy += c.prefactor * ssq;
    }
    return energy;
}

GaussianBenchmark GaussianBenchmark::from_physical(double c0, double a, double rho0,
                                                   double spacing)
{
    GaussianBenchmark b;
    b.c0 = c0;
    b.a = a;
    b.rho0 = rho0;
    b.spacing = spacing;
    check_benchmark(b);
    const double h2 = spacing * spacing;
    b.omega0_sq = 4.0 * c0 / (h2 * rho0);
    b.gamma = a / h2;
    b.v0 = std::sqrt(c0 / rho0);
    return b;
}

GaussianBenchmark GaussianBenchmark::from_gamma(double gamma, double spacing)
{
    if (!(gamma > 0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be positive");
    return from_physical(1.0, gamma * spacing * spacing, 1.0, spacing);
}

LongWaveData gaussian_long_wave_data(const GaussianBenchmark& bench, int n,
                                     int truncation_order)
{
    check_benchmark(bench);
    if (truncation_order < 1)
        throw std::invalid_argument("truncation order must be >= 1");
    LongWaveData data;
    data.rho0 = bench.rho0;
    data.spacing = bench.spacing;
    data.n = n;
    double magnitude = bench.c0 / bench.rho0; // A_m = (c0/rho0) a^{m-1}/(m-1)!
    for (int m = 1; m <= truncation_order; ++m) {
        data.terms.push_back(Term{m, (m % 2 == 1) ? +1 : -1, magnitude});
        magnitude *= bench.a / m;
    }
    check_long_wave(data);
    return data;
}

double gaussian_dispersion(const GaussianBenchmark& bench, double kappa)
{
    const double s = std::sin(0.5 * kappa);
    const double s2 = s * s;
    return bench.omega0_sq * s2 * std::exp(-4.0 * bench.gamma * s2);
}

double gaussian_group_velocity(const GaussianBenchmark& bench, double kappa)
{
    const double s = std::sin(0.5 * kappa);
    const double s2 = s * s;
    return bench.v0 * std::cos(0.5 * kappa) * (1.0 - 4.0 * bench.gamma * s2) *
           std::exp(-2.0 * bench.gamma * s2);
}

CriticalPoints gaussian_critical_points(const GaussianBenchmark& bench)
{
    check_benchmark(bench);
    CriticalPoints cp;
    // the group speed changes sign inside the zone iff gamma >= 1/4
    if (bench.gamma >= 0.25) {
        cp.has_interior_max = true;
        cp.kappa_star = 2.0 * std::asin(1.0 / (2.0 * std::sqrt(bench.gamma)));
        cp.omega_sq_max = bench.v0 * bench.v0 / (bench.a * std::numbers::e);
    }
    return cp;
}

LimitRegimes gaussian_limit_regimes(const GaussianBenchmark& bench, int grid_points)
{
    check_benchmark(bench);
    if (grid_points < 8)
        throw std::invalid_argument("regime grid needs at least 8 points");

    LimitRegimes lr;
    const CriticalPoints cp = gaussian_critical_points(bench);
    lr.has_interior_max = cp.has_interior_max;
    lr.kappa_star = cp.kappa_star;
    lr.kappa_star_asymptotic = 1.0 / std::sqrt(bench.gamma);
    // for gamma < 1/4 the dispersion is monotone and peaks at the zone edge
    lr.omega_sq_max =
        cp.has_interior_max ? cp.omega_sq_max : gaussian_dispersion(bench, kPi);

    int localized = 0;
    for (int i = 0; i <= grid_points; ++i) {
        const double kappa = kPi * i / grid_points;
        const double w2 = gaussian_dispersion(bench, kappa);
        if (i > 0) {
            const double s = std::sin(0.5 * kappa);
            const double reference = bench.omega0_sq * s * s;
            lr.max_rel_deviation_sine_square = std::max(
                lr.max_rel_deviation_sine_square, std::abs(w2 - reference) / reference);
        }
        if (w2 < 0.01 * lr.omega_sq_max)
            ++localized;
    }
    lr.localized_fraction = static_cast<double>(localized) / (grid_points + 1);
    return lr;
}

} // namespace nlchain
