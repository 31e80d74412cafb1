#include "nlchain/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nlchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDefaultAdmissGrid = 4096;
constexpr double kSynthesisTol = 1e-10;  // imaginary residual vs ||row||_inf
constexpr double kQuadratureTol = 1e-10; // doubling agreement, relative

void require_admissible(const CharacteristicSpec& spec, double spacing)
{
    if (!validate_admissibility(spec, kDefaultAdmissGrid, spacing).ok)
        throw AdmissibilityError("characteristic function not positive on (0,4]");
}

// group velocity without re-running the admissibility grid (table fill path)
double group_velocity_unchecked(const CharacteristicSpec& spec, const ChainConfig& config,
                                double kappa)
{
    if (std::abs(kappa) < 1e-14) {
        // acoustic limit: omega ~ sqrt(f'(0)) |kappa|, so v -> h sqrt(a1 Omega1^2)
        const double c1 = spec.derivative(0.0, config.spacing);
        return c1 > 0.0 ? config.spacing * std::sqrt(c1) : 0.0;
    }
    const double half = 0.5 * kappa;
    const double lambda = 4.0 * std::sin(half) * std::sin(half);
    const double omega_sq = spec.value(lambda, config.spacing);
    if (!(omega_sq > 0.0) || !std::isfinite(omega_sq))
        return 0.0; // flat band / underflowed exponential: the packet does not move
    const double slope = spec.derivative(lambda, config.spacing) * 2.0 * std::sin(kappa);
    return config.spacing * slope / (2.0 * std::sqrt(omega_sq));
}

} // namespace

BlochBasis::BlochBasis(int n) : n(n)
{
    if (n < 3)
        throw std::invalid_argument("ring size must be >= 3");
}

double BlochBasis::kappa(int s) const { return 2.0 * kPi * s / n; }

std::vector<cdouble> BlochBasis::mode(int s) const
{
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cdouble> v(n);
    for (int p = 0; p < n; ++p) {
        const double phase = kappa(s) * p;
        v[p] = cdouble(std::cos(phase), std::sin(phase)) * norm;
    }
    return v;
}

double mode_kappa(int s, int n)
{
    const int r = ((s % n) + n) % n;
    return (2 * r <= n) ? 2.0 * kPi * r / n : 2.0 * kPi * (r - n) / n;
}

double omega_sq_at(const CharacteristicSpec& spec, double spacing, double kappa)
{
    const double half_sin = std::sin(0.5 * kappa);
    return spec.value(4.0 * half_sin * half_sin, spacing);
}

DispersionTable dispersion(const CharacteristicSpec& spec, const ChainConfig& config)
{
    validate_chain(config);
    require_admissible(spec, config.spacing);
    DispersionTable table;
    table.rows.reserve(config.n);
    for (int s = 0; s < config.n; ++s) {
        DispersionRow row;
        row.s = s;
        row.kappa = mode_kappa(s, config.n);
        row.omega_sq = omega_sq_at(spec, config.spacing, row.kappa);
        row.group_velocity = group_velocity_unchecked(spec, config, row.kappa);
        table.rows.push_back(row);
    }
    return table;
}

std::vector<double> eigenvalues(const CirculantLaplacian& lap) { return lap.eigenvalues(); }

CirculantLaplacian synthesize_laplacian(const CharacteristicSpec& spec,
                                        const ChainConfig& config)
{
    validate_chain(config);
    require_admissible(spec, config.spacing);
    const int n = config.n;
    std::vector<cdouble> spectrum(n);
    for (int s = 0; s < n; ++s)
        spectrum[s] = -config.mass * omega_sq_at(spec, config.spacing, mode_kappa(s, n));

    const auto row_c = dft_inverse(spectrum);
    double max_mag = 0.0, max_imag = 0.0;
    for (const cdouble& c : row_c) {
        max_mag = std::max(max_mag, std::abs(c.real()));
        max_imag = std::max(max_imag, std::abs(c.imag()));
    }
    if (max_imag > kSynthesisTol * std::max(max_mag, 1e-300))
        throw SynthesisError("synthesized first row has imaginary residual " +
                             std::to_string(max_imag));
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j)
        row[j] = row_c[j].real();
    return CirculantLaplacian(std::move(row), config);
}

double infinite_chain_element(const CharacteristicSpec& spec, const ChainConfig& config,
                              int offset, int quadrature_points)
{
    validate_chain(config);
    if (quadrature_points < 1)
        throw std::invalid_argument("quadrature needs at least one point");
    require_admissible(spec, config.spacing);
    const int r = std::abs(offset); // elements are even in the offset

    // uniform quadrature of -(mu/2 pi) * contour integral, i.e. the Fourier
    // coefficient of kappa -> -mu f(2 - 2 cos kappa); the mean integrand
    // magnitude doubles as an absolute scale for the convergence test
    const auto quad = [&](int m_points) {
        double acc = 0.0, mag = 0.0;
        for (int j = 0; j < m_points; ++j) {
            const double kappa = 2.0 * kPi * j / m_points;
            const double f = -config.mass * spec.value(2.0 - 2.0 * std::cos(kappa),
                                                       config.spacing);
            acc += f * std::cos(kappa * r);
            mag += std::abs(f);
        }
        return std::pair<double, double>{acc / m_points, mag / m_points};
    };

    double prev = quad(quadrature_points).first;
    int m_points = quadrature_points;
    for (int round = 0; round < 2; ++round) {
        m_points *= 2;
        const auto [cur, cur_scale] = quad(m_points);
        // "relative" agreement is measured against the element when it is
        // resolvable and against the integrand scale when the element vanishes
        if (std::abs(cur - prev) <= kQuadratureTol * std::max(std::abs(cur), cur_scale))
            return cur;
        prev = cur;
    }
    throw QuadratureError("contour quadrature did not settle after two doublings (offset " +
                          std::to_string(offset) + ")");
}

double group_velocity(const CharacteristicSpec& spec, const ChainConfig& config, double kappa)
{
    validate_chain(config);
    require_admissible(spec, config.spacing);
    return group_velocity_unchecked(spec, config, kappa);
}

} // namespace nlchain
