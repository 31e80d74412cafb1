#include "nlchain/chain.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "nlchain/dft.hpp"

namespace nlchain {

namespace {

constexpr double kInvariantTol = 1e-12;   // relative to the row max magnitude
constexpr int kApplyCrossover = 64;       // direct convolution below, FFT above
constexpr int kDefaultAdmissGrid = 4096;

bool finite(double x) { return std::isfinite(x); }

void check_chain(int n, double spacing, double mass)
{
    if (n < 3)
        throw std::invalid_argument("chain needs at least 3 particles, got " + std::to_string(n));
    if (!(spacing > 0) || !finite(spacing))
        throw std::invalid_argument("lattice spacing must be positive");
    if (!(mass > 0) || !finite(mass))
        throw std::invalid_argument("particle mass must be positive");
}

} // namespace

void validate_chain(const ChainConfig& config)
{
    check_chain(config.n, config.spacing, config.mass);
}

double pow_int(double base, int exponent)
{
    double r = 1.0;
    for (int i = 0; i < exponent; ++i)
        r *= base;
    return r;
}

ChainConfig ChainConfig::with_mass(int n, double spacing, double mass)
{
    check_chain(n, spacing, mass);
    return ChainConfig{n, spacing, mass};
}

ChainConfig ChainConfig::with_density(int n, double spacing, double density)
{
    if (!(density > 0) || !finite(density))
        throw std::invalid_argument("line density must be positive");
    return with_mass(n, spacing, density * spacing);
}

CharacteristicSpec CharacteristicSpec::explicit_terms(std::vector<Term> terms)
{
    for (const Term& t : terms) {
        if (t.order < 1)
            throw TranslationalInvarianceViolation(
                "term of order " + std::to_string(t.order) +
                " breaks translational invariance (orders must be >= 1)");
        if (t.sign < -1 || t.sign > 1)
            throw std::invalid_argument("term sign must be -1, 0 or +1");
        if (!(t.magnitude >= 0) || !finite(t.magnitude))
            throw std::invalid_argument("term magnitude must be a finite nonnegative real");
    }
    CharacteristicSpec spec;
    spec.terms_ = std::move(terms);
    return spec;
}

CharacteristicSpec CharacteristicSpec::gaussian_family(double c0, double a, double rho0,
                                                       int truncation_order)
{
    if (!(c0 > 0) || !(a > 0) || !(rho0 > 0) || !finite(c0) || !finite(a) || !finite(rho0))
        throw std::invalid_argument("gaussian family needs positive c0, a, rho0");
    if (truncation_order < 1)
        throw std::invalid_argument("truncation order must be >= 1");
    CharacteristicSpec spec;
    spec.family_ = GaussianFamily{c0, a, rho0, truncation_order};
    return spec;
}

const GaussianFamily& CharacteristicSpec::gaussian() const
{
    if (!family_)
        throw std::logic_error("spec is not a gaussian family");
    return *family_;
}

const std::vector<Term>& CharacteristicSpec::stored_terms() const
{
    if (family_)
        throw std::logic_error("gaussian family stores no explicit terms; use series_terms()");
    return terms_;
}

double CharacteristicSpec::value(double lambda, double spacing) const
{
    if (family_) {
        const double scaled = lambda / (spacing * spacing);
        return (family_->c0 / family_->rho0) * scaled * std::exp(-family_->a * scaled);
    }
    double f = 0.0;
    for (const Term& t : terms_)
        f += t.sign * t.magnitude * pow_int(lambda, t.order);
    return f;
}

double CharacteristicSpec::derivative(double lambda, double spacing) const
{
    if (family_) {
        const double h2 = spacing * spacing;
        const double scaled = lambda / h2;
        return (family_->c0 / family_->rho0) / h2 * (1.0 - family_->a * scaled) *
               std::exp(-family_->a * scaled);
    }
    double df = 0.0;
    for (const Term& t : terms_)
        df += t.sign * t.magnitude * t.order * pow_int(lambda, t.order - 1);
    return df;
}

std::vector<Term> CharacteristicSpec::series_terms(double spacing) const
{
    if (!family_)
        return terms_;

    const GaussianFamily& g = *family_;
    const double h2 = spacing * spacing;
    std::vector<Term> terms;
    terms.reserve(g.truncation_order);
    // Omega_m^2 = (c0/rho0) a^{m-1} / ((m-1)! h^{2m}), signs alternate
    double magnitude = (g.c0 / g.rho0) / h2;
    for (int m = 1; m <= g.truncation_order; ++m) {
        terms.push_back(Term{m, (m % 2 == 1) ? +1 : -1, magnitude});
        magnitude *= g.a / (m * h2); // next order's magnitude (divided by m!)
    }
    // after the loop `magnitude` is the omitted order-(M+1) coefficient;
    // bound the tail at the edge lambda = 4 of the admissibility window
    const double tail = magnitude * pow_int(4.0, g.truncation_order + 1);
    const double f_edge = value(4.0, spacing);
    if (!(tail < 1e-12 * f_edge)) {
        std::ostringstream msg;
        msg << "gaussian series truncated at order " << g.truncation_order
            << " misses a tail of " << tail << " against f(4) = " << f_edge
            << "; raise the truncation order";
        throw TruncationError(msg.str());
    }
    return terms;
}

AdmissibilityReport validate_admissibility(const CharacteristicSpec& spec, int grid_points,
                                           double spacing)
{
    if (grid_points < 1)
        throw std::invalid_argument("grid_points must be positive");
    AdmissibilityReport report;
    report.min_value = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_points; ++i) {
        const double lambda = 4.0 * i / grid_points;
        const double f = spec.value(lambda, spacing);
        if (f < report.min_value) {
            report.min_value = f;
            report.argmin = lambda;
        }
    }
    report.ok = report.min_value > 0.0;
    return report;
}

std::vector<double> stencil_power(int order, int n)
{
    if (order < 1)
        throw std::invalid_argument("stencil order must be >= 1");
    if (n < 3)
        throw std::invalid_argument("ring size must be >= 3");
    // first row of (2 - D - D^{-1}); repeated cyclic convolution raises the power
    std::vector<double> row(n, 0.0);
    row[0] = 2.0;
    row[1] -= 1.0;
    row[n - 1] -= 1.0;
    std::vector<double> next(n);
    for (int k = 1; k < order; ++k) {
        for (int j = 0; j < n; ++j) {
            const double left = row[(j + n - 1) % n];
            const double right = row[(j + 1) % n];
            next[j] = 2.0 * row[j] - (left + right); // symmetric grouping
        }
        row.swap(next);
    }
    return row;
}

std::vector<double> cyclic_difference_power(const std::vector<double>& u, int order,
                                            bool forward)
{
    const int n = static_cast<int>(u.size());
    std::vector<double> w = u;
    std::vector<double> next(n);
    for (int k = 0; k < order; ++k) {
        for (int p = 0; p < n; ++p) {
            const int q = forward ? (p + 1) % n : (p + n - 1) % n;
            next[p] = w[q] - w[p];
        }
        w.swap(next);
    }
    return w;
}

CirculantLaplacian::CirculantLaplacian(std::vector<double> first_row, ChainConfig config)
    : first_row_(std::move(first_row)), config_(config)
{
    check_chain(config_.n, config_.spacing, config_.mass);
    const int n = config_.n;
    if (static_cast<int>(first_row_.size()) != n)
        throw std::invalid_argument("first row length does not match the particle count");

    double max_mag = 0.0;
    for (double c : first_row_) {
        if (!finite(c))
            throw std::invalid_argument("first row contains a non-finite entry");
        max_mag = std::max(max_mag, std::abs(c));
    }
    const double tol = kInvariantTol * std::max(max_mag, 1e-300);

    for (int j = 1; j < n; ++j)
        if (std::abs(first_row_[j] - first_row_[n - j]) > tol)
            throw std::invalid_argument("first row is not symmetric (c_j != c_{N-j})");

    // compensated row sum: translational invariance demands it vanish
    double sum = 0.0, comp = 0.0;
    for (double c : first_row_) {
        const double y = c - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if (std::abs(sum) > tol)
        throw std::invalid_argument("first row sum must vanish (rigid translations must be free)");

    const auto spectrum = dft_forward(first_row_);
    eigenvalues_.resize(n);
    for (int s = 0; s < n; ++s) {
        eigenvalues_[s] = spectrum[s].real();
        if (eigenvalues_[s] > tol)
            throw std::invalid_argument("laplacian must be negative semi-definite");
    }

    for (int j = 0; j < n; ++j)
        if (first_row_[j] != 0.0)
            support_.emplace_back(j, first_row_[j]);
}

std::vector<double> CirculantLaplacian::apply(const std::vector<double>& u) const
{
    const int n = config_.n;
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("state length does not match the chain size");

    std::vector<double> out(n, 0.0);
    if (n < kApplyCrossover) {
        for (int p = 0; p < n; ++p) {
            double acc = 0.0;
            for (const auto& [j, c] : support_)
                acc += c * u[(p + j) % n];
            out[p] = acc;
        }
        return out;
    }
    auto spectrum = dft_forward(u);
    for (int s = 0; s < n; ++s)
        spectrum[s] *= eigenvalues_[s];
    const auto back = dft_inverse(spectrum);
    for (int s = 0; s < n; ++s)
        out[s] = back[s].real(); // imaginary residual is pure round-off
    return out;
}

CirculantLaplacian build_laplacian(const CharacteristicSpec& spec, const ChainConfig& config)
{
    validate_chain(config);
    const auto report = validate_admissibility(spec, kDefaultAdmissGrid, config.spacing);
    if (!report.ok)
        throw AdmissibilityError("characteristic function not positive on (0,4]");

    const auto terms = spec.series_terms(config.spacing);
    std::vector<double> row(config.n, 0.0);
    for (const Term& t : terms) {
        if (t.sign == 0 || t.magnitude == 0.0)
            continue;
        const auto stencil = stencil_power(t.order, config.n);
        const double coef = config.mass * t.sign * t.magnitude;
        for (int j = 0; j < config.n; ++j)
            row[j] -= coef * stencil[j];
    }
    return CirculantLaplacian(std::move(row), config);
}

double elastic_energy_difference_form(const CharacteristicSpec& spec, const ChainConfig& config,
                                      const std::vector<double>& u)
{
    validate_chain(config);
    if (static_cast<int>(u.size()) != config.n)
        throw std::invalid_argument("state length does not match the chain size");

    const auto terms = spec.series_terms(config.spacing);
    // differences annihilate constants, so the energy is invariant under rigid
    // translation; centering keeps a large mean offset from eating precision
    double mean = 0.0;
    for (double x : u)
        mean += x;
    mean /= static_cast<double>(u.size());
    std::vector<double> centered(u.size());
    for (size_t p = 0; p < centered.size(); ++p)
        centered[p] = u[p] - mean;
    double energy = 0.0;
    for (const Term& t : terms) {
        if (t.sign == 0 || t.magnitude == 0.0)
            continue;
        const auto fwd = cyclic_difference_power(centered, t.order, true);
        const auto bwd = cyclic_difference_power(centered, t.order, false);
        double ssq = 0.0;
        for (int p = 0; p < config.n; ++p)
            ssq += fwd[p] * fwd[p] + bwd[p] * bwd[p];
        energy += t.sign * (config.mass * t.magnitude / 4.0) * ssq;
    }
    return energy;
}

} // namespace nlchain
