#include "nlchain/continuum.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace nlchain {

namespace {

constexpr int kStabilityGrid = 4096;

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

// truncated f~ must stay positive for all lambda > 0; since all positive real
// roots of sum c_m lambda^{m-1} lie below the Cauchy bound, a positive leading
// coefficient plus a grid check up to that bound settles it
void validate_stability(const std::vector<ContinuumTerm>& terms)
{
    std::map<int, double> coef; // combined per order (duplicates allowed in lists)
    for (const ContinuumTerm& t : terms)
        if (t.survives && t.sign != 0 && t.magnitude != 0.0)
            coef[t.order] += t.sign * t.magnitude;
    for (auto it = coef.begin(); it != coef.end();)
        it = (it->second == 0.0) ? coef.erase(it) : std::next(it);

    if (coef.empty())
        throw StabilityError("truncation removed every term of the continuum kernel");
    const double lead_coef = coef.rbegin()->second;
    const int lead_order = coef.rbegin()->first;
    if (lead_coef <= 0.0)
        throw StabilityError("truncated kernel has a negative leading coefficient; "
                             "f~(lambda) turns negative for large lambda");
    double max_mag = 0.0;
    for (const auto& [order, c] : coef)
        if (order != lead_order)
            max_mag = std::max(max_mag, std::abs(c));
    const double bound = 1.0 + max_mag / lead_coef;
    for (int i = 1; i <= kStabilityGrid; ++i) {
        const double lambda = bound * i / kStabilityGrid;
        double f = 0.0;
        for (const auto& [order, c] : coef)
            f += c * pow_int(lambda, order);
        if (!(f > 0.0))
            throw StabilityError("truncated kernel is not positive at lambda = " +
                                 std::to_string(lambda));
    }
}

void check_terms(const std::vector<ContinuumTerm>& terms)
{
    for (const ContinuumTerm& t : terms) {
        if (t.order < 1)
            throw TranslationalInvarianceViolation(
                "continuum term of order " + std::to_string(t.order) + " is not allowed");
        if (t.sign < -1 || t.sign > 1)
            throw std::invalid_argument("continuum term sign must be -1, 0 or +1");
        if (!(t.magnitude >= 0) || !std::isfinite(t.magnitude))
            throw std::invalid_argument("continuum term magnitude must be finite and >= 0");
    }
}

} // namespace

Boundary Boundary::periodic(double length)
{
    if (!(length > 0) || !std::isfinite(length))
        throw std::invalid_argument("period length must be positive");
    return Boundary{BoundaryKind::periodic, length};
}

Boundary Boundary::infinite_line() { return Boundary{BoundaryKind::infinite_line, 0.0}; }

ContinuumKernelSpec ContinuumKernelSpec::from_terms(double rho0,
                                                    std::vector<ContinuumTerm> terms,
                                                    Boundary boundary)
{
    if (!(rho0 > 0) || !std::isfinite(rho0))
        throw std::invalid_argument("continuum density must be positive");
    check_terms(terms);
    validate_stability(terms);
    ContinuumKernelSpec spec;
    spec.rho0_ = rho0;
    spec.terms_ = std::move(terms);
    spec.boundary_ = boundary;
    return spec;
}

ContinuumKernelSpec ContinuumKernelSpec::gaussian(double c0, double a, double rho0,
                                                  int truncation_order, Boundary boundary)
{
    if (!(c0 > 0) || !(a > 0) || !(rho0 > 0))
        throw std::invalid_argument("gaussian kernel needs positive c0, a, rho0");
    if (truncation_order < 1)
        throw std::invalid_argument("truncation order must be >= 1");
    ContinuumKernelSpec spec;
    spec.rho0_ = rho0;
    spec.gaussian_ = GaussianContinuum{c0, a, truncation_order};
    spec.boundary_ = boundary;
    // A_m = (c0/rho0) a^{m-1}/(m-1)!, signs alternate, every order survives
    double magnitude = c0 / rho0;
    spec.terms_.reserve(truncation_order);
    for (int m = 1; m <= truncation_order; ++m) {
        spec.terms_.push_back(ContinuumTerm{m, (m % 2 == 1) ? +1 : -1, magnitude, true});
        magnitude *= a / m;
    }
    return spec;
}

double ContinuumKernelSpec::truncated_value(double lambda) const
{
    if (gaussian_)
        return (gaussian_->c0 / rho0_) * lambda * std::exp(-gaussian_->a * lambda);
    double f = 0.0;
    for (const ContinuumTerm& t : terms_)
        if (t.survives)
            f += t.sign * t.magnitude * pow_int(lambda, t.order);
    return f;
}

ContinuumKernelSpec renormalize(const CharacteristicSpec& spec, const ChainConfig& config,
                                const std::vector<int>& survival, Boundary boundary)
{
    validate_chain(config);
    const double rho0 = config.density();

    if (spec.is_gaussian()) {
        const GaussianFamily& g = spec.gaussian();
        if (std::abs(rho0 - g.rho0) > 1e-12 * g.rho0)
            throw std::invalid_argument("gaussian family density disagrees with the chain "
                                        "density; the long-wave limit is ill-defined");
        if (!survival.empty() &&
            static_cast<int>(survival.size()) != g.truncation_order)
            throw std::invalid_argument("survival flags must cover orders 1..M");
        bool all = true;
        for (int b : survival)
            all = all && (b != 0);
        if (all)
            return ContinuumKernelSpec::gaussian(g.c0, g.a, g.rho0, g.truncation_order,
                                                 boundary);
        // a genuinely truncated gradient expansion of the gaussian kernel:
        // A_m = (c0/rho0) a^{m-1}/(m-1)! carries no h, so build the explicit
        // finite list directly (stability may honestly fail downstream)
        std::vector<ContinuumTerm> terms;
        terms.reserve(g.truncation_order);
        double magnitude = g.c0 / g.rho0;
        for (int m = 1; m <= g.truncation_order; ++m) {
            terms.push_back(
                ContinuumTerm{m, (m % 2 == 1) ? +1 : -1, magnitude, survival[m - 1] != 0});
            magnitude *= g.a / m;
        }
        return ContinuumKernelSpec::from_terms(rho0, std::move(terms), boundary);
    }

    const auto& stored = spec.stored_terms();
    if (!survival.empty() && survival.size() != stored.size())
        throw std::invalid_argument("survival flags must match the term list");
    std::vector<ContinuumTerm> terms;
    terms.reserve(stored.size());
    for (size_t i = 0; i < stored.size(); ++i) {
        const Term& t = stored[i];
        const double a_m = t.magnitude * pow_int(config.spacing, 2 * t.order);
        const bool survives = survival.empty() || survival[i] != 0;
        terms.push_back(ContinuumTerm{t.order, t.sign, a_m, survives});
    }
    return ContinuumKernelSpec::from_terms(rho0, std::move(terms), boundary);
}

double continuum_dispersion(const ContinuumKernelSpec& spec, double k)
{
    return spec.truncated_value(k * k);
}

double modulus_transform(const ContinuumKernelSpec& spec, double k)
{
    const double k2 = k * k;
    if (spec.gaussian_form())
        return spec.gaussian_form()->c0 * std::exp(-spec.gaussian_form()->a * k2);
    double c = 0.0;
    for (const ContinuumTerm& t : spec.terms())
        if (t.survives)
            c += t.sign * t.magnitude * pow_int(k2, t.order - 1);
    return spec.rho0() * c;
}

double gaussian_kernel_realspace(double c0, double a, double x, GaussianKernelPart part)
{
    if (!(c0 > 0) || !(a > 0))
        throw std::invalid_argument("gaussian kernel needs positive c0 and a");
    const double norm = c0 / std::sqrt(4.0 * std::numbers::pi * a);
    const double shape = std::exp(-x * x / (4.0 * a));
    if (part == GaussianKernelPart::modulus)
        return norm * shape;
    // second derivative of the modulus kernel
    return norm * shape * (x * x / (4.0 * a * a) - 1.0 / (2.0 * a));
}

double gaussian_kernel_periodic(double c0, double a, double length, double x,
                                GaussianKernelPart part)
{
    if (!(length > 0) || !std::isfinite(length))
        throw std::invalid_argument("period length must be positive");
    double acc = gaussian_kernel_realspace(c0, a, x, part);
    const double thresh =
        1e-18 * (std::abs(gaussian_kernel_realspace(c0, a, 0.0, part)) + 1e-300);
    for (int j = 1; j < 100000; ++j) {
        const double lo = gaussian_kernel_realspace(c0, a, x - j * length, part);
        const double hi = gaussian_kernel_realspace(c0, a, x + j * length, part);
        acc += lo + hi;
        if (std::max(std::abs(lo), std::abs(hi)) < thresh)
            break;
    }
    return acc;
}

MomentCheckResult moment_check(const ContinuumKernelSpec& spec, int m,
                               QuadratureSettings settings)
{
    if (m < 0)
        throw std::invalid_argument("moment order must be >= 0");
    if (!spec.gaussian_form())
        throw std::invalid_argument("moment check needs a closed real-space kernel "
                                    "(gaussian family)");
    if (settings.nodes < 8)
        throw std::invalid_argument("quadrature needs at least 8 subintervals");

    const GaussianContinuum& g = *spec.gaussian_form();
    const double base_range =
        settings.half_range > 0 ? settings.half_range : 12.0 * std::sqrt(g.a);
    const double fact2m = factorial(2 * m);

    // composite trapezoid; the integrand decays like the gaussian so the rule
    // converges spectrally; also accumulate the absolute-value integral as a
    // scale for the "relative" agreement test of vanishing moments
    const auto integrate = [&](double half_range, int nodes) {
        const double step = 2.0 * half_range / nodes;
        double acc = 0.0, abs_acc = 0.0;
        for (int i = 0; i <= nodes; ++i) {
            const double x = -half_range + step * i;
            const double gval =
                gaussian_kernel_realspace(g.c0, g.a, x, GaussianKernelPart::laplacian) *
                pow_int(x, 2 * m) / fact2m;
            const double w = (i == 0 || i == nodes) ? 0.5 : 1.0;
            acc += w * gval;
            abs_acc += w * std::abs(gval);
        }
        return std::pair<double, double>{acc * step, abs_acc * step};
    };

    const auto [lhs, abs_scale] = integrate(base_range, settings.nodes);
    const double wider = integrate(2.0 * base_range, 2 * settings.nodes).first;
    const double finer = integrate(base_range, 2 * settings.nodes).first;

    double rhs = 0.0; // m = 0: translational invariance forces a vanishing moment
    if (m >= 1)
        rhs = g.c0 * pow_int(g.a, m - 1) / factorial(m - 1);

    const double tol = std::max(1e-8 * std::max(std::abs(lhs), std::abs(rhs)),
                                1e-12 * abs_scale);
    if (std::abs(wider - lhs) > tol || std::abs(finer - lhs) > tol)
        throw QuadratureError("moment quadrature (order " + std::to_string(m) +
                              ") not converged under range/node doubling");
    return MomentCheckResult{lhs, rhs};
}

NonlocalityClass classify_nonlocality(const ContinuumKernelSpec& spec)
{
    if (spec.gaussian_form())
        return NonlocalityClass{true, -1}; // every gradient order survives
    int max_order = 0;
    for (const ContinuumTerm& t : spec.terms())
        if (t.survives && t.sign != 0 && t.magnitude > 0.0)
            max_order = std::max(max_order, t.order);
    return NonlocalityClass{false, max_order};
}

} // namespace nlchain
