// Long-wave (continuum) limit: renormalized kernel specs A_m = Omega_m^2 h^{2m}
// with survival flags, continuum dispersion / dynamic modulus transforms, the
// closed-form Gaussian kernel pair, moment integrals and the weak/strong
// nonlocality classification.
#pragma once

#include <optional>
#include <vector>

#include "nlchain/chain.hpp"

namespace nlchain {

enum class BoundaryKind { periodic, infinite_line };

struct Boundary {
    BoundaryKind kind = BoundaryKind::infinite_line;
    double length = 0; // period L, meaningful for periodic only

    static Boundary periodic(double length);
    static Boundary infinite_line();
};

// continuum-side coefficient: sign * magnitude * lambda^order with
// magnitude = A_m >= 0 and a survival flag b_m
struct ContinuumTerm {
    int order = 0;
    int sign = 0;
    double magnitude = 0;
    bool survives = true;
};

// parameters of a closed-form Gaussian modulus kernel
// C(x) = c0 exp(-x^2/(4a)) / sqrt(4 pi a)
struct GaussianContinuum {
    double c0 = 0;
    double a = 0;
    int truncation_order = 40;
};

class ContinuumKernelSpec {
  public:
    // truncated f~(lambda) must stay positive for lambda > 0; checked on a
    // grid up to the Cauchy root bound plus a leading-sign test
    // (StabilityError on violation)
    static ContinuumKernelSpec from_terms(double rho0, std::vector<ContinuumTerm> terms,
                                          Boundary boundary = Boundary::infinite_line());
    // all orders survive; positivity holds in closed form
    static ContinuumKernelSpec gaussian(double c0, double a, double rho0,
                                        int truncation_order = 40,
                                        Boundary boundary = Boundary::infinite_line());

    double rho0() const { return rho0_; }
    const std::vector<ContinuumTerm>& terms() const { return terms_; }
    const std::optional<GaussianContinuum>& gaussian_form() const { return gaussian_; }
    const Boundary& boundary() const { return boundary_; }

    // f~(lambda) over surviving terms (closed form for the Gaussian variant)
    double truncated_value(double lambda) const;

  private:
    ContinuumKernelSpec() = default;
    double rho0_ = 0;
    std::vector<ContinuumTerm> terms_;
    std::optional<GaussianContinuum> gaussian_;
    Boundary boundary_{};
};

// weak nonlocality: finite gradient expansion up to max_order; strong: all
// orders survive (closed-form kernel), max_order = -1
struct NonlocalityClass {
    bool strong = false;
    int max_order = 0;
};

struct MomentCheckResult {
    double lhs = 0; // quadrature of the kernel moment integral
    double rhs = 0; // coefficient prediction (-1)^{m+1} rho0 A_m a_m b_m
};

struct QuadratureSettings {
    double half_range = 0; // 0 -> default 12*sqrt(a)
    int nodes = 2048;      // trapezoid subintervals
};

// survival: one flag per stored term (explicit specs) or per order 1..M
// (Gaussian family); empty means "all survive". The h->0 limit keeps
// A_m = Omega_m^2 h^{2m} and rho0 = mu/h fixed.
ContinuumKernelSpec renormalize(const CharacteristicSpec& spec, const ChainConfig& config,
                                const std::vector<int>& survival = {},
                                Boundary boundary = Boundary::infinite_line());

// omega~^2(k) = f~(k^2)
double continuum_dispersion(const ContinuumKernelSpec& spec, double k);

// dynamic modulus C~(k) = rho0 sum a_m b_m A_m k^{2m-2}; satisfies
// rho0 omega~^2(k) = k^2 C~(k)
double modulus_transform(const ContinuumKernelSpec& spec, double k);

enum class GaussianKernelPart { modulus, laplacian };

// real-space Gaussian kernel C(x) (modulus) or its second derivative
// (laplacian part) on the infinite line
double gaussian_kernel_realspace(double c0, double a, double x,
                                 GaussianKernelPart part = GaussianKernelPart::modulus);

// periodized kernel: truncated image sum over x + j*length
double gaussian_kernel_periodic(double c0, double a, double length, double x,
                                GaussianKernelPart part = GaussianKernelPart::modulus);

// moment identity for closed-form kernels (m >= 0; m = 0 must vanish):
// lhs = integral of Delta~(|xi|) xi^{2m}/(2m)! dxi, rhs = c0 a^{m-1}/(m-1)!
// (QuadratureError if doubling range or node count moves lhs beyond 1e-8 rel.)
MomentCheckResult moment_check(const ContinuumKernelSpec& spec, int m,
                               QuadratureSettings settings = {});

NonlocalityClass classify_nonlocality(const ContinuumKernelSpec& spec);

} // namespace nlchain
