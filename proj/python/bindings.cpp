// Python bindings for the nonlocal-chain numerics: model types, operator
// assembly, spectra, dynamics, the long-wave limit and the inverse problem.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nlchain/chain.hpp"
#include "nlchain/continuum.hpp"
#include "nlchain/dynamics.hpp"
#include "nlchain/errors.hpp"
#include "nlchain/inverse.hpp"
#include "nlchain/spectral.hpp"

namespace py = pybind11;
using namespace nlchain;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlocal Laplacians of the N-periodic harmonic chain: assembly, "
              "spectra, energies, dynamics, long-wave limits and reconstruction";

    // ---- error taxonomy (base first: translators are tried LIFO) -----------
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<TranslationalInvarianceViolation>(
        m, "TranslationalInvarianceViolation", base);
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base);
    py::register_exception<TruncationError>(m, "TruncationError", base);
    py::register_exception<SynthesisError>(m, "SynthesisError", base);
    py::register_exception<QuadratureError>(m, "QuadratureError", base);
    py::register_exception<StabilityError>(m, "StabilityError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);

    // ---- model types --------------------------------------------------------
    py::class_<Term>(m, "Term", "one power term: sign * magnitude * lambda^order")
        .def(py::init([](int order, int sign, double magnitude) {
                 return Term{order, sign, magnitude};
             }),
             py::arg("order"), py::arg("sign"), py::arg("magnitude"))
        .def_readwrite("order", &Term::order)
        .def_readwrite("sign", &Term::sign)
        .def_readwrite("magnitude", &Term::magnitude)
        .def("__repr__", [](const Term& t) {
            std::ostringstream s;
            s << "Term(order=" << t.order << ", sign=" << t.sign
              << ", magnitude=" << t.magnitude << ")";
            return s.str();
        });

    py::class_<ChainConfig>(m, "ChainConfig", "ring geometry: n sites, spacing h, mass mu")
        .def_static("with_mass", &ChainConfig::with_mass, py::arg("n"), py::arg("spacing"),
                    py::arg("mass"))
        .def_static("with_density", &ChainConfig::with_density, py::arg("n"),
                    py::arg("spacing"), py::arg("density"))
        .def_readonly("n", &ChainConfig::n)
        .def_readonly("spacing", &ChainConfig::spacing)
        .def_readonly("mass", &ChainConfig::mass)
        .def_property_readonly("length", &ChainConfig::length)
        .def_property_readonly("density", &ChainConfig::density)
        .def("__repr__", [](const ChainConfig& c) {
            std::ostringstream s;
            s << "ChainConfig(n=" << c.n << ", spacing=" << c.spacing
              << ", mass=" << c.mass << ")";
            return s.str();
        });

    py::class_<GaussianFamily>(m, "GaussianFamily")
        .def_readonly("c0", &GaussianFamily::c0)
        .def_readonly("a", &GaussianFamily::a)
        .def_readonly("rho0", &GaussianFamily::rho0)
        .def_readonly("truncation_order", &GaussianFamily::truncation_order);

    py::class_<CharacteristicSpec>(m, "CharacteristicSpec",
                                   "characteristic function f(lambda) of the band")
        .def_static("explicit_terms", &CharacteristicSpec::explicit_terms, py::arg("terms"))
        .def_static("gaussian_family", &CharacteristicSpec::gaussian_family, py::arg("c0"),
                    py::arg("a"), py::arg("rho0"), py::arg("truncation_order") = 40)
        .def_property_readonly("is_gaussian", &CharacteristicSpec::is_gaussian)
        .def_property_readonly("gaussian", &CharacteristicSpec::gaussian)
        .def("stored_terms", &CharacteristicSpec::stored_terms)
        .def("value", &CharacteristicSpec::value, py::arg("lam"), py::arg("spacing") = 1.0)
        .def("derivative", &CharacteristicSpec::derivative, py::arg("lam"),
             py::arg("spacing") = 1.0)
        .def("series_terms", &CharacteristicSpec::series_terms, py::arg("spacing") = 1.0);

    py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
        .def_readonly("ok", &AdmissibilityReport::ok)
        .def_readonly("min_value", &AdmissibilityReport::min_value)
        .def_readonly("argmin", &AdmissibilityReport::argmin)
        .def("__repr__", [](const AdmissibilityReport& r) {
            std::ostringstream s;
            s << "AdmissibilityReport(ok=" << (r.ok ? "True" : "False")
              << ", min_value=" << r.min_value << ", argmin=" << r.argmin << ")";
            return s.str();
        });

    m.def("validate_admissibility", &validate_admissibility, py::arg("spec"),
          py::arg("grid_points") = 4096, py::arg("spacing") = 1.0,
          "grid check that f > 0 on (0, 4]");
    m.def("stencil_power", &stencil_power, py::arg("order"), py::arg("n"),
          "first row of (2 - D - D^-1)^order on the N-ring");
    m.def("cyclic_difference_power", &cyclic_difference_power, py::arg("u"),
          py::arg("order"), py::arg("forward"),
          "(D-1)^order u (forward) or (D^-1-1)^order u (backward)");

    py::class_<CirculantLaplacian>(m, "CirculantLaplacian",
                                   "symmetric circulant operator with zero row sum")
        .def(py::init<std::vector<double>, ChainConfig>(), py::arg("first_row"),
             py::arg("config"))
        .def_property_readonly("first_row", &CirculantLaplacian::first_row)
        .def_property_readonly("config", &CirculantLaplacian::config)
        .def_property_readonly("eigenvalues", &CirculantLaplacian::eigenvalues)
        .def("apply", &CirculantLaplacian::apply, py::arg("u"));

    m.def("build_laplacian", &build_laplacian, py::arg("spec"), py::arg("config"),
          "assemble the operator from binomial stencils");
    m.def("elastic_energy_difference_form", &elastic_energy_difference_form,
          py::arg("spec"), py::arg("config"), py::arg("u"),
          "symmetrized difference-form elastic energy");

    // ---- spectra -------------------------------------------------------------
    py::class_<DispersionRow>(m, "DispersionRow")
        .def_readonly("s", &DispersionRow::s)
        .def_readonly("kappa", &DispersionRow::kappa)
        .def_readonly("omega_sq", &DispersionRow::omega_sq)
        .def_readonly("group_velocity", &DispersionRow::group_velocity)
        .def("__repr__", [](const DispersionRow& r) {
            std::ostringstream s;
            s << "DispersionRow(s=" << r.s << ", kappa=" << r.kappa
              << ", omega_sq=" << r.omega_sq << ", group_velocity=" << r.group_velocity
              << ")";
            return s.str();
        });

    py::class_<DispersionTable>(m, "DispersionTable")
        .def_readonly("rows", &DispersionTable::rows);

    m.def("mode_kappa", &mode_kappa, py::arg("s"), py::arg("n"),
          "mode index -> kappa in (-pi, pi]");
    m.def("omega_sq_at", &omega_sq_at, py::arg("spec"), py::arg("spacing"),
          py::arg("kappa"), "omega^2(kappa) = f(4 sin^2(kappa/2))");
    m.def("dispersion", &dispersion, py::arg("spec"), py::arg("config"));
    m.def("eigenvalues", &eigenvalues, py::arg("laplacian"),
          "eigenvalue[s] = -mu * omega^2(kappa_s)");
    m.def("synthesize_laplacian", &synthesize_laplacian, py::arg("spec"),
          py::arg("config"), "rebuild the first row from the spectrum by inverse DFT");
    m.def("infinite_chain_element", &infinite_chain_element, py::arg("spec"),
          py::arg("config"), py::arg("offset"), py::arg("quadrature_points") = 256,
          "infinite-line operator element at the given offset");
    m.def("group_velocity", &group_velocity, py::arg("spec"), py::arg("config"),
          py::arg("kappa"));

    // ---- dynamics --------------------------------------------------------------
    py::class_<DisplacementState>(m, "DisplacementState")
        .def(py::init<>())
        .def(py::init([](std::vector<double> u, std::vector<double> v, double time) {
                 return DisplacementState{std::move(u), std::move(v), time};
             }),
             py::arg("u"), py::arg("v"), py::arg("time") = 0.0)
        .def_readwrite("u", &DisplacementState::u)
        .def_readwrite("v", &DisplacementState::v)
        .def_readwrite("time", &DisplacementState::time);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("total", &EnergyBreakdown::total)
        .def("__repr__", [](const EnergyBreakdown& e) {
            std::ostringstream s;
            s << "EnergyBreakdown(kinetic=" << e.kinetic << ", potential=" << e.potential
              << ", total=" << e.total << ")";
            return s.str();
        });

    m.def("evolve_exact", &evolve_exact, py::arg("state"), py::arg("laplacian"),
          py::arg("dt"), py::arg("steps"),
          "single analytic step to t = dt*steps (dt may be negative)");
    m.def("evolve_verlet", &evolve_verlet, py::arg("state"), py::arg("laplacian"),
          py::arg("dt"), py::arg("steps"), "velocity Verlet; requires 0 < dt < 2/omega_max");
    m.def("total_energy", &total_energy, py::arg("state"), py::arg("laplacian"));
    m.def("total_momentum", &total_momentum, py::arg("state"), py::arg("laplacian"));

    // ---- long-wave (continuum) limit -----------------------------------------
    py::enum_<BoundaryKind>(m, "BoundaryKind")
        .value("periodic", BoundaryKind::periodic)
        .value("infinite_line", BoundaryKind::infinite_line);

    py::class_<Boundary>(m, "Boundary")
        .def_static("periodic", &Boundary::periodic, py::arg("length"))
        .def_static("infinite_line", &Boundary::infinite_line)
        .def_readonly("kind", &Boundary::kind)
        .def_readonly("length", &Boundary::length);

    py::class_<ContinuumTerm>(m, "ContinuumTerm",
                              "renormalized coefficient A_m with a survival flag")
        .def(py::init([](int order, int sign, double magnitude, bool survives) {
                 return ContinuumTerm{order, sign, magnitude, survives};
             }),
             py::arg("order"), py::arg("sign"), py::arg("magnitude"),
             py::arg("survives") = true)
        .def_readwrite("order", &ContinuumTerm::order)
        .def_readwrite("sign", &ContinuumTerm::sign)
        .def_readwrite("magnitude", &ContinuumTerm::magnitude)
        .def_readwrite("survives", &ContinuumTerm::survives)
        .def("__repr__", [](const ContinuumTerm& t) {
            std::ostringstream s;
            s << "ContinuumTerm(order=" << t.order << ", sign=" << t.sign
              << ", magnitude=" << t.magnitude << ", survives="
              << (t.survives ? "True" : "False") << ")";
            return s.str();
        });

    py::class_<GaussianContinuum>(m, "GaussianContinuum")
        .def_readonly("c0", &GaussianContinuum::c0)
        .def_readonly("a", &GaussianContinuum::a)
        .def_readonly("truncation_order", &GaussianContinuum::truncation_order);

    py::class_<ContinuumKernelSpec>(m, "ContinuumKernelSpec")
        .def_static("from_terms", &ContinuumKernelSpec::from_terms, py::arg("rho0"),
                    py::arg("terms"), py::arg("boundary") = Boundary::infinite_line())
        .def_static("gaussian", &ContinuumKernelSpec::gaussian, py::arg("c0"), py::arg("a"),
                    py::arg("rho0"), py::arg("truncation_order") = 40,
                    py::arg("boundary") = Boundary::infinite_line())
        .def_property_readonly("rho0", &ContinuumKernelSpec::rho0)
        .def_property_readonly("terms", &ContinuumKernelSpec::terms)
        .def_property_readonly("gaussian_form", &ContinuumKernelSpec::gaussian_form)
        .def_property_readonly("boundary", &ContinuumKernelSpec::boundary)
        .def("truncated_value", &ContinuumKernelSpec::truncated_value, py::arg("lam"));

    py::class_<NonlocalityClass>(m, "NonlocalityClass")
        .def_readonly("strong", &NonlocalityClass::strong)
        .def_readonly("max_order", &NonlocalityClass::max_order)
        .def("__repr__", [](const NonlocalityClass& c) {
            std::ostringstream s;
            s << "NonlocalityClass(strong=" << (c.strong ? "True" : "False")
              << ", max_order=" << c.max_order << ")";
            return s.str();
        });

    py::class_<MomentCheckResult>(m, "MomentCheckResult")
        .def_readonly("lhs", &MomentCheckResult::lhs)
        .def_readonly("rhs", &MomentCheckResult::rhs)
        .def("__repr__", [](const MomentCheckResult& r) {
            std::ostringstream s;
            s << "MomentCheckResult(lhs=" << r.lhs << ", rhs=" << r.rhs << ")";
            return s.str();
        });

    py::class_<QuadratureSettings>(m, "QuadratureSettings")
        .def(py::init<>())
        .def_readwrite("half_range", &QuadratureSettings::half_range)
        .def_readwrite("nodes", &QuadratureSettings::nodes);

    py::enum_<GaussianKernelPart>(m, "GaussianKernelPart")
        .value("modulus", GaussianKernelPart::modulus)
        .value("laplacian", GaussianKernelPart::laplacian);

    m.def("renormalize", &renormalize, py::arg("spec"), py::arg("config"),
          py::arg("survival") = std::vector<int>{},
          py::arg("boundary") = Boundary::infinite_line(),
          "h -> 0 limit keeping A_m = Omega_m^2 h^{2m} and rho0 = mu/h fixed");
    m.def("continuum_dispersion", &continuum_dispersion, py::arg("spec"), py::arg("k"),
          "omega~^2(k) = f~(k^2)");
    m.def("modulus_transform", &modulus_transform, py::arg("spec"), py::arg("k"),
          "dynamic modulus C~(k); rho0 omega~^2(k) = k^2 C~(k)");
    m.def("gaussian_kernel_realspace", &gaussian_kernel_realspace, py::arg("c0"),
          py::arg("a"), py::arg("x"), py::arg("part") = GaussianKernelPart::modulus);
    m.def("gaussian_kernel_periodic", &gaussian_kernel_periodic, py::arg("c0"),
          py::arg("a"), py::arg("length"), py::arg("x"),
          py::arg("part") = GaussianKernelPart::modulus);
    m.def("moment_check", &moment_check, py::arg("spec"), py::arg("m"),
          py::arg("settings") = QuadratureSettings{},
          "kernel moment integral vs closed-form coefficient prediction");
    m.def("classify_nonlocality", &classify_nonlocality, py::arg("spec"));

    // ---- inverse problem ---------------------------------------------------
    py::class_<LongWaveData>(m, "LongWaveData",
                             "long-wave input: rho0, spacing, n, A_m terms")
        .def(py::init<>())
        .def(py::init([](double rho0, double spacing, int n, std::vector<Term> terms) {
                 return LongWaveData{rho0, spacing, n, std::move(terms)};
             }),
             py::arg("rho0"), py::arg("spacing"), py::arg("n"), py::arg("terms"))
        .def_readwrite("rho0", &LongWaveData::rho0)
        .def_readwrite("spacing", &LongWaveData::spacing)
        .def_readwrite("n", &LongWaveData::n)
        .def_readwrite("terms", &LongWaveData::terms);

    py::class_<PotentialCoefficient>(m, "PotentialCoefficient")
        .def_readonly("order", &PotentialCoefficient::order)
        .def_readonly("prefactor", &PotentialCoefficient::prefactor)
        .def("__repr__", [](const PotentialCoefficient& p) {
            std::ostringstream s;
            s << "PotentialCoefficient(order=" << p.order << ", prefactor=" << p.prefactor
              << ")";
            return s.str();
        });

    m.def("reconstructed_spec", &reconstructed_spec, py::arg("data"),
          "discrete spec recovered via Omega_m^2 = A_m / h^{2m}");
    m.def("reconstruct_dispersion", &reconstruct_dispersion, py::arg("data"), py::arg("s"));
    m.def("reconstruct_dispersion_table", &reconstruct_dispersion_table, py::arg("data"));
    m.def("reconstruct_potential_coefficients", &reconstruct_potential_coefficients,
          py::arg("data"));
    m.def("potential_energy_from_coefficients", &potential_energy_from_coefficients,
          py::arg("coefficients"), py::arg("u"));

    py::class_<GaussianBenchmark>(m, "GaussianBenchmark",
                                  "gaussian-kernel chain benchmark parameters")
        .def_static("from_physical", &GaussianBenchmark::from_physical, py::arg("c0"),
                    py::arg("a"), py::arg("rho0"), py::arg("spacing"))
        .def_static("from_gamma", &GaussianBenchmark::from_gamma, py::arg("gamma"),
                    py::arg("spacing") = 1.0)
        .def_readonly("c0", &GaussianBenchmark::c0)
        .def_readonly("a", &GaussianBenchmark::a)
        .def_readonly("rho0", &GaussianBenchmark::rho0)
        .def_readonly("spacing", &GaussianBenchmark::spacing)
        .def_readonly("omega0_sq", &GaussianBenchmark::omega0_sq)
        .def_readonly("gamma", &GaussianBenchmark::gamma)
        .def_readonly("v0", &GaussianBenchmark::v0)
        .def("__repr__", [](const GaussianBenchmark& b) {
            std::ostringstream s;
            s << "GaussianBenchmark(c0=" << b.c0 << ", a=" << b.a << ", rho0=" << b.rho0
              << ", spacing=" << b.spacing << ")";
            return s.str();
        });

    py::class_<CriticalPoints>(m, "CriticalPoints")
        .def_readonly("has_interior_max", &CriticalPoints::has_interior_max)
        .def_readonly("kappa_star", &CriticalPoints::kappa_star)
        .def_readonly("omega_sq_max", &CriticalPoints::omega_sq_max)
        .def("__repr__", [](const CriticalPoints& c) {
            std::ostringstream s;
            s << "CriticalPoints(has_interior_max=" << (c.has_interior_max ? "True" : "False")
              << ", kappa_star=" << c.kappa_star << ", omega_sq_max=" << c.omega_sq_max
              << ")";
            return s.str();
        });

    py::class_<LimitRegimes>(m, "LimitRegimes")
        .def_readonly("max_rel_deviation_sine_square",
                      &LimitRegimes::max_rel_deviation_sine_square)
        .def_readonly("has_interior_max", &LimitRegimes::has_interior_max)
        .def_readonly("kappa_star", &LimitRegimes::kappa_star)
        .def_readonly("kappa_star_asymptotic", &LimitRegimes::kappa_star_asymptotic)
        .def_readonly("omega_sq_max", &LimitRegimes::omega_sq_max)
        .def_readonly("localized_fraction", &LimitRegimes::localized_fraction);

    m.def("gaussian_long_wave_data", &gaussian_long_wave_data, py::arg("benchmark"),
          py::arg("n"), py::arg("truncation_order") = 40);
    m.def("gaussian_dispersion", &gaussian_dispersion, py::arg("benchmark"),
          py::arg("kappa"), "omega^2(kappa) = omega0^2 sin^2(kappa/2) e^{-4 gamma sin^2}");
    m.def("gaussian_group_velocity", &gaussian_group_velocity, py::arg("benchmark"),
          py::arg("kappa"));
    m.def("gaussian_critical_points", &gaussian_critical_points, py::arg("benchmark"),
          "interior band maximum exists iff gamma >= 1/4");
    m.def("gaussian_limit_regimes", &gaussian_limit_regimes, py::arg("benchmark"),
          py::arg("grid_points") = 4096);
}
