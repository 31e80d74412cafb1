#include "nlchain/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlchain/continuum.hpp"
#include "nlchain/dynamics.hpp"
#include "nlchain/errors.hpp"
#include "nlchain/inverse.hpp"
#include "nlchain/spectral.hpp"

namespace nlchain {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == ',') parts.emplace_back();
    return parts;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "'");
}

double parse_real_value(const std::string& key, const std::string& value) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        bad_value(key, value);
    }
    if (pos != value.size() || !std::isfinite(v)) bad_value(key, value);
    return v;
}

long parse_long_value(const std::string& key, const std::string& value) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        bad_value(key, value);
    }
    if (pos != value.size()) bad_value(key, value);
    return v;
}

int parse_int_value(const std::string& key, const std::string& value) {
    long v = parse_long_value(key, value);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        bad_value(key, value);
    return static_cast<int>(v);
}

unsigned long parse_ulong_value(const std::string& key, const std::string& value) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(value, &pos);
    } catch (const std::exception&) {
        bad_value(key, value);
    }
    if (pos != value.size()) bad_value(key, value);
    return v;
}

// single entry point for both config syntaxes; "term" may repeat, everything
// else is accept-once
void apply_key(ParsedConfig& cfg, const std::string& key, const std::string& value,
               std::map<std::string, int>& count) {
    int seen = ++count[key];
    if (key != "term" && seen > 1) throw ConfigError("duplicate key '" + key + "'");

    if (key == "command") {
        cfg.command = parse_command_name(value);
        cfg.has_command = true;
    } else if (key == "n") {
        cfg.n = parse_int_value(key, value);
    } else if (key == "h") {
        cfg.spacing = parse_real_value(key, value);
    } else if (key == "mu") {
        cfg.mass = parse_real_value(key, value);
    } else if (key == "rho0") {
        cfg.density = parse_real_value(key, value);
    } else if (key == "family") {
        if (value == "gaussian")
            cfg.family_gaussian = true;
        else if (value == "terms")
            cfg.family_gaussian = false;
        else
            bad_value(key, value);
    } else if (key == "c0") {
        cfg.c0 = parse_real_value(key, value);
    } else if (key == "a") {
        cfg.a = parse_real_value(key, value);
    } else if (key == "truncation_order") {
        cfg.truncation_order = parse_int_value(key, value);
    } else if (key == "gamma") {
        cfg.gamma = parse_real_value(key, value);
    } else if (key == "term") {
        std::vector<std::string> parts = split_list(value);
        if (parts.size() != 3)
            throw ConfigError("invalid term '" + value + "': expected 'order,sign,magnitude'");
        Term t;
        t.order = parse_int_value("term.order", parts[0]);
        t.sign = parse_int_value("term.sign", parts[1]);
        t.magnitude = parse_real_value("term.magnitude", parts[2]);
        cfg.terms.push_back(t);
    } else if (key == "survival") {
        if (value == "all") {
            cfg.survival.clear();
        } else {
            for (const std::string& part : split_list(value)) {
                int flag = parse_int_value(key, part);
                if (flag != 0 && flag != 1) bad_value(key, value);
                cfg.survival.push_back(flag);
            }
            if (cfg.survival.empty()) bad_value(key, value);
        }
    } else if (key == "boundary") {
        if (value != "infinite" && value != "periodic") bad_value(key, value);
        cfg.boundary = value;
    } else if (key == "dt") {
        cfg.dt = parse_real_value(key, value);
    } else if (key == "steps") {
        cfg.steps = parse_long_value(key, value);
    } else if (key == "integrator") {
        if (value != "exact" && value != "verlet") bad_value(key, value);
        cfg.integrator = value;
    } else if (key == "snapshot_stride") {
        cfg.snapshot_stride = parse_long_value(key, value);
    } else if (key == "init") {
        if (value != "mode" && value != "pulse" && value != "random") bad_value(key, value);
        cfg.init = value;
    } else if (key == "mode_index") {
        cfg.mode_index = parse_int_value(key, value);
    } else if (key == "amplitude") {
        cfg.amplitude = parse_real_value(key, value);
    } else if (key == "width") {
        cfg.width = parse_real_value(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_ulong_value(key, value);
    } else if (key == "samples") {
        cfg.samples = parse_int_value(key, value);
    } else if (key == "k_max") {
        cfg.k_max = parse_real_value(key, value);
    } else if (key == "x_max") {
        cfg.x_max = parse_real_value(key, value);
    } else if (key == "grid_points") {
        cfg.grid_points = parse_int_value(key, value);
    } else if (key == "tolerance") {
        cfg.tolerance = parse_real_value(key, value);
        if (!(cfg.tolerance > 0)) bad_value(key, value);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void finalize_config(ParsedConfig& cfg) {
    if (!cfg.has_command) throw ConfigError("missing required key 'command'");
}

// numerical outputs must be finite; a NaN/Inf here is an internal numerical
// failure, not an input error
double checked(double v, const char* what) {
    if (!std::isfinite(v))
        throw Error(std::string("non-finite value computed for ") + what);
    return v;
}

void csv_prelude(std::ostream& out, const ParsedConfig& cfg, const std::string& columns) {
    out << "# config: " << canonical_echo(cfg) << "\n" << columns << "\n";
}

CharacteristicSpec build_spec(const ParsedConfig& cfg) {
    if (cfg.family_gaussian) {
        if (!cfg.c0 || !cfg.a)
            throw ConfigError("family=gaussian requires keys 'c0' and 'a'");
        if (!cfg.density)
            throw ConfigError("family=gaussian requires key 'rho0'");
        return CharacteristicSpec::gaussian_family(*cfg.c0, *cfg.a, *cfg.density,
                                                   cfg.truncation_order.value_or(40));
    }
    if (cfg.terms.empty())
        throw ConfigError(
            "no characteristic function given: add 'term = order,sign,magnitude' "
            "entries or 'family = gaussian'");
    return CharacteristicSpec::explicit_terms(cfg.terms);
}

ChainConfig build_chain(const ParsedConfig& cfg) {
    if (!cfg.n) throw ConfigError("missing required key 'n'");
    if (!cfg.spacing) throw ConfigError("missing required key 'h'");
    if (cfg.mass && cfg.density)
        throw ConfigError("keys 'mu' and 'rho0' are mutually exclusive");
    if (cfg.mass) return ChainConfig::with_mass(*cfg.n, *cfg.spacing, *cfg.mass);
    if (cfg.density) return ChainConfig::with_density(*cfg.n, *cfg.spacing, *cfg.density);
    throw ConfigError("missing mass: give 'mu' or 'rho0'");
}

Boundary build_boundary(const ParsedConfig& cfg, const ChainConfig& chain) {
    if (cfg.boundary == "periodic") return Boundary::periodic(chain.length());
    return Boundary::infinite_line();
}

int cmd_dispersion(const ParsedConfig& cfg, std::ostream& out) {
    ChainConfig chain = build_chain(cfg);
    CharacteristicSpec spec = build_spec(cfg);
    DispersionTable table = dispersion(spec, chain);
    csv_prelude(out, cfg, "s,kappa,omega_sq,group_velocity");
    for (const DispersionRow& row : table.rows) {
        out << row.s << ',' << format_real(checked(row.kappa, "kappa")) << ','
            << format_real(checked(row.omega_sq, "omega_sq")) << ','
            << format_real(checked(row.group_velocity, "group_velocity")) << "\n";
    }
    return 0;
}

int cmd_matrix(const ParsedConfig& cfg, std::ostream& out) {
    ChainConfig chain = build_chain(cfg);
    CharacteristicSpec spec = build_spec(cfg);
    CirculantLaplacian lap = build_laplacian(spec, chain);
    const std::vector<double>& row = lap.first_row();
    const std::vector<double>& eig = eigenvalues(lap);
    csv_prelude(out, cfg, "index,first_row,eigenvalue");
    for (int j = 0; j < chain.n; ++j) {
        out << j << ',' << format_real(checked(row[j], "first_row")) << ','
            << format_real(checked(eig[j], "eigenvalue")) << "\n";
    }
    return 0;
}

DisplacementState initial_state(const ParsedConfig& cfg, const ChainConfig& chain) {
    const int n = chain.n;
    const double amp = cfg.amplitude.value_or(1.0);
    DisplacementState state;
    state.u.assign(n, 0.0);
    state.v.assign(n, 0.0);
    if (cfg.init == "mode") {
        const int s = cfg.mode_index.value_or(1);
        const double kappa = 2.0 * std::numbers::pi * s / n;
        for (int p = 0; p < n; ++p) state.u[p] = amp * std::cos(kappa * p);
    } else if (cfg.init == "pulse") {
        const double width = cfg.width.value_or(n / 8.0);
        if (!(width > 0)) throw ConfigError("'width' must be positive");
        const double center = n / 2.0;
        for (int p = 0; p < n; ++p) {
            const double z = (p - center) / width;
            state.u[p] = amp * std::exp(-z * z);
        }
    } else { // random
        std::mt19937_64 rng(cfg.seed.value_or(12345UL));
        std::uniform_real_distribution<double> dist(-amp, amp);
        for (int p = 0; p < n; ++p) state.u[p] = dist(rng);
        for (int p = 0; p < n; ++p) state.v[p] = dist(rng);
    }
    return state;
}

int cmd_simulate(const ParsedConfig& cfg, std::ostream& out) {
    ChainConfig chain = build_chain(cfg);
    CharacteristicSpec spec = build_spec(cfg);
    CirculantLaplacian lap = build_laplacian(spec, chain);

    if (!cfg.dt) throw ConfigError("missing required key 'dt'");
    if (!cfg.steps) throw ConfigError("missing required key 'steps'");
    const double dt = *cfg.dt;
    const long steps = *cfg.steps;
    if (dt == 0 || !std::isfinite(dt)) throw ConfigError("'dt' must be nonzero");
    if (steps < 0) throw ConfigError("'steps' must be >= 0");
    if (cfg.integrator == "verlet" && dt < 0)
        throw ConfigError("'dt' must be positive for the verlet integrator");
    const long stride = cfg.snapshot_stride.value_or(std::max<long>(1, steps / 100));
    if (stride < 1) throw ConfigError("'snapshot_stride' must be >= 1");

    DisplacementState initial = initial_state(cfg, chain);

    std::string columns = "step,time,kinetic,potential,total,momentum";
    for (int p = 0; p < chain.n; ++p) columns += ",u_" + std::to_string(p);
    csv_prelude(out, cfg, columns);

    auto emit = [&](long step, const DisplacementState& state) {
        EnergyBreakdown energy = total_energy(state, lap);
        out << step << ',' << format_real(checked(state.time, "time")) << ','
            << format_real(checked(energy.kinetic, "kinetic")) << ','
            << format_real(checked(energy.potential, "potential")) << ','
            << format_real(checked(energy.total, "total")) << ','
            << format_real(checked(total_momentum(state, lap), "momentum"));
        for (double u : state.u) out << ',' << format_real(checked(u, "u"));
        out << "\n";
    };

    if (cfg.integrator == "exact") {
        long k = 0;
        for (;;) {
            emit(k, evolve_exact(initial, lap, dt, k));
            if (k >= steps) break;
            k = std::min(k + stride, steps);
        }
    } else {
        DisplacementState state = initial;
        emit(0, state);
        for (long k = 1; k <= steps; ++k) {
            state = evolve_verlet(state, lap, dt, 1);
            if (k % stride == 0 || k == steps) emit(k, state);
        }
    }
    return 0;
}

int cmd_kernel(const ParsedConfig& cfg, std::ostream& out) {
    ChainConfig chain = build_chain(cfg);
    CharacteristicSpec spec = build_spec(cfg);
    Boundary boundary = build_boundary(cfg, chain);
    ContinuumKernelSpec kernel = renormalize(spec, chain, cfg.survival, boundary);
    NonlocalityClass klass = classify_nonlocality(kernel);

    const int samples = cfg.samples.value_or(129);
    if (samples < 2) throw ConfigError("'samples' must be >= 2");
    const double k_max = cfg.k_max.value_or(std::numbers::pi / chain.spacing);
    if (!(k_max > 0)) throw ConfigError("'k_max' must be positive");

    const bool gaussian = kernel.gaussian_form().has_value();
    std::string columns = "k,omega_sq,modulus";
    if (gaussian) columns += ",x,kernel_modulus,kernel_laplacian";

    out << "# config: " << canonical_echo(cfg) << "\n";
    if (klass.strong)
        out << "# nonlocality: strong\n";
    else
        out << "# nonlocality: weak max_order=" << klass.max_order << "\n";
    out << columns << "\n";

    double x_max = 0;
    if (gaussian) {
        x_max = cfg.x_max.value_or(6.0 * std::sqrt(kernel.gaussian_form()->a));
        if (!(x_max > 0)) throw ConfigError("'x_max' must be positive");
    }

    for (int i = 0; i < samples; ++i) {
        const double k = k_max * i / (samples - 1);
        out << format_real(checked(k, "k")) << ','
            << format_real(checked(continuum_dispersion(kernel, k), "omega_sq")) << ','
            << format_real(checked(modulus_transform(kernel, k), "modulus"));
        if (gaussian) {
            const GaussianContinuum& g = *kernel.gaussian_form();
            const double x = -x_max + 2.0 * x_max * i / (samples - 1);
            double modulus = 0;
            double laplacian = 0;
            if (boundary.kind == BoundaryKind::periodic) {
                modulus = gaussian_kernel_periodic(g.c0, g.a, boundary.length, x,
                                                   GaussianKernelPart::modulus);
                laplacian = gaussian_kernel_periodic(g.c0, g.a, boundary.length, x,
                                                     GaussianKernelPart::laplacian);
            } else {
                modulus = gaussian_kernel_realspace(g.c0, g.a, x, GaussianKernelPart::modulus);
                laplacian =
                    gaussian_kernel_realspace(g.c0, g.a, x, GaussianKernelPart::laplacian);
            }
            out << ',' << format_real(checked(x, "x")) << ','
                << format_real(checked(modulus, "kernel_modulus")) << ','
                << format_real(checked(laplacian, "kernel_laplacian"));
        }
        out << "\n";
    }
    return 0;
}

int cmd_reconstruct(const ParsedConfig& cfg, std::ostream& out) {
    if (!cfg.n) throw ConfigError("missing required key 'n'");
    if (!cfg.spacing) throw ConfigError("missing required key 'h'");
    if (!cfg.density) throw ConfigError("missing required key 'rho0'");
    if (cfg.terms.empty())
        throw ConfigError("no long-wave coefficients given: add 'term = order,sign,A_m' entries");

    LongWaveData data;
    data.rho0 = *cfg.density;
    data.spacing = *cfg.spacing;
    data.n = *cfg.n;
    data.terms = cfg.terms;

    DispersionTable table = reconstruct_dispersion_table(data);
    std::vector<PotentialCoefficient> coeffs = reconstruct_potential_coefficients(data);

    ordered_json doc;
    doc["command"] = "reconstruct";
    doc["config"] = canonical_echo(cfg);
    doc["rho0"] = checked(data.rho0, "rho0");
    doc["h"] = checked(data.spacing, "h");
    doc["mu"] = checked(data.rho0 * data.spacing, "mu");
    doc["n"] = data.n;
    doc["terms"] = ordered_json::array();
    for (const Term& t : data.terms) {
        doc["terms"].push_back({{"order", t.order},
                                {"sign", t.sign},
                                {"coefficient", checked(t.magnitude, "coefficient")}});
    }
    doc["dispersion"] = ordered_json::array();
    for (const DispersionRow& row : table.rows) {
        doc["dispersion"].push_back(
            {{"s", row.s},
             {"kappa", checked(row.kappa, "kappa")},
             {"omega_sq", checked(row.omega_sq, "omega_sq")},
             {"group_velocity", checked(row.group_velocity, "group_velocity")}});
    }
    doc["potential_coefficients"] = ordered_json::array();
    for (const PotentialCoefficient& c : coeffs) {
        doc["potential_coefficients"].push_back(
            {{"order", c.order}, {"prefactor", checked(c.prefactor, "prefactor")}});
    }
    out << doc.dump(2) << "\n";
    return 0;
}

int cmd_gaussian(const ParsedConfig& cfg, std::ostream& out) {
    if (cfg.gamma && cfg.c0)
        throw ConfigError("keys 'gamma' and 'c0' are mutually exclusive");
    GaussianBenchmark bench;
    if (cfg.gamma) {
        bench = GaussianBenchmark::from_gamma(*cfg.gamma, cfg.spacing.value_or(1.0));
    } else {
        if (!cfg.c0 || !cfg.a || !cfg.density)
            throw ConfigError("give 'gamma' or the triple 'c0', 'a', 'rho0'");
        bench = GaussianBenchmark::from_physical(*cfg.c0, *cfg.a, *cfg.density,
                                                 cfg.spacing.value_or(1.0));
    }

    CriticalPoints critical = gaussian_critical_points(bench);
    LimitRegimes regimes = gaussian_limit_regimes(bench, cfg.grid_points.value_or(4096));
    ContinuumKernelSpec kernel = ContinuumKernelSpec::gaussian(
        bench.c0, bench.a, bench.rho0, cfg.truncation_order.value_or(40));

    ordered_json doc;
    doc["command"] = "gaussian";
    doc["config"] = canonical_echo(cfg);
    doc["parameters"] = {{"c0", checked(bench.c0, "c0")},
                         {"a", checked(bench.a, "a")},
                         {"rho0", checked(bench.rho0, "rho0")},
                         {"h", checked(bench.spacing, "h")},
                         {"omega0_sq", checked(bench.omega0_sq, "omega0_sq")},
                         {"gamma", checked(bench.gamma, "gamma")},
                         {"v0", checked(bench.v0, "v0")}};
    doc["critical_points"] = {
        {"has_interior_max", critical.has_interior_max},
        {"kappa_star", checked(critical.kappa_star, "kappa_star")},
        {"omega_sq_max", checked(critical.omega_sq_max, "omega_sq_max")},
        {"band_edge_omega_sq",
         checked(gaussian_dispersion(bench, std::numbers::pi), "band_edge_omega_sq")}};
    doc["regimes"] = {
        {"max_rel_deviation_sine_square",
         checked(regimes.max_rel_deviation_sine_square, "max_rel_deviation_sine_square")},
        {"has_interior_max", regimes.has_interior_max},
        {"kappa_star", checked(regimes.kappa_star, "kappa_star")},
        {"kappa_star_asymptotic",
         checked(regimes.kappa_star_asymptotic, "kappa_star_asymptotic")},
        {"omega_sq_max", checked(regimes.omega_sq_max, "omega_sq_max")},
        {"localized_fraction", checked(regimes.localized_fraction, "localized_fraction")}};
    doc["moments"] = ordered_json::array();
    for (int m = 0; m <= 5; ++m) {
        MomentCheckResult mc = moment_check(kernel, m);
        doc["moments"].push_back({{"m", m},
                                  {"quadrature", checked(mc.lhs, "moment quadrature")},
                                  {"prediction", checked(mc.rhs, "moment prediction")}});
    }
    out << doc.dump(2) << "\n";
    return 0;
}

int cmd_validate(const ParsedConfig& cfg, std::ostream& out, std::ostream& err) {
    CharacteristicSpec spec = build_spec(cfg);
    const int grid = cfg.grid_points.value_or(4096);
    const double h = cfg.spacing.value_or(1.0);
    AdmissibilityReport report = validate_admissibility(spec, grid, h);

    ordered_json doc;
    doc["command"] = "validate";
    doc["config"] = canonical_echo(cfg);
    doc["admissible"] = report.ok;
    doc["min_value"] = checked(report.min_value, "min_value");
    doc["argmin"] = checked(report.argmin, "argmin");
    doc["grid_points"] = grid;
    doc["tolerance"] = cfg.tolerance;

    if (!report.ok) {
        doc["checks"] = ordered_json::array();
        out << doc.dump(2) << "\n";
        err << "error: characteristic function not positive on (0,4]\n";
        return 1;
    }

    bool all_ok = true;
    doc["checks"] = ordered_json::array();
    auto add_check = [&](const char* name, double value, double threshold) {
        const bool ok = std::isfinite(value) && value <= threshold;
        all_ok = all_ok && ok;
        doc["checks"].push_back(
            {{"name", name}, {"value", value}, {"threshold", threshold}, {"ok", ok}});
    };

    if (cfg.n) {
        ChainConfig chain = build_chain(cfg);
        CirculantLaplacian lap = build_laplacian(spec, chain);
        const std::vector<double>& row = lap.first_row();
        const std::vector<double>& eig = eigenvalues(lap);
        const int n = chain.n;
        double scale = 0;
        for (double v : row) scale = std::max(scale, std::abs(v));
        if (scale == 0) scale = 1;

        double sym = 0;
        for (int j = 1; j < n; ++j) sym = std::max(sym, std::abs(row[j] - row[n - j]));
        double row_sum = 0;
        for (double v : row) row_sum += v;
        double max_eig = -std::numeric_limits<double>::infinity();
        for (double v : eig) max_eig = std::max(max_eig, v);

        add_check("row_symmetry", sym / scale, cfg.tolerance);
        add_check("row_sum", std::abs(row_sum) / scale, cfg.tolerance);
        add_check("negative_semidefinite", max_eig / scale, cfg.tolerance);
        add_check("zone_edge_group_velocity",
                  std::abs(group_velocity(spec, chain, std::numbers::pi)),
                  std::max(cfg.tolerance, 1e-10));
    }

    doc["passed"] = all_ok;
    out << doc.dump(2) << "\n";
    if (!all_ok) err << "error: validation checks failed\n";
    return all_ok ? 0 : 1;
}

} // namespace

Command parse_command_name(const std::string& name) {
    if (name == "dispersion") return Command::dispersion;
    if (name == "matrix") return Command::matrix;
    if (name == "simulate") return Command::simulate;
    if (name == "kernel") return Command::kernel;
    if (name == "reconstruct") return Command::reconstruct;
    if (name == "gaussian") return Command::gaussian;
    if (name == "validate") return Command::validate;
    throw ConfigError("unknown command '" + name + "'");
}

const char* command_name(Command command) {
    switch (command) {
    case Command::dispersion: return "dispersion";
    case Command::matrix: return "matrix";
    case Command::simulate: return "simulate";
    case Command::kernel: return "kernel";
    case Command::reconstruct: return "reconstruct";
    case Command::gaussian: return "gaussian";
    case Command::validate: return "validate";
    }
    return "unknown";
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

ParsedConfig parse_config_kv(std::istream& in) {
    ParsedConfig cfg;
    std::map<std::string, int> count;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        apply_key(cfg, key, value, count);
    }
    finalize_config(cfg);
    return cfg;
}

ParsedConfig parse_config_json(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("JSON config must be an object");

    ParsedConfig cfg;
    std::map<std::string, int> count;
    auto scalar_string = [](const ordered_json& v) -> std::string {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };

    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        const ordered_json& value = item.value();
        if (key == "terms") {
            if (!value.is_array()) throw ConfigError("'terms' must be an array");
            for (const ordered_json& entry : value) {
                std::string order, sign, magnitude;
                if (entry.is_array() && entry.size() == 3) {
                    order = entry[0].dump();
                    sign = entry[1].dump();
                    magnitude = entry[2].dump();
                } else if (entry.is_object() && entry.contains("order") &&
                           entry.contains("sign") && entry.contains("magnitude") &&
                           entry.size() == 3) {
                    order = entry["order"].dump();
                    sign = entry["sign"].dump();
                    magnitude = entry["magnitude"].dump();
                } else {
                    throw ConfigError("each term must be [order, sign, magnitude] "
                                      "or {order, sign, magnitude}");
                }
                apply_key(cfg, "term", order + "," + sign + "," + magnitude, count);
            }
        } else if (key == "survival" && value.is_array()) {
            std::string flat;
            for (size_t i = 0; i < value.size(); ++i) {
                if (i > 0) flat += ",";
                flat += value[i].dump();
            }
            apply_key(cfg, "survival", flat, count);
        } else {
            apply_key(cfg, key, scalar_string(value), count);
        }
    }
    finalize_config(cfg);
    return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? parse_config_json(in) : parse_config_kv(in);
}

std::string canonical_echo(const ParsedConfig& cfg) {
    std::ostringstream os;
    os << "command=" << command_name(cfg.command);
    auto put = [&](const char* key, const std::string& value) {
        os << ' ' << key << '=' << value;
    };
    if (cfg.n) put("n", std::to_string(*cfg.n));
    if (cfg.spacing) put("h", format_real(*cfg.spacing));
    if (cfg.mass) put("mu", format_real(*cfg.mass));
    if (cfg.density) put("rho0", format_real(*cfg.density));
    if (cfg.family_gaussian) put("family", "gaussian");
    if (cfg.c0) put("c0", format_real(*cfg.c0));
    if (cfg.a) put("a", format_real(*cfg.a));
    if (cfg.truncation_order) put("truncation_order", std::to_string(*cfg.truncation_order));
    if (cfg.gamma) put("gamma", format_real(*cfg.gamma));
    if (!cfg.terms.empty()) {
        std::string terms = "[";
        for (size_t i = 0; i < cfg.terms.size(); ++i) {
            const Term& t = cfg.terms[i];
            if (i > 0) terms += ";";
            terms += "(" + std::to_string(t.order) + "," +
                     (t.sign >= 0 ? "+" : "") + std::to_string(t.sign) + "," +
                     format_real(t.magnitude) + ")";
        }
        terms += "]";
        put("terms", terms);
    }
    if (!cfg.survival.empty()) {
        std::string flags = "[";
        for (size_t i = 0; i < cfg.survival.size(); ++i) {
            if (i > 0) flags += ",";
            flags += std::to_string(cfg.survival[i]);
        }
        flags += "]";
        put("survival", flags);
    }
    put("boundary", cfg.boundary);
    if (cfg.dt) put("dt", format_real(*cfg.dt));
    if (cfg.steps) put("steps", std::to_string(*cfg.steps));
    if (cfg.command == Command::simulate) {
        put("integrator", cfg.integrator);
        put("init", cfg.init);
    }
    if (cfg.snapshot_stride) put("snapshot_stride", std::to_string(*cfg.snapshot_stride));
    if (cfg.mode_index) put("mode_index", std::to_string(*cfg.mode_index));
    if (cfg.amplitude) put("amplitude", format_real(*cfg.amplitude));
    if (cfg.width) put("width", format_real(*cfg.width));
    if (cfg.seed) put("seed", std::to_string(*cfg.seed));
    if (cfg.samples) put("samples", std::to_string(*cfg.samples));
    if (cfg.k_max) put("k_max", format_real(*cfg.k_max));
    if (cfg.x_max) put("x_max", format_real(*cfg.x_max));
    if (cfg.grid_points) put("grid_points", std::to_string(*cfg.grid_points));
    put("tolerance", format_real(cfg.tolerance));
    return os.str();
}

int run_command(const ParsedConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
    case Command::dispersion: return cmd_dispersion(cfg, out);
    case Command::matrix: return cmd_matrix(cfg, out);
    case Command::simulate: return cmd_simulate(cfg, out);
    case Command::kernel: return cmd_kernel(cfg, out);
    case Command::reconstruct: return cmd_reconstruct(cfg, out);
    case Command::gaussian: return cmd_gaussian(cfg, out);
    case Command::validate: return cmd_validate(cfg, out, err);
    }
    throw ConfigError("unknown command");
}

} // namespace nlchain

#include "CLI11.hpp"

namespace nlchain {

int run_main(int argc, char** argv) {
    CLI::App app{"nonlocal harmonic chain toolkit"};
    app.name("nlchain");
    std::string config_path;
    std::string output_path;
    std::string command_override;
    double tolerance = 0;
    app.add_option("--config", config_path, "key=value or JSON config file")->required();
    app.add_option("--output", output_path, "write the report to this file instead of stdout");
    CLI::Option* cmd_opt =
        app.add_option("--command", command_override, "override the config's command");
    CLI::Option* tol_opt =
        app.add_option("--tolerance", tolerance, "override the validation tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        ParsedConfig cfg = parse_config_file(config_path);
        if (cmd_opt->count() > 0) cfg.command = parse_command_name(command_override);
        if (tol_opt->count() > 0) {
            if (!(tolerance > 0)) throw ConfigError("--tolerance must be positive");
            cfg.tolerance = tolerance;
        }

        // render everything first so failures never leave partial output and
        // identical configs yield byte-identical files
        std::ostringstream buffer;
        const int code = run_command(cfg, buffer, std::cerr);
        if (!output_path.empty()) {
            std::ofstream out(output_path, std::ios::binary);
            if (!out) throw ConfigError("cannot open output file '" + output_path + "'");
            out << buffer.str();
            out.flush();
            if (!out) throw ConfigError("failed writing output file '" + output_path + "'");
        } else {
            std::cout << buffer.str();
        }
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const TranslationalInvarianceViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const AdmissibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) { // truncation/synthesis/quadrature/stability
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace nlchain
