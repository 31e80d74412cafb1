// End-to-end acceptance harness: twelve numbered checks covering assembly,
// spectra, energies, dynamics, the gaussian benchmark, the long-wave limit,
// reconstruction and CLI determinism. Prints exactly one PASS/FAIL line per
// check (details go to stderr) and exits nonzero if any check fails.
//
// usage: acceptance <path-to-cli-binary> <path-to-config-dir>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "nlchain/chain.hpp"
#include "nlchain/cli.hpp"
#include "nlchain/continuum.hpp"
#include "nlchain/dynamics.hpp"
#include "nlchain/errors.hpp"
#include "nlchain/inverse.hpp"
#include "nlchain/spectral.hpp"

using namespace nlchain;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& message) { throw std::runtime_error(message); }

void expect(bool condition, const std::string& message) {
    if (!condition) fail(message);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// random admissible polynomial band, admissible by construction:
// f(lambda) >= lambda (Omega_1^2 - sum_{m>=2} mag_m 4^{m-1}) with the sum
// capped at Omega_1^2 / 2; the top order is always present (wrap coverage)
// mixed signs are admissible on the discrete window; all-positive specs are in
// addition stable in the long-wave limit (f~ > 0 on the whole half-line)
enum class SignPolicy { mixed, positive };

CharacteristicSpec random_spec(std::mt19937_64& rng, int max_order,
                               SignPolicy policy = SignPolicy::mixed) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Term> terms;
    const double omega1 = 0.5 + u01(rng);
    terms.push_back(Term{1, 1, omega1});
    if (max_order >= 2) {
        const int extra = max_order - 1;
        for (int m = 2; m <= max_order; ++m) {
            int sign = (u01(rng) < 0.5) ? -1 : 1;
            if (policy == SignPolicy::positive) sign = 1;
            const double cap = omega1 / (2.0 * extra * pow_int(4.0, m - 1));
            const double frac = (m == max_order) ? (0.2 + 0.8 * u01(rng)) : u01(rng);
            terms.push_back(Term{m, sign, frac * cap});
        }
    }
    return CharacteristicSpec::explicit_terms(terms);
}

int top_order(const CharacteristicSpec& spec) {
    int m = 0;
    for (const Term& t : spec.stored_terms()) m = std::max(m, t.order);
    return m;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_row_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// ---- criterion bodies ------------------------------------------------------

void criterion_next_neighbor() {
    for (double omega_sq : {1.0, 2.25}) {
        for (double mu : {1.0, 1.7}) {
            const auto spec = CharacteristicSpec::explicit_terms({{1, 1, omega_sq}});
            for (int n : {3, 8, 64}) {
                const ChainConfig chain = ChainConfig::with_mass(n, 1.0, mu);
                const auto lap = build_laplacian(spec, chain);
                const std::vector<double>& row = lap.first_row();
                const double coef = mu * omega_sq;
                expect(row[0] == -(coef * 2.0), "row[0] != -2 mu Omega^2 exactly");
                expect(row[1] == coef, "row[1] != mu Omega^2 exactly");
                expect(row[n - 1] == coef, "row[N-1] != mu Omega^2 exactly");
                for (int j = 2; j < n - 1; ++j)
                    expect(row[j] == 0.0, "interior row entry is not exactly zero");

                const std::vector<double> eig = eigenvalues(lap);
                const double scale = 4.0 * coef;
                for (int s = 0; s < n; ++s) {
                    const double sinv = std::sin(kPi * s / n);
                    const double want = -scale * sinv * sinv;
                    expect(std::abs(eig[s] - want) <= 1e-12 * scale,
                           "eigenvalue " + std::to_string(s) + " off by " +
                               fmt(std::abs(eig[s] - want)));
                }
            }
        }
    }
}

void criterion_equivalence_triangle() {
    std::mt19937_64 rng(20240811);
    // (n, max order); the first three wrap the stencil around the ring (2m >= N)
    const std::vector<std::pair<int, int>> cases = {
        {8, 6},  {5, 3},  {3, 2},  {4, 6},  {6, 4},  {12, 6}, {16, 5},
        {24, 6}, {32, 4}, {48, 6}, {64, 6}, {9, 5},  {10, 6}, {14, 3},
        {20, 2}, {28, 5}, {36, 6}, {44, 4}, {52, 3}, {60, 6}};
    int wrap_cases = 0;
    for (const auto& [n, max_order] : cases) {
        const CharacteristicSpec spec = random_spec(rng, max_order);
        const int m = top_order(spec);
        if (2 * m >= n) ++wrap_cases;
        const ChainConfig chain =
            ChainConfig::with_mass(n, 1.0, 0.5 + 1.5 * (n % 7) / 7.0);

        const auto direct = build_laplacian(spec, chain);
        const auto synth = synthesize_laplacian(spec, chain);
        std::vector<double> contour(n, 0.0);
        for (int j = 0; j < n; ++j) {
            for (int k = -25; k <= 25; ++k) {
                const long offset = static_cast<long>(j) + static_cast<long>(k) * n;
                if (std::llabs(offset) <= m)
                    contour[j] +=
                        infinite_chain_element(spec, chain, static_cast<int>(offset));
            }
        }
        const double scale = max_abs(direct.first_row());
        const double d_s = max_row_gap(direct.first_row(), synth.first_row());
        const double d_c = max_row_gap(direct.first_row(), contour);
        const double s_c = max_row_gap(synth.first_row(), contour);
        const double worst = std::max({d_s, d_c, s_c});
        expect(worst <= 1e-9 * scale, "triangle mismatch " + fmt(worst / scale) +
                                          " (n=" + std::to_string(n) + ")");
    }
    expect(wrap_cases >= 3, "not enough wrap-around cases generated");
}

void criterion_infinite_elements() {
    const auto spec = CharacteristicSpec::explicit_terms({{1, 1, 1.0}});
    const ChainConfig chain = ChainConfig::with_mass(8, 1.0, 1.0);
    const double e0 = infinite_chain_element(spec, chain, 0);
    const double e1 = infinite_chain_element(spec, chain, 1);
    const double e2 = infinite_chain_element(spec, chain, 2);
    expect(std::abs(e0 + 2.0) <= 1e-10, "element(0) != -2: " + fmt(e0));
    expect(std::abs(e1 - 1.0) <= 1e-10, "element(1) != 1: " + fmt(e1));
    expect(std::abs(e2) <= 1e-10, "element(2) != 0: " + fmt(e2));
}

void criterion_energy_equivalence() {
    std::mt19937_64 rng(515);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int n = 32;
    for (int s = 0; s < 5; ++s) {
        const CharacteristicSpec spec = random_spec(rng, 2 + (s % 5));
        const ChainConfig chain = ChainConfig::with_mass(n, 1.0, 0.8 + 0.1 * s);
        const auto lap = build_laplacian(spec, chain);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> u(n);
            for (double& x : u) x = dist(rng);
            const double diff_form = elastic_energy_difference_form(spec, chain, u);
            const std::vector<double> lu = lap.apply(u);
            double bilinear = 0;
            for (int p = 0; p < n; ++p) bilinear += u[p] * lu[p];
            bilinear *= -0.5;
            expect(std::abs(diff_form - bilinear) <=
                       1e-12 * std::max(std::abs(bilinear), 1.0),
                   "energy mismatch " + fmt(std::abs(diff_form - bilinear)));
        }
    }
}

void criterion_conservation() {
    const auto spec = CharacteristicSpec::gaussian_family(1.0, 1.0, 1.0, 40);
    const ChainConfig chain = ChainConfig::with_density(32, 1.0, 1.0);
    const auto lap = build_laplacian(spec, chain);

    double omega_sq_min = std::numeric_limits<double>::infinity();
    double omega_sq_max = 0;
    for (int s = 1; s < chain.n; ++s) {
        const double w2 = -lap.eigenvalues()[s] / chain.mass;
        omega_sq_min = std::min(omega_sq_min, w2);
        omega_sq_max = std::max(omega_sq_max, w2);
    }

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DisplacementState initial;
    initial.u.resize(chain.n);
    initial.v.resize(chain.n);
    for (double& x : initial.u) x = dist(rng);
    for (double& x : initial.v) x = dist(rng) + 0.4; // nonzero momentum

    // exact propagator across 100 fundamental periods, sampled ten times
    const double horizon = 100.0 * 2.0 * kPi / std::sqrt(omega_sq_min);
    const EnergyBreakdown e0 = total_energy(initial, lap);
    const double p0 = total_momentum(initial, lap);
    for (int sample = 1; sample <= 10; ++sample) {
        const DisplacementState st = evolve_exact(initial, lap, horizon * sample / 10.0, 1);
        const EnergyBreakdown e = total_energy(st, lap);
        expect(std::abs(e.total - e0.total) <= 1e-12 * e0.total,
               "exact energy drift " + fmt(std::abs(e.total - e0.total) / e0.total));
        expect(std::abs(total_momentum(st, lap) - p0) <= 1e-12 * std::abs(p0),
               "exact momentum drift");
    }

    // verlet: 1e5 steps at dt = 0.1/omega_max; the energy error of a
    // symplectic integrator oscillates at O((omega dt)^2) ~ 1e-3, so "drift"
    // is the secular trend: windowed means at the start and end of the run
    const double dt = 0.1 / std::sqrt(omega_sq_max);
    const long total_steps = 100000;
    const long block = 100;
    std::vector<double> energies;
    energies.reserve(total_steps / block + 1);
    DisplacementState state = initial;
    energies.push_back(total_energy(state, lap).total);
    for (long done = 0; done < total_steps; done += block) {
        state = evolve_verlet(state, lap, dt, block);
        energies.push_back(total_energy(state, lap).total);
    }
    const size_t window = 100;
    double head = 0, tail = 0;
    for (size_t i = 0; i < window; ++i) {
        head += energies[i];
        tail += energies[energies.size() - 1 - i];
    }
    const double drift = std::abs(tail - head) / (window * e0.total);
    expect(drift < 1e-4, "verlet secular drift " + fmt(drift));
}

void criterion_gaussian_maximum() {
    // argmax on the pinned grid (spacing 2 pi / 1024) within one cell of the
    // closed-form location
    for (double gamma : {0.3, 1.0, 10.0}) {
        const GaussianBenchmark bench = GaussianBenchmark::from_gamma(gamma);
        const CriticalPoints cp = gaussian_critical_points(bench);
        expect(cp.has_interior_max, "expected an interior maximum");
        const double cell = 2.0 * kPi / 1024;
        int best = 0;
        double best_val = -1;
        for (int i = 0; i * cell <= kPi + 1e-15; ++i) {
            const double w2 = gaussian_dispersion(bench, std::min(i * cell, kPi));
            if (w2 > best_val) {
                best_val = w2;
                best = i;
            }
        }
        expect(std::abs(best * cell - cp.kappa_star) <= cell,
               "grid argmax off by " + fmt(std::abs(best * cell - cp.kappa_star)) +
                   " at gamma=" + fmt(gamma));
    }

    // closed-form value at gamma = 1 equals 1/e to 1e-12 ...
    const GaussianBenchmark unit = GaussianBenchmark::from_gamma(1.0);
    const CriticalPoints cp = gaussian_critical_points(unit);
    const double inv_e = 1.0 / std::numbers::e;
    expect(std::abs(cp.omega_sq_max - inv_e) <= 1e-12 * inv_e,
           "closed-form maximum " + fmt(cp.omega_sq_max));
    // ... and a fine grid maximum reproduces it to 1e-6 (the pinned 1024-cell
    // grid is too coarse for that bound: its best value sits ~6e-6 away, so
    // the value check samples at 2 pi / 16384 while the location check above
    // keeps the coarse grid)
    const double fine = 2.0 * kPi / 16384;
    double grid_max = 0;
    for (int i = 0; i * fine <= kPi + 1e-15; ++i)
        grid_max = std::max(grid_max, gaussian_dispersion(unit, std::min(i * fine, kPi)));
    expect(std::abs(grid_max - inv_e) <= 1e-6 * inv_e,
           "fine grid maximum off by " + fmt(std::abs(grid_max - inv_e)));

    // below the transition the band is monotone up to the zone edge
    const CriticalPoints none = gaussian_critical_points(GaussianBenchmark::from_gamma(0.1));
    expect(!none.has_interior_max, "gamma = 0.1 must not have an interior maximum");
}

void criterion_zone_edge_velocity() {
    std::mt19937_64 rng(4242);
    const ChainConfig chain = ChainConfig::with_mass(16, 1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const CharacteristicSpec spec = random_spec(rng, 1 + trial % 6);
        const double v = group_velocity(spec, chain, kPi);
        expect(std::abs(v) < 1e-10, "polynomial band: |v(pi)| = " + fmt(std::abs(v)));
    }
    for (double gamma : {0.1, 1.0, 10.0}) {
        const GaussianBenchmark bench = GaussianBenchmark::from_gamma(gamma);
        const double v = gaussian_group_velocity(bench, kPi);
        expect(std::abs(v) < 1e-10, "gaussian band: |v(pi)| = " + fmt(std::abs(v)));
    }
}

void criterion_moments() {
    const ContinuumKernelSpec kernel = ContinuumKernelSpec::gaussian(1.0, 1.0, 1.0);
    const double want[] = {0.0, 1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
    const MomentCheckResult zero = moment_check(kernel, 0);
    expect(std::abs(zero.lhs) < 1e-10, "zeroth moment " + fmt(zero.lhs));
    for (int m = 1; m <= 5; ++m) {
        const MomentCheckResult mc = moment_check(kernel, m);
        expect(std::abs(mc.rhs - want[m]) <= 1e-14 * want[m], "prediction mismatch");
        expect(std::abs(mc.lhs - want[m]) <= 1e-8 * want[m],
               "moment " + std::to_string(m) + " off by " +
                   fmt(std::abs(mc.lhs - want[m]) / want[m]));
    }
}

void criterion_reconstruction() {
    // polynomial bands: the round trip is bit-identical on binary spacings
    std::mt19937_64 rng(77);
    for (double h : {0.5, 1.0, 2.0}) {
        for (int trial = 0; trial < 5; ++trial) {
            const CharacteristicSpec spec =
                random_spec(rng, 1 + trial % 4, SignPolicy::positive);
            const ChainConfig chain = ChainConfig::with_mass(16, h, 1.3 * h);
            const DispersionTable forward = dispersion(spec, chain);
            const ContinuumKernelSpec kernel = renormalize(spec, chain);
            LongWaveData data;
            data.rho0 = kernel.rho0();
            data.spacing = h;
            data.n = chain.n;
            for (const ContinuumTerm& t : kernel.terms())
                data.terms.push_back(Term{t.order, t.sign, t.magnitude});
            for (int s = 0; s < chain.n; ++s) {
                const double recon = reconstruct_dispersion(data, s);
                expect(recon == forward.rows[s].omega_sq,
                       "round trip not bit-identical at s=" + std::to_string(s) +
                           ", h=" + fmt(h));
            }
        }
    }

    // gaussian band: series truncation at M = 40 reproduces the closed form
    const GaussianBenchmark bench = GaussianBenchmark::from_gamma(1.0);
    const LongWaveData data = gaussian_long_wave_data(bench, 64, 40);
    const DispersionTable recon = reconstruct_dispersion_table(data);
    for (const DispersionRow& row : recon.rows) {
        const double want = gaussian_dispersion(bench, row.kappa);
        expect(std::abs(row.omega_sq - want) <= 1e-10,
               "gaussian reconstruction off by " + fmt(std::abs(row.omega_sq - want)));
    }
}

void criterion_continuum_convergence() {
    const double k = 1.0;
    const GaussianBenchmark unit = GaussianBenchmark::from_gamma(1.0); // c0 = a = rho0 = 1
    const double target = (unit.c0 / unit.rho0) * k * k * std::exp(-unit.a * k * k);
    const auto discrete = [&](double h) {
        // same physical kernel sampled at spacing h (gamma = a/h^2), read at kappa = k h
        const GaussianBenchmark b = GaussianBenchmark::from_physical(1.0, 1.0, 1.0, h);
        return gaussian_dispersion(b, k * h);
    };
    const double e1 = std::abs(discrete(0.1) - target);
    const double e2 = std::abs(discrete(0.05) - target);
    const double e3 = std::abs(discrete(0.025) - target);
    const double o12 = std::log2(e1 / e2);
    const double o23 = std::log2(e2 / e3);
    expect(o12 >= 1.9, "observed order " + fmt(o12));
    expect(o23 >= 1.9, "observed order " + fmt(o23));
}

void criterion_limit_regimes() {
    const LimitRegimes weak = gaussian_limit_regimes(GaussianBenchmark::from_gamma(1e-4));
    expect(weak.max_rel_deviation_sine_square < 2e-3,
           "weak-limit deviation " + fmt(weak.max_rel_deviation_sine_square));

    const GaussianBenchmark strong = GaussianBenchmark::from_gamma(100.0);
    const CriticalPoints cp = gaussian_critical_points(strong);
    expect(cp.has_interior_max, "gamma = 100 must soften");
    expect(std::abs(cp.kappa_star - 0.1) / 0.1 < 0.01,
           "kappa* " + fmt(cp.kappa_star) + " vs 1/sqrt(gamma)");
    const double want = strong.v0 * strong.v0 / (strong.a * std::numbers::e);
    expect(std::abs(cp.omega_sq_max - want) <= 1e-12 * want,
           "strong-limit maximum " + fmt(cp.omega_sq_max));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& exe, const fs::path& config, const fs::path& out) {
    const std::string cmd = "'" + exe + "' --config '" + config.string() + "' --output '" +
                            out.string() + "' >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    expect(rc != -1, "could not spawn the cli");
    expect(WIFEXITED(rc), "cli terminated abnormally");
    return WEXITSTATUS(rc);
}

void criterion_cli_determinism(const std::string& exe, const std::string& config_dir) {
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(config_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".cfg" || ext == ".json") configs.push_back(entry.path());
    }
    std::sort(configs.begin(), configs.end());
    expect(!configs.empty(), "no bundled configs found in " + config_dir);

    const fs::path scratch =
        fs::temp_directory_path() / ("nlchain-accept-" + std::to_string(::getpid()));
    fs::create_directories(scratch);

    std::set<Command> covered;
    for (const fs::path& config : configs) {
        const ParsedConfig parsed = parse_config_file(config.string());
        covered.insert(parsed.command);
        const fs::path out1 = scratch / (config.filename().string() + ".1");
        const fs::path out2 = scratch / (config.filename().string() + ".2");
        const int rc1 = run_cli(exe, config, out1);
        const int rc2 = run_cli(exe, config, out2);
        expect(rc1 == 0, config.filename().string() + " exited " + std::to_string(rc1));
        expect(rc1 == rc2, "exit codes differ between runs");
        const std::string b1 = slurp(out1);
        const std::string b2 = slurp(out2);
        expect(!b1.empty(), config.filename().string() + " produced no output");
        expect(b1 == b2, config.filename().string() + " output differs between runs");
    }
    fs::remove_all(scratch);
    expect(covered.size() == 7, "bundled configs cover " + std::to_string(covered.size()) +
                                    " of 7 subcommands");
}

struct Criterion {
    int id;
    std::string label;
    double budget_seconds;
    std::function<void()> body;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <config-dir>\n";
        return 2;
    }
    const std::string exe = argv[1];
    const std::string config_dir = argv[2];

    const std::vector<Criterion> criteria = {
        {1, "next-neighbor recovery: exact row, sine-square eigenvalues", 1.0,
         criterion_next_neighbor},
        {2, "construction equivalence: build vs synthesis vs contour", 10.0,
         criterion_equivalence_triangle},
        {3, "infinite-chain elements of the next-neighbor band", 1.0,
         criterion_infinite_elements},
        {4, "difference-form energy equals bilinear energy", 5.0,
         criterion_energy_equivalence},
        {5, "conservation: exact propagator and verlet secular drift", 30.0,
         criterion_conservation},
        {6, "gaussian interior maximum: grid location and 1/e value", 2.0,
         criterion_gaussian_maximum},
        {7, "group velocity vanishes at the zone edge", 2.0, criterion_zone_edge_velocity},
        {8, "gaussian kernel moments match factorial coefficients", 5.0, criterion_moments},
        {9, "long-wave reconstruction round trip", 2.0, criterion_reconstruction},
        {10, "continuum convergence order in the sampling", 1.0,
         criterion_continuum_convergence},
        {11, "weak and strong nonlocality regimes", 1.0, criterion_limit_regimes},
        {12, "cli determinism across repeated runs", 5.0,
         [&] { criterion_cli_determinism(exe, config_dir); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && elapsed > c.budget_seconds) {
            ok = false;
            detail = "runtime " + fmt(elapsed) + " s exceeds budget " +
                     fmt(c.budget_seconds) + " s";
        }
        if (!ok) ++failures;
        std::printf("%s %2d %-60s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.label.c_str(),
                    elapsed);
        if (!ok) std::fprintf(stderr, "  criterion %d: %s\n", c.id, detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
