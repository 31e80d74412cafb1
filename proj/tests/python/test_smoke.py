"""Smoke tests for the python bindings: one end-to-end pass per module."""

import math

import pytest

import nlchain as nl


def test_classical_chain_assembly_and_spectrum():
    spec = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0)])
    chain = nl.ChainConfig.with_mass(8, 1.0, 1.0)
    lap = nl.build_laplacian(spec, chain)
    assert lap.first_row == [-2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]

    table = nl.dispersion(spec, chain)
    edge = table.rows[4]
    assert edge.kappa == pytest.approx(math.pi)
    assert edge.omega_sq == pytest.approx(4.0, rel=1e-14)
    assert abs(edge.group_velocity) < 1e-10

    synth = nl.synthesize_laplacian(spec, chain)
    assert synth.first_row == pytest.approx(lap.first_row, abs=1e-12)


def test_admissibility_and_error_taxonomy():
    good = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0), nl.Term(2, -1, 0.24)])
    assert nl.validate_admissibility(good).ok

    bad = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0), nl.Term(2, -1, 0.26)])
    report = nl.validate_admissibility(bad)
    assert not report.ok and report.argmin == pytest.approx(4.0)
    chain = nl.ChainConfig.with_mass(8, 1.0, 1.0)
    with pytest.raises(nl.AdmissibilityError):
        nl.build_laplacian(bad, chain)

    with pytest.raises(nl.TranslationalInvarianceViolation):
        nl.CharacteristicSpec.explicit_terms([nl.Term(0, 1, 1.0)])

    assert issubclass(nl.AdmissibilityError, nl.Error)


def test_infinite_chain_elements_and_group_velocity():
    spec = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0)])
    chain = nl.ChainConfig.with_mass(16, 1.0, 1.0)
    assert nl.infinite_chain_element(spec, chain, 0) == pytest.approx(-2.0, abs=1e-10)
    assert nl.infinite_chain_element(spec, chain, 1) == pytest.approx(1.0, abs=1e-10)
    assert nl.infinite_chain_element(spec, chain, 2) == pytest.approx(0.0, abs=1e-10)
    assert nl.group_velocity(spec, chain, 0.0) == pytest.approx(1.0)


def test_dynamics_conservation_and_stability_gate():
    spec = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0), nl.Term(2, 1, 0.1)])
    chain = nl.ChainConfig.with_mass(16, 1.0, 1.3)
    lap = nl.build_laplacian(spec, chain)
    n = chain.n
    state = nl.DisplacementState(
        u=[math.cos(2 * math.pi * 2 * p / n) for p in range(n)],
        v=[0.3] * n,
    )
    e0 = nl.total_energy(state, lap)
    p0 = nl.total_momentum(state, lap)
    later = nl.evolve_exact(state, lap, 7.31, 5)
    e1 = nl.total_energy(later, lap)
    assert e1.total == pytest.approx(e0.total, rel=1e-12)
    assert nl.total_momentum(later, lap) == pytest.approx(p0, rel=1e-12)
    assert later.time == pytest.approx(7.31 * 5)

    marched = nl.evolve_verlet(state, lap, 0.05, 200)
    assert nl.total_energy(marched, lap).total == pytest.approx(e0.total, rel=1e-3)
    with pytest.raises(nl.StabilityError):
        nl.evolve_verlet(state, lap, 10.0, 1)


def test_continuum_limit_and_moments():
    spec = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0), nl.Term(2, 1, 0.05)])
    chain = nl.ChainConfig.with_mass(24, 0.5, 0.5)
    kernel = nl.renormalize(spec, chain)
    klass = nl.classify_nonlocality(kernel)
    assert not klass.strong and klass.max_order == 2
    k = 0.7
    assert kernel.rho0 * nl.continuum_dispersion(kernel, k) == pytest.approx(
        k * k * nl.modulus_transform(kernel, k), rel=1e-14
    )

    gauss = nl.ContinuumKernelSpec.gaussian(1.0, 1.0, 1.0)
    assert nl.classify_nonlocality(gauss).strong
    assert nl.gaussian_kernel_realspace(1.0, 1.0, 0.0) == pytest.approx(
        1.0 / math.sqrt(4 * math.pi), rel=1e-15
    )
    mc = nl.moment_check(gauss, 3)
    assert mc.rhs == pytest.approx(0.5, rel=1e-14)
    assert mc.lhs == pytest.approx(0.5, rel=1e-8)


def test_gaussian_benchmark_and_reconstruction():
    bench = nl.GaussianBenchmark.from_gamma(1.0)
    cp = nl.gaussian_critical_points(bench)
    assert cp.has_interior_max
    assert cp.kappa_star == pytest.approx(math.pi / 3, rel=1e-14)
    assert cp.omega_sq_max == pytest.approx(1.0 / math.e, rel=1e-14)
    assert abs(nl.gaussian_group_velocity(bench, cp.kappa_star)) < 1e-14

    data = nl.gaussian_long_wave_data(bench, 32, 40)
    table = nl.reconstruct_dispersion_table(data)
    for row in table.rows:
        assert row.omega_sq == pytest.approx(
            nl.gaussian_dispersion(bench, row.kappa), abs=1e-10
        )

    spec = nl.CharacteristicSpec.explicit_terms([nl.Term(1, 1, 1.0)])
    chain = nl.ChainConfig.with_mass(16, 0.5, 0.65)
    kernel = nl.renormalize(spec, chain)
    data = nl.LongWaveData(
        rho0=kernel.rho0,
        spacing=chain.spacing,
        n=chain.n,
        terms=[nl.Term(t.order, t.sign, t.magnitude) for t in kernel.terms],
    )
    forward = nl.dispersion(spec, chain)
    for s in range(chain.n):
        assert nl.reconstruct_dispersion(data, s) == forward.rows[s].omega_sq
