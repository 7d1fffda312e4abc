import math

import numpy as np
import pytest

from tricorr.dynamics import (
    DampingParams,
    death_intervals,
    decay_amplitude,
    evolve_pair,
    isolated_zero_indices,
    purified_tripartite,
    scan,
)
from tricorr.linalg import von_neumann_entropy
from tricorr.states import bell_like

A_ESD = 1.0 / math.sqrt(3.0)       # exhibits an entanglement dead interval
A_ISOLATED = math.sqrt(2.0 / 3.0)  # EOF vanishes only at isolated times


def kernel_oracle(ts, gamma0, lam, h=0.002):
    """Fixed-step RK4 on G' = -(gamma0 lam / 2) z, z' = G - lam z, G(0)=1.

    Independent of the closed form: integrates the memory-kernel equation with
    the convolution folded into the auxiliary variable z.
    """
    g, z = 1.0, 0.0
    t_now = 0.0
    out = []

    def rhs(gv, zv):
        return -(gamma0 * lam / 2.0) * zv, gv - lam * zv

    for t in ts:
        steps = max(1, int(math.ceil((t - t_now) / h)))
        dt = (t - t_now) / steps if steps else 0.0
        for _ in range(steps):
            k1 = rhs(g, z)
            k2 = rhs(g + dt / 2 * k1[0], z + dt / 2 * k1[1])
            k3 = rhs(g + dt / 2 * k2[0], z + dt / 2 * k2[1])
            k4 = rhs(g + dt * k3[0], z + dt * k3[1])
            g += dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
            z += dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        out.append(g)
        t_now = t
    return np.array(out)


def test_params_validation():
    with pytest.raises(ValueError):
        DampingParams(0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        DampingParams(1.0, -1.0, 0.5)
    with pytest.raises(ValueError):
        DampingParams(1.0, 1.0, 1.5)


def test_decay_amplitude_initial_condition():
    p = DampingParams(1.0, 0.01, 0.5)
    assert decay_amplitude(0.0, p) == 1.0
    with pytest.raises(ValueError):
        decay_amplitude(-0.1, p)


def test_decay_amplitude_markovian_limit():
    p = DampingParams(1.0, 100.0, 0.5)
    for t in np.linspace(0.05, 5.0, 40):
        markov = math.exp(-t / 2.0)
        assert abs(decay_amplitude(t, p) - markov) / markov < 0.01


def test_decay_amplitude_oscillates_in_strong_coupling():
    p = DampingParams(1.0, 0.01, 0.5)
    omega = math.sqrt(2.0 * p.gamma0 * p.lam - p.lam**2)
    t_zero = 2.0 * (math.pi - math.atan(omega / p.lam)) / omega
    assert decay_amplitude(t_zero - 0.5, p) > 0.0
    assert decay_amplitude(t_zero + 0.5, p) < 0.0
    assert abs(decay_amplitude(t_zero, p)) < 5e-3


@pytest.mark.parametrize("lam", [0.01, 0.1, 100.0])
def test_decay_amplitude_matches_kernel_oracle(lam):
    p = DampingParams(1.0, lam, 0.5)
    ts = np.linspace(0.0, 50.0, 151)[1:]
    closed = np.array([decay_amplitude(t, p) for t in ts])
    oracle = kernel_oracle(ts, 1.0, lam)
    assert np.abs(closed - oracle).max() <= 1e-6


def test_decay_amplitude_critical_damping():
    p = DampingParams(1.0, 2.0, 0.5)  # lam = 2 gamma0
    for t in (0.3, 1.7, 6.0):
        expected = math.exp(-t) * (1.0 + t)
        assert abs(decay_amplitude(t, p) - expected) <= 1e-9


def test_evolve_pair_initial_state():
    p = DampingParams(1.0, 0.05, 0.7)
    rho0 = evolve_pair(0.0, p)
    assert np.allclose(rho0.matrix, bell_like(0.7).to_density().matrix, atol=1e-12)


def test_evolve_pair_full_decay_limit():
    p = DampingParams(1.0, 4.0, 0.4)  # overdamped, G -> 0 monotonically
    rho = evolve_pair(120.0, p).matrix
    assert abs(rho[0, 0].real - 1.0) <= 1e-10


@pytest.mark.parametrize("t", [0.7, 3.0, 11.0])
def test_evolve_pair_population_formula(t):
    a = 0.6
    p = DampingParams(1.0, 0.05, a)
    g = decay_amplitude(t, p)
    rho = evolve_pair(t, p).matrix
    assert abs(rho[3, 3].real - (1.0 - a * a) * g**4) <= 1e-12


def test_evolve_pair_is_valid_density_matrix_on_grid():
    p = DampingParams(1.0, 0.01, A_ESD)
    for t in np.linspace(0.0, 40.0, 25):
        evolve_pair(t, p)  # construction enforces the invariants


def test_purified_tripartite_initial_product():
    p = DampingParams(1.0, 0.01, 0.8)
    psi = purified_tripartite(0.0, p)
    expected = np.zeros(16, dtype=complex)
    expected[0] = 0.8
    expected[12] = math.sqrt(1.0 - 0.64)  # |11> x |ground>
    assert np.allclose(psi.amplitudes, expected, atol=1e-12)


def test_purified_tripartite_traces_to_channel_output():
    p = DampingParams(1.0, 0.01, A_ESD)
    rng = np.random.default_rng(17)
    for t in rng.uniform(0.0, 40.0, 20):
        direct = evolve_pair(float(t), p).matrix
        dilated = purified_tripartite(float(t), p).reduced({0, 1}).matrix
        assert np.abs(direct - dilated).max() <= 1e-10


def test_purified_tripartite_full_decay_puts_excitation_in_bath():
    p = DampingParams(1.0, 4.0, 0.4)
    psi = purified_tripartite(120.0, p)
    rho_ab = psi.reduced({0, 1}).matrix
    assert abs(rho_ab[0, 0].real - 1.0) <= 1e-10


def test_scan_grid_validation():
    p = DampingParams(1.0, 0.01, 0.5)
    with pytest.raises(ValueError):
        scan(p, [])
    with pytest.raises(ValueError):
        scan(p, [0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        scan(p, [-1.0, 0.0])


def test_scan_initial_record():
    p = DampingParams(1.0, 0.01, A_ESD)
    trace = scan(p, np.linspace(0.0, 2.0, 5))
    assert trace.g[0] == 1.0
    s_a = von_neumann_entropy(bell_like(A_ESD).reduced({0}))
    assert abs(trace.eof_ab[0] - s_a) <= 1e-9
    assert abs(trace.tau_total[0]) <= 1e-9


def test_scan_records_satisfy_tangle_identities():
    p = DampingParams(1.0, 0.01, A_ESD)
    trace = scan(p, np.linspace(0.0, 30.0, 40))
    total = trace.tau_a + trace.tau_b + trace.tau_c
    assert np.abs(total - trace.tau_total).max() <= 1e-6


def test_esd_regimes_and_tau_at_zero():
    grid = np.linspace(0.0, 40.0, 400)
    trace_a = scan(DampingParams(1.0, 0.01, A_ESD), grid)
    intervals = death_intervals(trace_a)
    assert intervals, "expected an entanglement dead interval"
    start, stop = intervals[0]
    assert stop - start + 1 >= 3
    assert not isolated_zero_indices(trace_a)

    trace_b = scan(DampingParams(1.0, 0.01, A_ISOLATED), grid)
    assert not death_intervals(trace_b)
    zeros = isolated_zero_indices(trace_b)
    assert zeros, "expected an isolated EOF zero"
    first = zeros[0]
    assert abs(trace_b.tau_a[first]) <= 2e-2
    assert trace_b.eof_ab[first] < 1e-9


def test_tau_total_becomes_positive_quickly():
    grid = np.linspace(0.0, 40.0, 200)
    for a in (A_ESD, A_ISOLATED):
        trace = scan(DampingParams(1.0, 0.01, a), grid)
        assert abs(trace.tau_total[0]) <= 1e-9
        onset_idx = int(np.argmax(trace.tau_total > 0.01))
        assert trace.tau_total[onset_idx] > 0.01
        assert trace.times[onset_idx] <= 10.0
        assert trace.tau_total[onset_idx:].min() >= -1e-6
