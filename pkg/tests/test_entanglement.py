import math

import numpy as np
import pytest

from tricorr.entanglement import (
    concurrence,
    concurrence_tangle,
    eof_koashi_winter,
    eof_pure_partition,
    eof_two_qubit,
)
from tricorr.errors import UnsupportedDimensionError
from tricorr.linalg import DensityMatrix, kron, von_neumann_entropy
from tricorr.states import PureState, bell_like, ghz, haar_random

from conftest import random_unitary

EOF_C_TWO_THIRDS = 0.5500477595827576  # h((1 + sqrt(5)/3) / 2)


def w_pair_reduction() -> DensityMatrix:
    # explicit two-party reduction of the symmetric single-excitation state:
    # 1/3 |00><00| + 2/3 |psi+><psi+|
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0 / 3.0
    for i in (1, 2):
        for j in (1, 2):
            m[i, j] = 1.0 / 3.0
    return DensityMatrix(m, (2, 2))


def test_concurrence_bell(bell_pair):
    assert np.isclose(concurrence(bell_pair.to_density()), 1.0, atol=1e-12)


def test_concurrence_product():
    rho = DensityMatrix(kron(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])), (2, 2))
    assert concurrence(rho) == 0.0


def test_concurrence_w_pair_is_two_thirds(balanced_w_state):
    explicit = w_pair_reduction()
    assert np.isclose(concurrence(explicit), 2.0 / 3.0, atol=1e-12)
    assert np.isclose(
        concurrence(balanced_w_state.reduced({0, 1})), 2.0 / 3.0, atol=1e-12
    )


def test_concurrence_rejects_wrong_dims():
    rho = haar_random((2, 3), 0).to_density()
    with pytest.raises(ValueError):
        concurrence(rho)


def test_eof_monotone_endpoints(bell_pair):
    assert np.isclose(eof_two_qubit(bell_pair.to_density()), 1.0, atol=1e-12)
    rho = DensityMatrix(kron(np.diag([1.0, 0.0]), np.eye(2) / 2.0), (2, 2))
    assert eof_two_qubit(rho) == 0.0


def test_eof_w_pair_frozen_value(balanced_w_state):
    got = eof_two_qubit(balanced_w_state.reduced({0, 1}))
    assert np.isclose(got, EOF_C_TWO_THIRDS, atol=1e-12)


def test_eof_pure_partition_cases(balanced_ghz):
    assert eof_pure_partition(ghz(1.0, 0.0), {0}) <= 1e-12
    assert np.isclose(eof_pure_partition(balanced_ghz, {0}), 1.0, atol=1e-10)
    psi = haar_random((2, 2, 2), 3)
    assert np.isclose(
        eof_pure_partition(psi, {0, 1}), eof_pure_partition(psi, {2}), atol=1e-10
    )


def test_eof_pure_partition_rejects_degenerate_sets():
    psi = haar_random((2, 2, 2), 0)
    with pytest.raises(ValueError):
        eof_pure_partition(psi, set())
    with pytest.raises(ValueError):
        eof_pure_partition(psi, {0, 1, 2})


def test_koashi_winter_ghz_pair(balanced_ghz):
    assert abs(eof_koashi_winter(balanced_ghz, 0, 2)) <= 1e-7


def test_koashi_winter_product_split():
    # psi_A x (bell)_BC: no entanglement between A and C
    bell = bell_like(1.0 / math.sqrt(2.0)).amplitudes
    amps = np.kron(np.array([1.0, 0.0]), bell)
    psi = PureState(amps, (2, 2, 2))
    assert abs(eof_koashi_winter(psi, 0, 2)) <= 1e-7


def test_koashi_winter_matches_wootters_on_haar_states():
    worst = 0.0
    for seed in range(20):
        psi = haar_random((2, 2, 2), seed)
        for pivot, partner in ((0, 1), (0, 2), (1, 2)):
            kw = eof_koashi_winter(psi, pivot, partner)
            direct = eof_two_qubit(psi.reduced({pivot, partner}))
            worst = max(worst, abs(kw - direct))
    assert worst <= 5e-4


def test_koashi_winter_rejects_big_measured_party():
    psi = haar_random((2, 4, 2), 0)
    with pytest.raises(UnsupportedDimensionError):
        eof_koashi_winter(psi, 0, 2)  # measured party has dimension 4


def test_concurrence_tangle_ghz(balanced_ghz):
    # pairwise concurrences vanish, the pure-cut squared concurrence is 1
    assert concurrence(balanced_ghz.reduced({0, 1})) == 0.0
    assert concurrence(balanced_ghz.reduced({0, 2})) == 0.0
    assert np.isclose(concurrence_tangle(balanced_ghz), 1.0, atol=1e-12)


def test_concurrence_tangle_w_is_zero(balanced_w_state):
    # 4 det(rho_A) = 8/9 exactly cancels the two squared pair concurrences
    rho_a = balanced_w_state.reduced({0}).matrix
    assert np.isclose(4.0 * np.linalg.det(rho_a).real, 8.0 / 9.0, atol=1e-12)
    assert abs(concurrence_tangle(balanced_w_state)) <= 1e-12


def test_concurrence_tangle_product():
    assert abs(concurrence_tangle(ghz(1.0, 0.0))) <= 1e-12


def test_concurrence_tangle_nonnegative_on_haar_sample():
    for seed in range(200):
        assert concurrence_tangle(haar_random((2, 2, 2), seed)) >= -1e-8


def test_concurrence_tangle_rejects_wrong_shape():
    with pytest.raises(ValueError):
        concurrence_tangle(haar_random((2, 2, 4), 0))


def test_local_unitary_invariance():
    psi = haar_random((2, 2, 4), 8)
    rho = psi.reduced({0, 1})
    u = kron(random_unitary(2, 1), random_unitary(2, 2))
    rotated = DensityMatrix(u @ rho.matrix @ u.conj().T, (2, 2))
    assert abs(concurrence(rho) - concurrence(rotated)) <= 1e-8
    assert abs(eof_two_qubit(rho) - eof_two_qubit(rotated)) <= 1e-8


def test_eof_bounds():
    for seed in range(20):
        rho = haar_random((2, 2, 4), seed).reduced({0, 1})
        c = concurrence(rho)
        e = eof_two_qubit(rho)
        assert 0.0 <= c <= 1.0
        assert 0.0 <= e <= 1.0


def test_koashi_winter_equals_reduced_entropy_route(balanced_w_state):
    # for the symmetric single-excitation state the pair EOF is the frozen value
    got = eof_koashi_winter(balanced_w_state, 0, 2)
    assert abs(got - EOF_C_TWO_THIRDS) <= 5e-4
