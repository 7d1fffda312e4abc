import json
import math

import numpy as np
import pytest

from tricorr.errors import StateFormatError
from tricorr.linalg import von_neumann_entropy
from tricorr.states import (
    PureState,
    WParams,
    balanced_w,
    bell_like,
    ghz,
    haar_random,
    load_state,
    save_state,
    w,
)

H_ONE_THIRD = 0.9182958340544896


def test_ghz_product_limit():
    psi = ghz(1.0, 0.0)
    expected = np.zeros(8)
    expected[0] = 1.0
    assert np.allclose(psi.amplitudes, expected)


def test_ghz_balanced_pair_reduction(balanced_ghz):
    rho_ab = balanced_ghz.reduced({0, 1}).matrix
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    assert np.allclose(rho_ab, expected, atol=1e-12)


@pytest.mark.parametrize("a", [0.3, 0.6, 0.9])
def test_ghz_single_party_reduction(a):
    psi = ghz(a, math.sqrt(1.0 - a * a))
    rho_a = psi.reduced({0}).matrix
    assert np.allclose(rho_a, np.diag([a * a, 1.0 - a * a]), atol=1e-12)


def test_ghz_rejects_non_normalized():
    with pytest.raises(ValueError):
        ghz(1.0, 0.5)


def test_w_corner_is_product():
    psi = w(WParams(theta=0.0, phi=0.3))  # gamma = 1, alpha = beta = 0
    expected = np.zeros(8)
    expected[4] = 1.0
    assert np.allclose(psi.amplitudes, expected)


def test_w_balanced_reductions(balanced_w_state):
    for party in range(3):
        evs = np.sort(np.linalg.eigvalsh(balanced_w_state.reduced({party}).matrix))
        assert np.allclose(evs, [1.0 / 3.0, 2.0 / 3.0], atol=1e-12)


def test_w_support_structure():
    rng = np.random.default_rng(1)
    for theta, phi in rng.uniform(0.0, math.pi, size=(10, 2)):
        psi = w(WParams(theta, phi))
        assert psi.amplitudes[0] == 0.0 and psi.amplitudes[7] == 0.0


def test_w_params_normalized():
    p = WParams(0.7, 2.1)
    assert math.isclose(p.alpha**2 + p.beta**2 + p.gamma**2, 1.0, rel_tol=0, abs_tol=1e-15)


def test_bell_like_limits():
    assert np.allclose(bell_like(1.0).amplitudes, [1, 0, 0, 0])
    s = von_neumann_entropy(bell_like(1.0 / math.sqrt(2.0)).reduced({0}))
    assert np.isclose(s, 1.0, atol=1e-12)
    s3 = von_neumann_entropy(bell_like(1.0 / math.sqrt(3.0)).reduced({0}))
    assert np.isclose(s3, H_ONE_THIRD, atol=1e-12)


def test_bell_like_range():
    with pytest.raises(ValueError):
        bell_like(1.2)
    with pytest.raises(ValueError):
        bell_like(-0.1)


def test_haar_determinism():
    a = haar_random((2, 2, 2), 42)
    b = haar_random((2, 2, 2), 42)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    c = haar_random((2, 2, 2), 43)
    assert not np.allclose(a.amplitudes, c.amplitudes)


def test_haar_norm():
    for seed in range(50):
        psi = haar_random((2, 3), seed)
        assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12


def test_haar_mean_purity_matches_analytic():
    # single-qubit reduction of a Haar two-qubit state: E[Tr rho^2] = (dA+dB)/(dA*dB+1)
    rng_seeds = range(10_000)
    total = 0.0
    for seed in rng_seeds:
        rho = haar_random((2, 2), seed).reduced({0}).matrix
        total += np.trace(rho @ rho).real
    mean = total / 10_000
    assert abs(mean - 0.8) < 0.01


def test_haar_rejects_trivial_dims():
    with pytest.raises(ValueError):
        haar_random((2, 1), 0)


def test_state_roundtrip(tmp_path, balanced_ghz):
    path = tmp_path / "ghz.json"
    save_state(balanced_ghz, path)
    loaded = load_state(path)
    assert loaded.dims == balanced_ghz.dims
    assert np.abs(loaded.amplitudes - balanced_ghz.amplitudes).max() <= 1e-12


def test_state_roundtrip_complex(tmp_path):
    psi = haar_random((2, 2, 4), 5)
    path = tmp_path / "state.json"
    save_state(psi, path)
    loaded = load_state(path)
    assert np.abs(loaded.amplitudes - psi.amplitudes).max() <= 1e-12


def test_load_rejects_bad_norm(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dims": [2], "amplitudes": [[0.9, 0.0], [0.0, 0.0]]}))
    with pytest.raises(StateFormatError, match="norm"):
        load_state(path)


def test_load_renormalizes_mild_denormality(tmp_path):
    path = tmp_path / "mild.json"
    amp = math.sqrt(0.5) * (1.0 + 5e-8)
    path.write_text(json.dumps({"dims": [2], "amplitudes": [[amp, 0.0], [amp, 0.0]]}))
    psi = load_state(path)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12


def test_load_rejects_dims_mismatch(tmp_path):
    path = tmp_path / "mismatch.json"
    path.write_text(json.dumps({"dims": [2, 3], "amplitudes": [[1.0, 0.0]] * 5}))
    with pytest.raises(StateFormatError, match="5"):
        load_state(path)


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dims": [2], ')
    with pytest.raises(StateFormatError, match="line"):
        load_state(path)


def test_load_rejects_missing_field(tmp_path):
    path = tmp_path / "missing.json"
    path.write_text(json.dumps({"dims": [2]}))
    with pytest.raises(StateFormatError, match="amplitudes"):
        load_state(path)


def test_load_rejects_bad_amplitude_entry(tmp_path):
    path = tmp_path / "badamp.json"
    path.write_text(json.dumps({"dims": [2], "amplitudes": [[1.0, 0.0], "x"]}))
    with pytest.raises(StateFormatError, match="amplitude 1"):
        load_state(path)


def test_pure_state_validation():
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 1.0]), (2,))  # not normalized
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 0.0, 0.0]), (2,))  # dims mismatch


def test_balanced_w_is_symmetric_point(balanced_w_state):
    amps = balanced_w_state.amplitudes
    assert np.allclose(
        [amps[1], amps[2], amps[4]], [1.0 / math.sqrt(3.0)] * 3, atol=1e-12
    )
