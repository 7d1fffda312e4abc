import math

import numpy as np
import pytest

from tricorr.states import PureState, balanced_w, bell_like, ghz, haar_random


@pytest.fixture
def balanced_ghz() -> PureState:
    return ghz(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))


@pytest.fixture
def balanced_w_state() -> PureState:
    return balanced_w()


@pytest.fixture
def product_state() -> PureState:
    return ghz(1.0, 0.0)


@pytest.fixture
def bell_pair() -> PureState:
    return bell_like(1.0 / math.sqrt(2.0))


def haar_states(dims, seeds):
    return [haar_random(dims, s) for s in seeds]


def random_unitary(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
