"""Entanglement of formation, concurrence, and the squared-concurrence tangle.

Two-qubit EOF comes from the spin-flip concurrence in closed form. EOF between
a qubit and a higher-dimensional party is obtained through the Koashi-Winter
identity on a pure tripartite parent, never by convex-roof minimization.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnsupportedDimensionError
from .linalg import DensityMatrix, binary_entropy, von_neumann_entropy
from .states import PureState, reduced_pair
from .correlations import pair_report

__all__ = [
    "concurrence",
    "eof_two_qubit",
    "eof_pure_partition",
    "eof_koashi_winter",
    "concurrence_tangle",
]

_SY_SY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
SQRT_CLAMP = 1e-12  # near-zero negative eigenvalues of the spin-flip product


def _require_two_qubits(rho_pair: DensityMatrix) -> None:
    if rho_pair.dims != (2, 2):
        raise ValueError(f"expected a two-qubit state, got dims {rho_pair.dims}")


def concurrence(rho_pair: DensityMatrix) -> float:
    """Wootters concurrence max{0, l1 - l2 - l3 - l4} of a two-qubit state.

    The l_i are the descending square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), with the conjugate taken in the
    computational product basis.
    """
    _require_two_qubits(rho_pair)
    m = rho_pair.matrix
    tilde = _SY_SY @ m.conj() @ _SY_SY
    evals = np.linalg.eigvals(m @ tilde).real
    evals[np.abs(evals) < SQRT_CLAMP] = 0.0
    if evals.min() < -SQRT_CLAMP:
        evals = np.clip(evals, 0.0, None)
    lam = np.sort(np.sqrt(np.clip(evals, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def eof_two_qubit(rho_pair: DensityMatrix) -> float:
    """EOF in bits: h((1 + sqrt(1 - C^2)) / 2) with C the concurrence."""
    c = concurrence(rho_pair)
    return binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def eof_pure_partition(psi: PureState, party_set) -> float:
    """EOF across a bipartition of a pure state: the reduction's entropy."""
    party_set = sorted({int(p) for p in party_set})
    n = len(psi.dims)
    if not party_set or len(party_set) >= n:
        raise ValueError("party_set must be a nonempty proper subset of the subsystems")
    if party_set[0] < 0 or party_set[-1] >= n:
        raise ValueError(f"party index out of range in {party_set}")
    return von_neumann_entropy(psi.reduced(party_set))


def eof_koashi_winter(psi: PureState, pivot: int, partner: int) -> float:
    """EOF of the (pivot, partner) pair via the discord of (pivot, measured).

    For a pure tripartite state with third party M (the measured one):
    E(pivot, partner) = delta(pivot | measure M) - S(pivot | partner).
    Requires the measured party to be a qubit; this is what makes EOF between
    a qubit and an N-dimensional party computable.
    """
    if len(psi.dims) != 3:
        raise ValueError("state must be tripartite")
    if pivot == partner:
        raise ValueError("pivot and partner must differ")
    measured = ({0, 1, 2} - {pivot, partner}).pop()
    if psi.dims[measured] != 2:
        raise UnsupportedDimensionError(
            f"party {measured} has dimension {psi.dims[measured]}; no computable "
            "discord route for this pair"
        )
    rho = psi.to_density()
    delta = pair_report(rho, pivot, measured).discord
    s_pivot_partner = von_neumann_entropy(psi.reduced({pivot, partner}))
    s_partner = von_neumann_entropy(psi.reduced({partner}))
    return delta - (s_pivot_partner - s_partner)


def concurrence_tangle(psi: PureState) -> float:
    """Squared-concurrence residual 4 det(rho_A) - C_AB^2 - C_AC^2 (three qubits)."""
    if psi.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit pure state, got dims {psi.dims}")
    rho_a = psi.reduced({0}).matrix
    c_abc_sq = 4.0 * np.linalg.det(rho_a).real
    c_ab = concurrence(reduced_pair(psi, 0, 1))
    c_ac = concurrence(reduced_pair(psi, 0, 2))
    return float(c_abc_sq - c_ab * c_ab - c_ac * c_ac)
