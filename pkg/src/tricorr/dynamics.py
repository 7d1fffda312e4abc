"""Two qubits under independent zero-temperature amplitude-damping channels.

Each qubit couples resonantly to its own Lorentzian bath. The reduced dynamics
is fully set by the decay amplitude G(t) solving the exponential-memory-kernel
equation G'(t) = -(gamma0*lam/2) * integral_0^t exp(-lam (t-s)) G(s) ds with
G(0) = 1, whose closed form is

    G(t) = exp(-lam t / 2) [cosh(d t / 2) + (lam / d) sinh(d t / 2)],
    d = sqrt(lam^2 - 2 gamma0 lam),

with the hyperbolic pair turning into cos/sin of Omega = sqrt(2 gamma0 lam -
lam^2) in the underdamped regime lam < 2 gamma0. G is real and its sign is
kept (it enters the dilation rotation angle); populations depend on G^2 only.

The four-qubit dilation (one environment qubit per system qubit) is merged
into a single dimension-4 party, giving a pure (2, 2, 4) state whose reduction
reproduces the channel output exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import eof_two_qubit
from .linalg import DensityMatrix, kron
from .monogamy import tau_total_22n
from .states import PureState, bell_like

__all__ = [
    "DampingParams",
    "DynamicsTrace",
    "decay_amplitude",
    "evolve_pair",
    "purified_tripartite",
    "scan",
    "death_intervals",
    "isolated_zero_indices",
]

EOF_ZERO_TOL = 1e-9     # an EOF sample below this counts as a zero touch
DEATH_MIN_RUN = 3       # consecutive clamped-zero samples forming an interval


@dataclass(frozen=True)
class DampingParams:
    """Bath and initial-state parameters.

    gamma0 sets the system time scale (tau_R ~ 1/gamma0), lam the reservoir
    correlation time (tau_B ~ 1/lam), a the initial amplitude of |00> in
    a|00> + sqrt(1-a^2)|11>.
    """

    gamma0: float
    lam: float
    a: float

    def __post_init__(self):
        if self.gamma0 <= 0.0 or self.lam <= 0.0:
            raise ValueError("gamma0 and lam must be positive rates")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"initial amplitude a must lie in [0, 1], got {self.a}")


@dataclass(frozen=True)
class DynamicsTrace:
    """Time series of the damping run (all arrays share the time grid)."""

    params: DampingParams
    times: np.ndarray
    g: np.ndarray
    eof_ab: np.ndarray
    delta_ab: np.ndarray
    delta_ba: np.ndarray
    j_ab: np.ndarray
    j_ba: np.ndarray
    tau_a: np.ndarray
    tau_b: np.ndarray
    tau_c: np.ndarray
    tau_total: np.ndarray

    def __len__(self) -> int:
        return len(self.times)


def decay_amplitude(t: float, p: DampingParams) -> float:
    """Closed-form G(t) for the resonant Lorentzian bath; G(0) = 1."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    lam, g0 = p.lam, p.gamma0
    x = lam * (lam - 2.0 * g0)
    half_t = 0.5 * t
    if abs(lam - 2.0 * g0) < 1e-12 * (lam + 2.0 * g0):
        return math.exp(-lam * half_t) * (1.0 + lam * half_t)
    if x > 0.0:
        d = math.sqrt(x)
        # overflow-safe split of exp(-lam t/2) cosh/sinh(d t/2); d < lam here
        return 0.5 * ((1.0 + lam / d) * math.exp(-(lam - d) * half_t)
                      + (1.0 - lam / d) * math.exp(-(lam + d) * half_t))
    omega = math.sqrt(-x)
    return math.exp(-lam * half_t) * (
        math.cos(omega * half_t) + (lam / omega) * math.sin(omega * half_t)
    )


def _kraus(g: float) -> tuple[np.ndarray, np.ndarray]:
    w = math.sqrt(max(0.0, 1.0 - g * g))
    k0 = np.array([[1.0, 0.0], [0.0, g]], dtype=complex)
    k1 = np.array([[0.0, w], [0.0, 0.0]], dtype=complex)
    return k0, k1


def evolve_pair(t: float, p: DampingParams) -> DensityMatrix:
    """State of the two qubits at time t: the damping map applied to each."""
    g = decay_amplitude(t, p)
    k0, k1 = _kraus(g)
    rho0 = bell_like(p.a).to_density().matrix
    out = np.zeros_like(rho0)
    for ka in (k0, k1):
        for kb in (k0, k1):
            op = kron(ka, kb)
            out += op @ rho0 @ op.conj().T
    return DensityMatrix(out, (2, 2))


def purified_tripartite(t: float, p: DampingParams) -> PureState:
    """Pure (2, 2, 4) dilation whose C-reduction equals evolve_pair(t, p).

    Party C merges the two environment qubits; its basis index is
    2 * (excitation of A's bath) + (excitation of B's bath).
    """
    g = decay_amplitude(t, p)
    w = math.sqrt(max(0.0, 1.0 - g * g))
    b = math.sqrt(max(0.0, 1.0 - p.a * p.a))
    amps = np.zeros((2, 2, 4), dtype=complex)
    amps[0, 0, 0] = p.a
    amps[1, 1, 0] = b * g * g
    amps[1, 0, 1] = b * g * w
    amps[0, 1, 2] = b * w * g
    amps[0, 0, 3] = b * w * w
    return PureState(amps.reshape(-1), (2, 2, 4))


def _scan_point(args) -> tuple:
    t, p = args
    g = decay_amplitude(t, p)
    psi = purified_tripartite(t, p)
    rep = tau_total_22n(psi)
    eof = eof_two_qubit(psi.reduced({0, 1}))
    return (
        g, eof,
        rep.discords["AB"], rep.discords["BA"],
        rep.classicals["AB"], rep.classicals["BA"],
        rep.tau_a, rep.tau_b, rep.tau_c, rep.tau_total,
    )


def scan(p: DampingParams, t_grid, jobs: int = 1) -> DynamicsTrace:
    """Per-time tangle report over an ascending time grid."""
    times = np.asarray(list(t_grid), dtype=float)
    if times.size == 0:
        raise ValueError("time grid must be nonempty")
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("time grid must be strictly ascending")
    if times[0] < 0.0:
        raise ValueError("times must be nonnegative")
    work = [(float(t), p) for t in times]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_point, work, chunksize=32))
    else:
        rows = [_scan_point(item) for item in work]
    cols = np.array(rows, dtype=float).T
    return DynamicsTrace(
        params=p, times=times,
        g=cols[0], eof_ab=cols[1],
        delta_ab=cols[2], delta_ba=cols[3],
        j_ab=cols[4], j_ba=cols[5],
        tau_a=cols[6], tau_b=cols[7], tau_c=cols[8], tau_total=cols[9],
    )


def death_intervals(trace: DynamicsTrace, min_run: int = DEATH_MIN_RUN) -> list:
    """Index ranges [start, stop] where the EOF is dead over a full interval.

    A sample is dead when the concurrence clamps to exactly zero (the EOF is
    identically zero on a set of positive measure there); a mere dip of the
    EOF below the zero tolerance around an isolated zero does not qualify.
    """
    dead = trace.eof_ab == 0.0
    return [run for run in _runs(dead) if run[1] - run[0] + 1 >= min_run]


def isolated_zero_indices(
    trace: DynamicsTrace,
    zero_tol: float = EOF_ZERO_TOL,
    min_run: int = DEATH_MIN_RUN,
) -> list:
    """Sample indices of isolated EOF zero touches (outside death intervals).

    A touch is the minimum of a maximal sub-tolerance run that does not
    contain a death interval.
    """
    sub = trace.eof_ab < zero_tol
    exact = trace.eof_ab == 0.0
    out = []
    for start, stop in _runs(sub):
        run_exact = [r for r in _runs(exact[start:stop + 1])
                     if r[1] - r[0] + 1 >= min_run]
        if run_exact:
            continue
        out.append(start + int(np.argmin(trace.eof_ab[start:stop + 1])))
    return out


def _runs(mask: np.ndarray) -> list:
    """Maximal [start, stop] index runs of True in a boolean array."""
    runs = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))
    return runs
