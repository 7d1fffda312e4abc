"""Construction of named pure states, Haar-random sampling, and state files.

The computational basis is lexicographic with subsystem 0 as the leftmost
tensor factor; spin-up in the three-qubit family constructors maps to |0>.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import StateFormatError
from .linalg import DensityMatrix, partial_trace

__all__ = [
    "PureState",
    "WParams",
    "ghz",
    "w",
    "bell_like",
    "haar_random",
    "load_state",
    "save_state",
]

NORM_TOL = 1e-10
FILE_NORM_TOL = 1e-6   # looser on ingest; states are re-normalized after the check


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector with its subsystem dimensions."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if any(d < 1 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
        if int(np.prod(dims)) != amps.size:
            raise ValueError(
                f"dims {dims} imply {int(np.prod(dims))} amplitudes, got {amps.size}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm must be 1 within 1e-10, got {norm}")

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def reduced(self, keep) -> DensityMatrix:
        """Reduced density matrix over the kept subsystems (order preserved)."""
        keep = sorted({int(k) for k in keep})
        n = len(self.dims)
        if not keep or keep[0] < 0 or keep[-1] >= n:
            raise ValueError(f"bad subsystem subset {keep} for {n} subsystems")
        if len(keep) == n:
            return self.to_density()
        rest = [i for i in range(n) if i not in keep]
        t = self.amplitudes.reshape(self.dims).transpose(keep + rest)
        d_keep = int(np.prod([self.dims[i] for i in keep]))
        m = t.reshape(d_keep, -1)
        return DensityMatrix(m @ m.conj().T, tuple(self.dims[i] for i in keep))


@dataclass(frozen=True)
class WParams:
    """Angle parameterization of the single-excitation three-qubit family.

    alpha = sin(theta) cos(phi), beta = sin(theta) sin(phi), gamma = cos(theta),
    so |alpha|^2 + |beta|^2 + |gamma|^2 = 1 identically.
    """

    theta: float
    phi: float

    @property
    def alpha(self) -> float:
        return math.sin(self.theta) * math.cos(self.phi)

    @property
    def beta(self) -> float:
        return math.sin(self.theta) * math.sin(self.phi)

    @property
    def gamma(self) -> float:
        return math.cos(self.theta)


def ghz(theta_amp: complex, phi_amp: complex) -> PureState:
    """Three-qubit state theta|000> + phi|111>; amplitudes may be complex."""
    t, p = complex(theta_amp), complex(phi_amp)
    if abs(abs(t) ** 2 + abs(p) ** 2 - 1.0) > NORM_TOL:
        raise ValueError("|theta|^2 + |phi|^2 must equal 1 within 1e-10")
    amps = np.zeros(8, dtype=complex)
    amps[0] = t
    amps[7] = p
    return PureState(amps, (2, 2, 2))


def w(params: WParams) -> PureState:
    """Three-qubit state alpha|001> + beta|010> + gamma|100>."""
    amps = np.zeros(8, dtype=complex)
    amps[1] = params.alpha
    amps[2] = params.beta
    amps[4] = params.gamma
    return PureState(amps, (2, 2, 2))


def balanced_w() -> PureState:
    """The symmetric point alpha = beta = gamma = 1/sqrt(3)."""
    return w(WParams(theta=math.acos(1.0 / math.sqrt(3.0)), phi=math.pi / 4.0))


def bell_like(a: float) -> PureState:
    """Two-qubit state a|00> + sqrt(1-a^2)|11>, 0 <= a <= 1."""
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"amplitude a must lie in [0, 1], got {a}")
    amps = np.zeros(4, dtype=complex)
    amps[0] = a
    amps[3] = math.sqrt(1.0 - a * a)
    return PureState(amps, (2, 2))


def haar_random(dims, seed: int) -> PureState:
    """Haar-random pure state: normalized i.i.d. standard complex Gaussians."""
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims):
        raise ValueError(f"all subsystem dimensions must be >= 2, got {dims}")
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(z / np.linalg.norm(z), dims)


def load_state(path) -> PureState:
    """Load a pure state from the JSON state-file schema.

    Schema: {"dims": [int, ...], "amplitudes": [[re, im], ...]} with amplitudes
    in lexicographic basis order and count equal to the product of dims.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise StateFormatError(f"{path}: top level must be an object")
    for key in ("dims", "amplitudes"):
        if key not in doc:
            raise StateFormatError(f"{path}: missing field '{key}'")
    dims = doc["dims"]
    if (not isinstance(dims, list) or not dims
            or any(not isinstance(d, int) or d < 1 for d in dims)):
        raise StateFormatError(f"{path}: field 'dims' must be a list of positive integers")
    raw = doc["amplitudes"]
    if not isinstance(raw, list):
        raise StateFormatError(f"{path}: field 'amplitudes' must be a list of [re, im] pairs")
    expected = int(np.prod(dims))
    if len(raw) != expected:
        raise StateFormatError(
            f"{path}: dims {dims} require {expected} amplitudes, file has {len(raw)}"
        )
    amps = np.empty(expected, dtype=complex)
    for i, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or any(not isinstance(x, (int, float)) for x in pair)):
            raise StateFormatError(
                f"{path}: amplitude {i} must be a [re, im] pair of numbers, got {pair!r}"
            )
        amps[i] = complex(pair[0], pair[1])
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > FILE_NORM_TOL:
        raise StateFormatError(
            f"{path}: state norm is {norm:.9g}, further than 1e-6 from 1"
        )
    return PureState(amps / norm, tuple(dims))


def save_state(state: PureState, path) -> None:
    """Write a pure state in the JSON state-file schema (full precision)."""
    doc = {
        "dims": list(state.dims),
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def reduced_pair(state: PureState, first: int, second: int) -> DensityMatrix:
    """Two-party reduction with the factors ordered (first, second)."""
    if first == second:
        raise ValueError("pair parties must differ")
    rho = state.reduced({first, second})
    if first > second:
        from .linalg import permute_subsystems

        rho = permute_subsystems(rho, (1, 0))
    return rho


def partial_trace_pure(state: PureState, keep) -> DensityMatrix:
    """Alias for state.reduced(keep); mirrors linalg.partial_trace."""
    return state.reduced(keep)


def density_pair(rho: DensityMatrix, first: int, second: int) -> DensityMatrix:
    """Two-party reduction of a density matrix, factors ordered (first, second)."""
    if first == second:
        raise ValueError("pair parties must differ")
    sub = partial_trace(rho, {first, second})
    if first > second:
        from .linalg import permute_subsystems

        sub = permute_subsystems(sub, (1, 0))
    return sub
