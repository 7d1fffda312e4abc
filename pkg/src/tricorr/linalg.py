"""Dense complex linear algebra and entropy primitives.

Everything downstream (correlation measures, tangles, dynamics) is built on
the handful of operations here: Kronecker products, partial traces, Hermitian
eigendecompositions and von Neumann entropies of small (<= 16 x 16) density
matrices. All entropies are in bits (log base 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DensityMatrix",
    "Spectrum",
    "kron",
    "partial_trace",
    "permute_subsystems",
    "eig_hermitian",
    "von_neumann_entropy",
    "binary_entropy",
]

# Numerical tolerances, shared by the validation below and by tests.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10          # eigenvalues above -PSD_TOL are accepted and clamped
ENTROPY_EIG_CUTOFF = 1e-12   # |eigenvalue| below this contributes no entropy

_LOG2 = np.log(2.0)


def _as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """A density matrix together with its tensor-factor dimensions.

    Construction validates Hermiticity (1e-12), unit trace (1e-10) and
    positivity (eigenvalues >= -1e-10). Instances are immutable values.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError(f"density matrix must be square, got {m.shape}")
        if int(np.prod(dims)) != n:
            raise ValueError(f"dims {dims} do not multiply to matrix order {n}")
        if any(d < 1 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > HERMITICITY_TOL * scale:
            raise ValueError("matrix is not Hermitian within 1e-12")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1 within 1e-10, got {tr}")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -PSD_TOL:
            raise ValueError(f"negative eigenvalue {evals.min():.3e} below -1e-10")

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def subsystem_count(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (real, descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two complex matrices."""
    return np.kron(_as_complex_matrix(a), _as_complex_matrix(b))


def permute_subsystems(rho: DensityMatrix, perm) -> DensityMatrix:
    """Reorder the tensor factors of a density matrix.

    perm[i] names the old factor that lands at position i of the output.
    """
    dims = rho.dims
    n = len(dims)
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"perm {perm} is not a permutation of 0..{n - 1}")
    t = rho.matrix.reshape(dims + dims)
    axes = perm + tuple(n + p for p in perm)
    new_dims = tuple(dims[p] for p in perm)
    d = int(np.prod(new_dims))
    return DensityMatrix(t.transpose(axes).reshape(d, d), new_dims)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix over the kept subsystems.

    keep is a nonempty set of subsystem indices; the relative order of kept
    factors is preserved. Tracing nothing (keep = all) returns a copy.
    """
    dims = rho.dims
    n = len(dims)
    keep = sorted({int(k) for k in keep})
    if not keep:
        raise ValueError("keep must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"subsystem index out of range for {n} subsystems: {keep}")
    traced = [i for i in range(n) if i not in keep]
    t = rho.matrix.reshape(dims + dims)
    # contract each traced axis pair, back to front so axis numbers stay valid
    for i in reversed(traced):
        t = np.trace(t, axis1=i, axis2=i + (t.ndim // 2))
    kept_dims = tuple(dims[i] for i in keep)
    d = int(np.prod(kept_dims))
    return DensityMatrix(t.reshape(d, d), kept_dims)


def eig_hermitian(m, tol: float = 1e-10) -> Spectrum:
    """Full spectrum of a Hermitian matrix, eigenvalues descending.

    Raises ValueError if the input deviates from Hermiticity by more than
    tol relative to its largest entry.
    """
    a = _as_complex_matrix(m)
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.conj().T).max() > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(a)
    return Spectrum(evals[::-1].copy(), evecs[:, ::-1].copy())


def entropy_of_eigenvalues(evals: np.ndarray) -> float:
    """-sum p log2 p over a spectrum, with the zero-eigenvalue conventions.

    Eigenvalues with |lambda| < 1e-12 contribute zero; small negatives down to
    -1e-10 (numerical PSD slack) are clamped to zero.
    """
    evals = np.asarray(evals, dtype=float)
    if evals.min() < -PSD_TOL:
        raise ValueError(f"eigenvalue {evals.min():.3e} below PSD slack -1e-10")
    p = evals[np.abs(evals) >= ENTROPY_EIG_CUTOFF]
    p = p[p > 0]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log(p)).sum() / _LOG2)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in bits, in [0, log2(order)]."""
    return entropy_of_eigenvalues(np.linalg.eigvalsh(rho.matrix))


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with h(0) = h(1) = 0.

    No interior cutoff: values like h(1 - 1e-15) stay positive, which the
    dynamics zero-touch detection relies on; only the exact endpoints clamp.
    """
    if p < 0.0 or p > 1.0:
        if -1e-12 < p < 0.0 or 1.0 < p < 1.0 + 1e-12:
            p = min(max(p, 0.0), 1.0)
        else:
            raise ValueError(f"probability out of range: {p}")
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-(p * np.log(p) + (1.0 - p) * np.log(1.0 - p)) / _LOG2)
