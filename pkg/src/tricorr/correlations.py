"""Mutual information, classical correlation, quantum discord and discrepancy.

Directional convention used across the package: a quantity X_AB ("A given a
measurement on B") conditions party A on rank-1 projective measurements of
party B. Measured parties must be qubits; higher-dimensional measured parties
are reached through the entanglement identities on a pure tripartite parent
instead of direct optimization.

The minimization of the measured conditional entropy runs a coarse Bloch-angle
grid (vectorized) followed by Nelder-Mead simplex refinement started from the
best grid cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, UnsupportedDimensionError
from .linalg import (
    DensityMatrix,
    entropy_of_eigenvalues,
    partial_trace,
    permute_subsystems,
    von_neumann_entropy,
)

__all__ = [
    "MeasurementBasis",
    "CorrelationReport",
    "mutual_information",
    "conditional_entropy",
    "measured_conditional_entropy",
    "classical_correlation",
    "discord",
    "discrepancy",
    "pair_report",
]

# Optimizer constants: coarse grid resolution, multi-start simplex refinement
# with an objective tolerance of 1e-8 and a hard evaluation cap.
GRID_SHAPE = (31, 62)
REFINE_STARTS = 3
REFINE_FTOL = 1e-8
REFINE_MAX_EVALS = 500
PROB_CUTOFF = 1e-12     # outcomes below this probability contribute nothing
DISCORD_CLAMP = 1e-9    # |negative discord| below this is roundoff -> 0

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective qubit basis from Bloch angles.

    |b0> = cos(t/2)|0> + e^{i p} sin(t/2)|1>,
    |b1> = sin(t/2)|0> - e^{i p} cos(t/2)|1>.
    """

    bloch_theta: float
    bloch_phi: float

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.bloch_theta / 2.0), math.sin(self.bloch_theta / 2.0)
        e = complex(math.cos(self.bloch_phi), math.sin(self.bloch_phi))
        return (np.array([c, e * s], dtype=complex),
                np.array([s, -e * c], dtype=complex))

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        v0, v1 = self.vectors()
        return np.outer(v0, v0.conj()), np.outer(v1, v1.conj())


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation quantities of one ordered pair, from a single run.

    Everything is in bits. measured_party is the index of the measured
    subsystem in the state the report was built from.
    """

    mutual_info: float
    classical: float
    discord: float
    discrepancy: float
    measured_cond_entropy: float
    optimal_basis: MeasurementBasis
    measured_party: int


def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map angles to theta in [0, pi], phi in [0, 2*pi) (same projectors)."""
    theta = theta % (2.0 * math.pi)
    if theta > math.pi:
        theta = 2.0 * math.pi - theta
        phi = phi + math.pi
    return theta, phi % (2.0 * math.pi)


def _binary_h(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    q = 1.0 - p
    return -(p * math.log(p) + q * math.log(q)) / _LOG2


class _MeasuredPair:
    """Measurement objective for a fixed pair state (conditioned, measured=qubit)."""

    def __init__(self, rho_pair: DensityMatrix, measured_party: int):
        if rho_pair.subsystem_count() != 2:
            raise ValueError("pair state must have exactly two subsystems")
        if measured_party not in (0, 1):
            raise ValueError(f"measured_party must be 0 or 1, got {measured_party}")
        if rho_pair.dims[measured_party] != 2:
            raise UnsupportedDimensionError(
                f"measured party has dimension {rho_pair.dims[measured_party]}; direct "
                "measurement optimization supports qubits only — use the "
                "Koashi-Winter / pure-parent identity route instead"
            )
        if measured_party == 0:
            rho_pair = permute_subsystems(rho_pair, (1, 0))
        self.d_a = rho_pair.dims[0]
        # R[i, b, j, bp]: conditioned indices i,j; measured indices b,bp
        self.tensor = rho_pair.matrix.reshape(self.d_a, 2, self.d_a, 2)
        if self.d_a == 2:
            self._flat = [complex(x) for x in self.tensor.reshape(-1)]

    # -- vectorized batch over measurement angles ---------------------------

    def batch_objective(self, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        c, s = np.cos(thetas / 2.0), np.sin(thetas / 2.0)
        e = np.exp(1j * phis)
        v0 = np.stack([c + 0j, e * s], axis=1)
        v1 = np.stack([s + 0j, -e * c], axis=1)
        total = np.zeros(thetas.shape[0])
        r = self.tensor.transpose(1, 3, 0, 2)  # [b, bp, i, j]
        for v in (v0, v1):
            m = np.einsum("nb,nc,bcij->nij", v.conj(), v, r, optimize=True)
            p = np.einsum("nii->n", m).real
            total += self._batch_outcome_entropy(m, p)
        return total

    def _batch_outcome_entropy(self, m: np.ndarray, p: np.ndarray) -> np.ndarray:
        ok = p > PROB_CUTOFF
        out = np.zeros_like(p)
        if not ok.any():
            return out
        if self.d_a == 2:
            det = (m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]).real
            x = np.zeros_like(p)
            x[ok] = np.clip(1.0 - 4.0 * det[ok] / p[ok] ** 2, 0.0, 1.0)
            mu = (1.0 + np.sqrt(x)) / 2.0
            h = np.zeros_like(p)
            inner = ok & (mu < 1.0 - 1e-15)
            mi = mu[inner]
            h[inner] = -(mi * np.log(mi) + (1 - mi) * np.log(1 - mi)) / _LOG2
            out[ok] = p[ok] * h[ok]
        else:
            cond = m[ok] / p[ok, None, None]
            evals = np.linalg.eigvalsh(cond)
            ev = np.clip(evals, 0.0, 1.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = np.where(ev > 1e-15, ev * np.log(ev), 0.0)
            out[ok] = p[ok] * (-terms.sum(axis=1) / _LOG2)
        return out

    # -- fast scalar objective for the simplex refinement -------------------

    def objective(self, theta: float, phi: float) -> float:
        if self.d_a != 2:
            t = np.array([theta])
            return float(self.batch_objective(t, np.array([phi]))[0])
        f = self._flat  # [i, b, j, bp] flattened: index = ((i*2 + b)*2 + j)*2 + bp
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        e = complex(math.cos(phi), math.sin(phi))
        total = 0.0
        for va, vb in ((c, e * s), (s, -e * c)):
            # va is real, vb complex; weights w[b,bp] = conj(v_b) v_bp
            w00 = va * va
            wab = va * vb
            wba = wab.conjugate()
            w11 = (vb * vb.conjugate()).real
            # M[i,j] = sum_{b,bp} conj(v_b) v_bp R[i,b,j,bp]
            m00 = w00 * f[0] + wab * f[1] + wba * f[4] + w11 * f[5]
            m01 = w00 * f[2] + wab * f[3] + wba * f[6] + w11 * f[7]
            m11 = w00 * f[10] + wab * f[11] + wba * f[14] + w11 * f[15]
            p = (m00 + m11).real
            if p <= PROB_CUTOFF:
                continue
            det = (m00 * m11 - m01 * m01.conjugate()).real
            x = 1.0 - 4.0 * det / (p * p)
            x = 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)
            total += p * _binary_h((1.0 + math.sqrt(x)) / 2.0)
        return total


def _nelder_mead_2d(fun, start, step, ftol, max_evals):
    """Minimal Nelder-Mead on two parameters. Returns (best_x, best_f, evals)."""
    pts = [np.array(start, dtype=float),
           np.array([start[0] + step[0], start[1]], dtype=float),
           np.array([start[0], start[1] + step[1]], dtype=float)]
    vals = [fun(p[0], p[1]) for p in pts]
    evals = 3
    while evals < max_evals:
        order = np.argsort(vals)
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        if vals[2] - vals[0] <= ftol:
            break
        centroid = (pts[0] + pts[1]) / 2.0
        xr = centroid + (centroid - pts[2])
        fr = fun(xr[0], xr[1]); evals += 1
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - pts[2])
            fe = fun(xe[0], xe[1]); evals += 1
            if fe < fr:
                pts[2], vals[2] = xe, fe
            else:
                pts[2], vals[2] = xr, fr
        elif fr < vals[1]:
            pts[2], vals[2] = xr, fr
        else:
            xc = centroid + 0.5 * (pts[2] - centroid)
            fc = fun(xc[0], xc[1]); evals += 1
            if fc < vals[2]:
                pts[2], vals[2] = xc, fc
            else:
                pts[1] = pts[0] + 0.5 * (pts[1] - pts[0])
                pts[2] = pts[0] + 0.5 * (pts[2] - pts[0])
                vals[1] = fun(pts[1][0], pts[1][1])
                vals[2] = fun(pts[2][0], pts[2][1])
                evals += 2
    i = int(np.argmin(vals))
    return pts[i], vals[i], evals


def _optimize_measurement(pair: _MeasuredPair) -> tuple[float, MeasurementBasis]:
    n_t, n_p = GRID_SHAPE
    thetas = np.linspace(0.0, math.pi, n_t)
    phis = np.linspace(0.0, 2.0 * math.pi, n_p, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    grid_vals = pair.batch_objective(tt.ravel(), pp.ravel())

    # multi-start from the best grid cells, kept apart by more than one cell
    order = np.argsort(grid_vals)
    d_t, d_p = math.pi / (n_t - 1), 2.0 * math.pi / n_p
    starts = []
    for idx in order:
        th, ph = tt.ravel()[idx], pp.ravel()[idx]
        if all(_angle_dist(th, ph, a, b) > 1.5 * max(d_t, d_p) for a, b in starts):
            starts.append((th, ph))
        if len(starts) == REFINE_STARTS:
            break

    best_f = float(grid_vals[order[0]])
    best_x = (float(tt.ravel()[order[0]]), float(pp.ravel()[order[0]]))
    per_start = REFINE_MAX_EVALS // REFINE_STARTS
    for th, ph in starts:
        x, f, _ = _nelder_mead_2d(
            pair.objective, (th, ph), (d_t / 2.0, d_p / 2.0),
            REFINE_FTOL, per_start,
        )
        if f < best_f:
            best_f, best_x = float(f), (float(x[0]), float(x[1]))
    theta, phi = _canonical_angles(*best_x)
    return best_f, MeasurementBasis(theta, phi)


def _angle_dist(t1, p1, t2, p2) -> float:
    dp = abs(p1 - p2) % (2.0 * math.pi)
    dp = min(dp, 2.0 * math.pi - dp)
    return max(abs(t1 - t2), dp)


# -- public operations ------------------------------------------------------


def _reduced(rho: DensityMatrix, keep) -> DensityMatrix:
    return partial_trace(rho, keep)


def mutual_information(rho: DensityMatrix, party_a: int, party_b: int) -> float:
    """I_AB = S_A + S_B - S_AB on the reduction onto the pair."""
    _check_parties(rho, party_a, party_b)
    s_a = von_neumann_entropy(_reduced(rho, {party_a}))
    s_b = von_neumann_entropy(_reduced(rho, {party_b}))
    s_ab = von_neumann_entropy(_reduced(rho, {party_a, party_b}))
    return s_a + s_b - s_ab


def conditional_entropy(rho: DensityMatrix, party_a: int, party_b: int) -> float:
    """Unmeasured conditional entropy S(A|B) = S_AB - S_B (may be negative)."""
    _check_parties(rho, party_a, party_b)
    s_ab = von_neumann_entropy(_reduced(rho, {party_a, party_b}))
    s_b = von_neumann_entropy(_reduced(rho, {party_b}))
    return s_ab - s_b


def _check_parties(rho: DensityMatrix, a: int, b: int) -> None:
    n = rho.subsystem_count()
    if n < 2:
        raise ValueError("state must have at least two subsystems")
    if a == b:
        raise ValueError("parties must differ")
    for idx in (a, b):
        if not 0 <= idx < n:
            raise ValueError(f"party index {idx} out of range for {n} subsystems")


def measured_conditional_entropy(
    rho_pair: DensityMatrix, measured_party: int
) -> tuple[float, MeasurementBasis]:
    """min over rank-1 projective bases of sum_k p_k S(rho_{A|k}).

    Returns the minimum (bits) and the argmin basis. The measured party must
    be a qubit.
    """
    return _optimize_measurement(_MeasuredPair(rho_pair, measured_party))


def classical_correlation(rho_pair: DensityMatrix, measured_party: int) -> float:
    """J = S_A - S_q(A|measured): maximal locally accessible mutual information."""
    s_q, _ = measured_conditional_entropy(rho_pair, measured_party)
    s_a = von_neumann_entropy(_reduced(rho_pair, {1 - measured_party}))
    return max(0.0, s_a - s_q)


def discord(rho_pair: DensityMatrix, measured_party: int) -> float:
    """Quantum discord I - J: the locally inaccessible mutual information."""
    return pair_report(rho_pair, 1 - measured_party, measured_party).discord


def discrepancy(rho_pair: DensityMatrix, measured_party: int) -> float:
    """J - discord = I - 2*discord: classical-vs-quantum correlation unbalance."""
    return pair_report(rho_pair, 1 - measured_party, measured_party).discrepancy


def pair_report(rho: DensityMatrix, party_a: int, measured_party: int) -> CorrelationReport:
    """Full correlation report for the ordered pair, one optimization run.

    rho may have more than two subsystems; it is reduced onto the pair first.
    """
    _check_parties(rho, party_a, measured_party)
    pair = _reduced(rho, {party_a, measured_party})
    measured_in_pair = 1 if party_a < measured_party else 0
    s_a = von_neumann_entropy(_reduced(pair, {1 - measured_in_pair}))
    s_b = von_neumann_entropy(_reduced(pair, {measured_in_pair}))
    s_ab = von_neumann_entropy(pair)
    info = s_a + s_b - s_ab
    s_q, basis = measured_conditional_entropy(pair, measured_in_pair)
    classical = max(0.0, s_a - s_q)
    disc = info - classical
    if disc < 0.0:
        if disc < -DISCORD_CLAMP:
            raise ConsistencyError(
                f"discord {disc:.3e} below -1e-9; optimization inconsistent"
            )
        disc = 0.0
    return CorrelationReport(
        mutual_info=info,
        classical=classical,
        discord=disc,
        discrepancy=classical - disc,
        measured_cond_entropy=s_q,
        optimal_basis=basis,
        measured_party=measured_party,
    )
