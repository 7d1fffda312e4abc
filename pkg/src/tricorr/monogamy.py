"""EOF tangles, discrepancy conservation, correlation flows and monogamy tests.

Per-pivot tangles are computed two ways and cross-checked: from the pivot
entropy minus its two outgoing discords, and as the average of the pivot's two
discrepancies. The total tangle is their three-pivot sum, which equals the
clockwise flow of classical correlation minus the clockwise flow of discord.

For three qubits every ordered discord comes from direct measurement
optimization. For (2, 2, N) states only the two directions inside the qubit
pair are optimized; the remaining four follow from the permutation invariance
of the discrepancy and the EOF identity Delta = I_qq - 2 E_qq on the qubit
pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correlations import pair_report
from .entanglement import concurrence_tangle, eof_two_qubit
from .errors import ConsistencyError, UnsupportedDimensionError
from .linalg import von_neumann_entropy
from .states import PureState, reduced_pair

__all__ = [
    "TangleReport",
    "MonogamyVerdict",
    "SquashedBoundAudit",
    "tau_pivot",
    "tau_total",
    "tau_total_22n",
    "discrepancy_conservation_check",
    "conservation_law_check",
    "monogamy_predicate",
    "squashed_bound_audit",
]

PARTY = ("A", "B", "C")
ORDERED_PAIRS = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
TANGLE_IDENTITY_TOL = 1e-6
MONOGAMY_MARGIN_TOL = 1e-6   # |tau| inside this counts as boundary-monogamous


def _key(x: int, y: int) -> str:
    return PARTY[x] + PARTY[y]


@dataclass(frozen=True)
class TangleReport:
    """Per-pivot tangles, flows, and the six ordered-pair correlation values.

    Dict keys are ordered-pair labels like "AB" (conditioned A, measured B).
    tau_total is the sum of the three per-pivot tangles. derived_pairs lists
    the pairs whose values came from the pure-state identities rather than
    direct measurement optimization.
    """

    tau_a: float
    tau_b: float
    tau_c: float
    tau_total: float
    flow_l_cw: float
    flow_l_ccw: float
    flow_j_cw: float
    flow_j_ccw: float
    discrepancies: dict
    discords: dict
    classicals: dict
    mutual_infos: dict
    monogamous_a: bool
    monogamous_b: bool
    monogamous_c: bool
    concurrence_tangle: float | None
    derived_pairs: tuple = ()

    def __post_init__(self):
        by_sum = self.tau_a + self.tau_b + self.tau_c
        by_flow = self.flow_j_cw - self.flow_l_cw
        if abs(self.tau_total - by_sum) > TANGLE_IDENTITY_TOL:
            raise ConsistencyError(
                f"tau_total {self.tau_total} vs pivot sum {by_sum} beyond 1e-6"
            )
        if abs(self.tau_total - by_flow) > TANGLE_IDENTITY_TOL:
            raise ConsistencyError(
                f"tau_total {self.tau_total} vs flow difference {by_flow} beyond 1e-6"
            )

    def tau(self, pivot: int) -> float:
        return (self.tau_a, self.tau_b, self.tau_c)[pivot]

    def monogamous(self, pivot: int) -> bool:
        return (self.monogamous_a, self.monogamous_b, self.monogamous_c)[pivot]


@dataclass(frozen=True)
class MonogamyVerdict:
    """Outcome of the if-and-only-if monogamy test at one pivot."""

    monogamous: bool
    margin: float          # J_pX + J_pY - d_pX - d_pY = 2 * tau
    tau: float
    eq10_window: bool      # S_p < S_q(p|X) + S_q(p|Y) <= 2 S_p


@dataclass(frozen=True)
class SquashedBoundAudit:
    """E + discord vs mutual information for one qubit pair of a pure triple."""

    pivot: int
    partner: int
    eof_plus_discord: float
    mutual_info: float
    tau: float
    holds: bool


def _require_pure_tripartite(psi: PureState) -> None:
    if not isinstance(psi, PureState) or len(psi.dims) != 3:
        raise ValueError("expected a pure tripartite state")


class _TripartiteRecords:
    """Six ordered-pair correlation values for one pure tripartite state.

    strategy "direct": all six from measurement optimization (three qubits).
    strategy "shortcut": optimize only inside the (A, B) qubit pair; derive
    AC/BC from the EOF identity and CA/CB from discrepancy conservation.
    """

    def __init__(self, psi: PureState, strategy: str):
        _require_pure_tripartite(psi)
        self.psi = psi
        self.dims = psi.dims
        self.rho = psi.to_density()
        self.entropy = {
            frozenset(sub): von_neumann_entropy(psi.reduced(sub))
            for sub in ({0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2})
        }
        self.delta, self.jota, self.disc, self.info, self.s_q = {}, {}, {}, {}, {}
        self.basis = {}
        self.derived = []
        if strategy == "direct":
            if self.dims != (2, 2, 2):
                raise UnsupportedDimensionError(
                    f"direct optimization of all six pairs needs three qubits, "
                    f"got dims {self.dims}"
                )
            for x, y in ORDERED_PAIRS:
                self._fill_direct(x, y)
        elif strategy == "shortcut":
            if self.dims[0] != 2 or self.dims[1] != 2:
                raise UnsupportedDimensionError(
                    f"the qubit-pair shortcut needs dims (2, 2, N), got {self.dims}"
                )
            self._fill_direct(0, 1)
            self._fill_direct(1, 0)
            self._fill_identity_pair(0, 2)
            self._fill_identity_pair(1, 2)
            self._fill_conserved_swap("CA", "BA")
            self._fill_conserved_swap("CB", "AB")
        else:
            raise ValueError(f"unknown strategy {strategy!r}")

    def _mutual_info(self, x: int, y: int) -> float:
        return (self.entropy[frozenset({x})] + self.entropy[frozenset({y})]
                - self.entropy[frozenset({x, y})])

    def _fill_direct(self, x: int, y: int) -> None:
        rep = pair_report(self.rho, x, y)
        k = _key(x, y)
        self.info[k] = rep.mutual_info
        self.jota[k] = rep.classical
        self.disc[k] = rep.discord
        self.delta[k] = rep.discrepancy
        self.s_q[k] = rep.measured_cond_entropy
        self.basis[k] = rep.optimal_basis

    def _fill_identity_pair(self, x: int, y: int) -> None:
        # measured party y is the high-dimensional one: for either conditioned
        # qubit x, Delta_(x)y = I_qq - 2 E_qq on the qubit pair.
        qa, qb = sorted({0, 1, 2} - {y})
        kq = _key(qa, qb)
        e_qq = eof_two_qubit(reduced_pair(self.psi, qa, qb))
        delta = self.info[kq] - 2.0 * e_qq
        self._fill_from_delta(_key(x, y), x, y, delta)

    def _fill_conserved_swap(self, k_new: str, k_src: str) -> None:
        x, y = PARTY.index(k_new[0]), PARTY.index(k_new[1])
        self._fill_from_delta(k_new, x, y, self.delta[k_src])

    def _fill_from_delta(self, k: str, x: int, y: int, delta: float) -> None:
        info = self._mutual_info(x, y)
        self.info[k] = info
        self.delta[k] = delta
        self.disc[k] = (info - delta) / 2.0
        self.jota[k] = (info + delta) / 2.0
        self.s_q[k] = self.entropy[frozenset({x})] - self.jota[k]
        self.derived.append(k)

    def tau(self, pivot: int) -> float:
        x, y = sorted({0, 1, 2} - {pivot})
        eq7 = (self.entropy[frozenset({pivot})]
               - self.disc[_key(pivot, x)] - self.disc[_key(pivot, y)])
        eq8 = (self.delta[_key(pivot, x)] + self.delta[_key(pivot, y)]) / 2.0
        if abs(eq7 - eq8) > TANGLE_IDENTITY_TOL:
            raise ConsistencyError(
                f"pivot {PARTY[pivot]}: entropy form {eq7} vs discrepancy "
                f"average {eq8} differ beyond 1e-6"
            )
        return eq7

    def report(self) -> TangleReport:
        taus = [self.tau(p) for p in range(3)]
        d, j = self.disc, self.jota
        ckw = concurrence_tangle(self.psi) if self.dims == (2, 2, 2) else None
        return TangleReport(
            tau_a=taus[0], tau_b=taus[1], tau_c=taus[2],
            tau_total=sum(taus),
            flow_l_cw=d["BA"] + d["CB"] + d["AC"],
            flow_l_ccw=d["CA"] + d["BC"] + d["AB"],
            flow_j_cw=j["BA"] + j["CB"] + j["AC"],
            flow_j_ccw=j["CA"] + j["BC"] + j["AB"],
            discrepancies=dict(self.delta),
            discords=dict(self.disc),
            classicals=dict(self.jota),
            mutual_infos=dict(self.info),
            monogamous_a=taus[0] >= -MONOGAMY_MARGIN_TOL,
            monogamous_b=taus[1] >= -MONOGAMY_MARGIN_TOL,
            monogamous_c=taus[2] >= -MONOGAMY_MARGIN_TOL,
            concurrence_tangle=ckw,
            derived_pairs=tuple(self.derived),
        )


def _records_for(psi: PureState) -> _TripartiteRecords:
    _require_pure_tripartite(psi)
    if psi.dims == (2, 2, 2):
        return _TripartiteRecords(psi, "direct")
    return _TripartiteRecords(psi, "shortcut")


def tripartite_analysis(psi: PureState) -> tuple[TangleReport, dict]:
    """Tangle report plus per-pair details and monogamy verdicts in one pass.

    The detail dict carries, for every ordered pair, the correlation report
    fields, the computation method (direct / derived) and the optimal basis
    when one was optimized; this backs the CLI's analyze output.
    """
    rec = _records_for(psi)
    report = rec.report()
    pairs = {}
    for x, y in ORDERED_PAIRS:
        k = _key(x, y)
        basis = rec.basis.get(k)
        pairs[k] = {
            "mutual_info": rec.info[k],
            "classical": rec.jota[k],
            "discord": rec.disc[k],
            "discrepancy": rec.delta[k],
            "measured_cond_entropy": rec.s_q[k],
            "method": "derived" if k in rec.derived else "direct",
            "optimal_basis": None if basis is None else
                {"bloch_theta": basis.bloch_theta, "bloch_phi": basis.bloch_phi},
        }
    entropies = {PARTY[i]: rec.entropy[frozenset({i})] for i in range(3)}
    verdicts = {}
    for p in range(3):
        x, y = sorted({0, 1, 2} - {p})
        kx, ky = _key(p, x), _key(p, y)
        margin = rec.jota[kx] + rec.jota[ky] - rec.disc[kx] - rec.disc[ky]
        tau = rec.tau(p)
        s_p = rec.entropy[frozenset({p})]
        s_q_sum = rec.s_q[kx] + rec.s_q[ky]
        verdicts[PARTY[p]] = {
            "monogamous": bool(tau >= -MONOGAMY_MARGIN_TOL),
            "margin": margin,
            "tau": tau,
            "eq10_window": bool(s_p < s_q_sum <= 2.0 * s_p + 1e-12),
        }
    return report, {"entropies": entropies, "pairs": pairs, "monogamy": verdicts}


def tau_pivot(psi: PureState, pivot: int) -> float:
    """EOF tangle at one pivot: S_pivot minus its two outgoing discords.

    Cross-checked against the discrepancy average before returning.
    """
    if not 0 <= pivot <= 2:
        raise ValueError(f"pivot must be 0, 1 or 2, got {pivot}")
    return _records_for(psi).tau(pivot)


def tau_total(psi: PureState) -> TangleReport:
    """Full tangle report; dispatches to the (2,2,N) identity route as needed."""
    return _records_for(psi).report()


def tau_total_22n(psi: PureState) -> TangleReport:
    """Tangle report for dims (2, 2, N) through the qubit-pair shortcut only.

    Works for N = 2 as well, where it cross-validates the direct path.
    """
    _require_pure_tripartite(psi)
    return _TripartiteRecords(psi, "shortcut").report()


def discrepancy_conservation_check(psi: PureState) -> float:
    """Max |Delta_XY - Delta_ZY| over the three conserved ordered pairs."""
    rec = _TripartiteRecords(psi, "direct")
    d = rec.delta
    return max(abs(d["AB"] - d["CB"]), abs(d["BA"] - d["CA"]), abs(d["AC"] - d["BC"]))


def conservation_law_check(psi: PureState) -> float:
    """|E_AB + E_AC - d_AB - d_AC| with Wootters EOF and optimized discords."""
    rec = _TripartiteRecords(psi, "direct")
    e_ab = eof_two_qubit(psi.reduced({0, 1}))
    e_ac = eof_two_qubit(psi.reduced({0, 2}))
    return abs(e_ab + e_ac - rec.disc["AB"] - rec.disc["AC"])


def monogamy_predicate(psi: PureState, pivot: int) -> MonogamyVerdict:
    """Monogamy at a pivot: classical flows out of it dominate the quantum ones.

    The margin J_pX + J_pY - d_pX - d_pY equals twice the pivot tangle; both
    are computed and must agree. Boundary cases within 1e-6 count as
    monogamous.
    """
    if not 0 <= pivot <= 2:
        raise ValueError(f"pivot must be 0, 1 or 2, got {pivot}")
    rec = _records_for(psi)
    x, y = sorted({0, 1, 2} - {pivot})
    kx, ky = _key(pivot, x), _key(pivot, y)
    margin = rec.jota[kx] + rec.jota[ky] - rec.disc[kx] - rec.disc[ky]
    tau = rec.tau(pivot)
    if abs(margin / 2.0 - tau) > TANGLE_IDENTITY_TOL:
        raise ConsistencyError(
            f"monogamy margin/2 {margin / 2.0} vs tau {tau} beyond 1e-6"
        )
    s_p = rec.entropy[frozenset({pivot})]
    s_q_sum = rec.s_q[kx] + rec.s_q[ky]
    window = s_p < s_q_sum <= 2.0 * s_p + 1e-12
    return MonogamyVerdict(
        monogamous=tau >= -MONOGAMY_MARGIN_TOL,
        margin=margin,
        tau=tau,
        eq10_window=window,
    )


def squashed_bound_audit(
    psi: PureState, pivot: int, partner: int, tol: float = 5e-4
) -> SquashedBoundAudit:
    """Check that monogamous pivots satisfy E + discord <= mutual information.

    The implication is vacuously true when the pivot tangle is negative.
    """
    if pivot == partner:
        raise ValueError("pivot and partner must differ")
    _require_pure_tripartite(psi)
    if psi.dims[pivot] != 2 or psi.dims[partner] != 2:
        raise UnsupportedDimensionError("bound audit needs a qubit pair")
    rec = _records_for(psi)
    k = _key(pivot, partner)
    e_pair = eof_two_qubit(reduced_pair(psi, pivot, partner))
    lhs = e_pair + rec.disc[k]
    info = rec.info[k]
    tau = rec.tau(pivot)
    holds = (tau < 0.0) or (lhs <= info + tol)
    return SquashedBoundAudit(
        pivot=pivot, partner=partner,
        eof_plus_discord=lhs, mutual_info=info, tau=tau, holds=holds,
    )
