"""Command-line front end: analyze states, run scans and audits, emit CSV/JSON.

Subcommands:
  analyze       full correlation/tangle report of a state file (JSON)
  scan-w        tangles over the single-excitation family angle grid (CSV)
  scan-ghz      tangles over the two-branch family amplitude grid (CSV)
  dynamics      damping-channel time series (CSV)
  random-audit  identity checks over canonical plus Haar-random states (JSON)

Exit codes: 0 success / audit pass, 1 audit fail, 2 usage or input error.
All numeric CSV fields carry 17 significant digits; results are deterministic
for a fixed configuration (including seed and grid), independent of --jobs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .dynamics import DampingParams, scan
from .entanglement import concurrence_tangle, eof_koashi_winter, eof_two_qubit
from .errors import StateFormatError, UnsupportedDimensionError
from .monogamy import PARTY, TANGLE_IDENTITY_TOL, MONOGAMY_MARGIN_TOL, tau_total, tripartite_analysis
from .linalg import von_neumann_entropy
from .states import PureState, WParams, balanced_w, ghz, haar_random, load_state, w

DEFAULT_AUDIT_TOL = 5e-4
DEFAULT_SEED = 7


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv(header: list, rows: list) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _parallel_map(fn, items, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=8))
    return [fn(item) for item in items]


# -- analyze -----------------------------------------------------------------


def analyze_state(psi: PureState) -> dict:
    report, detail = tripartite_analysis(psi)
    tangle = {
        "tau_a": report.tau_a,
        "tau_b": report.tau_b,
        "tau_c": report.tau_c,
        "tau_total": report.tau_total,
        "flow_l_cw": report.flow_l_cw,
        "flow_l_ccw": report.flow_l_ccw,
        "flow_j_cw": report.flow_j_cw,
        "flow_j_ccw": report.flow_j_ccw,
        "discrepancies": report.discrepancies,
        "monogamous": {
            "A": report.monogamous_a,
            "B": report.monogamous_b,
            "C": report.monogamous_c,
        },
        "concurrence_tangle": report.concurrence_tangle,
        "derived_pairs": list(report.derived_pairs),
    }
    return {
        "dims": list(psi.dims),
        "entropies": detail["entropies"],
        "pairs": detail["pairs"],
        "tangle": tangle,
        "monogamy": detail["monogamy"],
        "conventions": {
            "pair_key": "XY conditions party X on a measurement of party Y",
            "tau_total": "sum of the three per-pivot tangles; equals the "
                         "clockwise flow of classical correlation minus the "
                         "clockwise flow of discord (a symmetric two-branch "
                         "state has tau_total = 3 * tau_a, not tau_a itself)",
        },
        "tolerances": {
            "tangle_identity": TANGLE_IDENTITY_TOL,
            "monogamy_margin": MONOGAMY_MARGIN_TOL,
        },
        "version": __version__,
    }


def _cmd_analyze(args) -> int:
    try:
        psi = load_state(args.state)
    except StateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read {args.state}: {exc}", file=sys.stderr)
        return 2
    if len(psi.dims) != 3 or psi.dims[0] != 2 or psi.dims[1] != 2:
        print(
            f"error: analyze supports dims (2, 2, N); the file has {list(psi.dims)}",
            file=sys.stderr,
        )
        return 2
    doc = analyze_state(psi)
    doc["input"] = args.state
    _write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


# -- scans -------------------------------------------------------------------


def _interior_grid(n: int, upper: float) -> np.ndarray:
    return np.linspace(0.0, upper, n + 2)[1:-1]


def _w_point(args) -> tuple:
    theta, phi = args
    rep = tau_total(w(WParams(theta, phi)))
    return (theta, phi, rep.tau_total, rep.tau_a, rep.tau_b, rep.tau_c)


def scan_w_rows(n_theta: int, n_phi: int, jobs: int = 1) -> list:
    thetas = _interior_grid(n_theta, math.pi / 2.0)
    phis = _interior_grid(n_phi, math.pi / 2.0)
    work = [(float(t), float(p)) for t in thetas for p in phis]
    return _parallel_map(_w_point, work, jobs)


def _cmd_scan_w(args) -> int:
    rows = scan_w_rows(args.grid[0], args.grid[1], args.jobs)
    _write_text(args.out, _csv(["theta", "phi", "tau_abc", "tau_a", "tau_b", "tau_c"], rows))
    return 0


def _ghz_point(args) -> tuple:
    mix, phase = args
    amp = complex(math.cos(phase), math.sin(phase)) * math.sin(mix)
    rep = tau_total(ghz(math.cos(mix), amp))
    max_disc = max(abs(v) for v in rep.discords.values())
    return (mix, phase, rep.tau_total, rep.tau_a, rep.tau_b, rep.tau_c, max_disc)


def scan_ghz_rows(n_mix: int, n_phase: int, jobs: int = 1) -> list:
    mixes = _interior_grid(n_mix, math.pi / 2.0)
    phases = np.linspace(0.0, 2.0 * math.pi, n_phase, endpoint=False)
    work = [(float(m), float(p)) for m in mixes for p in phases]
    return _parallel_map(_ghz_point, work, jobs)


def _cmd_scan_ghz(args) -> int:
    rows = scan_ghz_rows(args.grid[0], args.grid[1], args.jobs)
    header = ["theta", "phi", "tau_abc", "tau_a", "tau_b", "tau_c", "max_pair_discord"]
    _write_text(args.out, _csv(header, rows))
    return 0


# -- dynamics ----------------------------------------------------------------


def _cmd_dynamics(args) -> int:
    try:
        params = DampingParams(gamma0=1.0, lam=args.lambda_over_gamma0, a=args.a)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.t_steps < 2 or args.t_max <= 0.0:
        print("error: need --t-steps >= 2 and --t-max > 0", file=sys.stderr)
        return 2
    grid = np.linspace(0.0, args.t_max, args.t_steps)
    trace = scan(params, grid, jobs=args.jobs)
    header = ["t", "g", "eof_ab", "delta_ab", "delta_ba", "j_ab", "j_ba",
              "tau_a", "tau_b", "tau_c", "tau_abc"]
    rows = list(zip(trace.times, trace.g, trace.eof_ab,
                    trace.delta_ab, trace.delta_ba, trace.j_ab, trace.j_ba,
                    trace.tau_a, trace.tau_b, trace.tau_c, trace.tau_total))
    _write_text(args.out, _csv(header, rows))
    return 0


# -- random audit ------------------------------------------------------------


def _audit_one(label: str, psi: PureState) -> dict:
    """All identity checks for one pure three-qubit state."""
    rep = tau_total(psi)
    d, j, delta, info = rep.discords, rep.classicals, rep.discrepancies, rep.mutual_infos
    s = {p: von_neumann_entropy(psi.reduced({p})) for p in range(3)}
    eof = {}
    for x, y in ((0, 1), (0, 2), (1, 2)):
        eof[(x, y)] = eof_two_qubit(psi.reduced({x, y}))

    conservation = max(
        abs(eof[_upair(p, x)] + eof[_upair(p, y)] - d[_k(p, x)] - d[_k(p, y)])
        for p, x, y in ((0, 1, 2), (1, 0, 2), (2, 0, 1))
    )
    disc_conservation = max(
        abs(delta["AB"] - delta["CB"]),
        abs(delta["BA"] - delta["CA"]),
        abs(delta["AC"] - delta["BC"]),
    )
    flow = max(
        abs(rep.flow_l_cw - rep.flow_l_ccw),
        abs(rep.flow_j_cw - rep.flow_j_ccw),
    )
    eq7_eq8 = max(
        abs((s[p] - d[_k(p, x)] - d[_k(p, y)])
            - (delta[_k(p, x)] + delta[_k(p, y)]) / 2.0)
        for p, x, y in ((0, 1, 2), (1, 0, 2), (2, 0, 1))
    )
    kw = max(
        abs(eof_koashi_winter(psi, x, y) - eof[_upair(x, y)])
        for x, y in ((0, 1), (0, 2), (1, 2))
    )
    # identity Delta_xy = I_xz - 2 E_xz for the measured-qubit pairs
    delta_eof = max(
        abs(delta[_k(x, y)] - (info[_k(x, z)] - 2.0 * eof[_upair(x, z)]))
        for x, y, z in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    )
    ckw = concurrence_tangle(psi)
    taus = {0: rep.tau_a, 1: rep.tau_b, 2: rep.tau_c}
    sign_coherence = 0.0
    for p, x, y in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        margin = j[_k(p, x)] + j[_k(p, y)] - d[_k(p, x)] - d[_k(p, y)]
        sign_coherence = max(sign_coherence, abs(margin / 2.0 - taus[p]))
        if rep.monogamous(p) != (taus[p] >= -MONOGAMY_MARGIN_TOL):
            sign_coherence = math.inf
    squashed = 0.0
    for p, x, y in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        if taus[p] >= 0.0:
            for q in (x, y):
                squashed = max(
                    squashed, eof[_upair(p, q)] + d[_k(p, q)] - info[_k(p, q)]
                )
    return {
        "label": label,
        "violations": {
            "conservation_law": conservation,
            "discrepancy_conservation": disc_conservation,
            "flow_equality": flow,
            "tangle_two_forms": eq7_eq8,
            "koashi_winter": kw,
            "discrepancy_eof_identity": delta_eof,
            "ckw_negativity": max(0.0, -ckw),
            "sign_coherence": sign_coherence,
            "squashed_bound": max(0.0, squashed),
        },
        "tau_a": taus[0],
        "negative_tau": any(t < -MONOGAMY_MARGIN_TOL for t in taus.values()),
    }


def _k(x: int, y: int) -> str:
    return PARTY[x] + PARTY[y]


def _upair(x: int, y: int) -> tuple:
    return (x, y) if x < y else (y, x)


AUDIT_TOLERANCES = {
    "conservation_law": DEFAULT_AUDIT_TOL,
    "discrepancy_conservation": DEFAULT_AUDIT_TOL,
    "flow_equality": DEFAULT_AUDIT_TOL,
    "tangle_two_forms": TANGLE_IDENTITY_TOL,
    "koashi_winter": DEFAULT_AUDIT_TOL,
    "discrepancy_eof_identity": DEFAULT_AUDIT_TOL,
    "ckw_negativity": 1e-8,
    "sign_coherence": TANGLE_IDENTITY_TOL,
    "squashed_bound": DEFAULT_AUDIT_TOL,
}


def audit_states(labeled_states, tolerance: float | None = None) -> dict:
    """Run every identity check over (label, state) pairs; summarize worst cases."""
    tols = dict(AUDIT_TOLERANCES)
    if tolerance is not None:
        for name in ("conservation_law", "discrepancy_conservation", "flow_equality",
                     "koashi_winter", "discrepancy_eof_identity", "squashed_bound"):
            tols[name] = tolerance
    results = [_audit_one(label, psi) for label, psi in labeled_states]
    checks = {}
    for name, tol in tols.items():
        worst = max(results, key=lambda r: r["violations"][name])
        value = worst["violations"][name]
        checks[name] = {
            "max_violation": value,
            "tolerance": tol,
            "pass": bool(value <= tol),
            "worst_state": worst["label"],
        }
    return {
        "states": len(results),
        "checks": checks,
        "tolerances": tols,
        "negative_tau_instances": sum(1 for r in results if r["negative_tau"]),
        "pass": bool(all(c["pass"] for c in checks.values())),
        "version": __version__,
    }


def random_audit(
    n_states: int,
    seed: int = DEFAULT_SEED,
    tolerance: float | None = None,
    include_canonical: bool = True,
) -> dict:
    """Audit canonical anchor states plus n Haar-random three-qubit states."""
    if n_states < 0:
        raise ValueError("n_states must be nonnegative")
    labeled = []
    if include_canonical:
        labeled.append(("product", ghz(1.0, 0.0)))
        labeled.append(("ghz", ghz(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))))
        labeled.append(("w", balanced_w()))
    for i in range(n_states):
        labeled.append((f"haar-{seed + i}", haar_random((2, 2, 2), seed + i)))
    doc = audit_states(labeled, tolerance)
    doc["seed"] = seed
    doc["canonical_included"] = include_canonical
    doc["tolerance_override"] = tolerance
    return doc


def _cmd_random_audit(args) -> int:
    if args.states < 1 and args.skip_canonical:
        print("error: need at least one audited state", file=sys.stderr)
        return 2
    doc = random_audit(
        args.states,
        seed=args.seed,
        tolerance=args.tolerance,
        include_canonical=not args.skip_canonical,
    )
    _write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if doc["pass"] else 1


# -- argument parsing --------------------------------------------------------


def _grid(text: str) -> tuple:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            n = int(parts[0])
            shape = (n, n)
        elif len(parts) == 2:
            shape = (int(parts[0]), int(parts[1]))
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}, expected N or NxM")
    if shape[0] < 2 or shape[1] < 2:
        raise argparse.ArgumentTypeError("grid resolutions must be >= 2")
    return shape


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError("value must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricorr",
        description="Tripartite correlation, tangle and damping-dynamics toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report of a (2,2,N) state file")
    p.add_argument("state", help="JSON state file")
    p.add_argument("--out", default="-", help="output path (default stdout)")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("scan-w", help="tangle scan of the single-excitation family")
    p.add_argument("--grid", type=_grid, default=(50, 50), help="N or NxM (default 50x50)")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_scan_w)

    p = sub.add_parser("scan-ghz", help="tangle scan of the two-branch family")
    p.add_argument("--grid", type=_grid, default=(5, 4), help="N or NxM (default 5x4)")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_scan_ghz)

    p = sub.add_parser("dynamics", help="damping-channel time series")
    p.add_argument("--a", type=float, default=1.0 / math.sqrt(3.0),
                   help="initial |00> amplitude (default 1/sqrt(3))")
    p.add_argument("--lambda-over-gamma0", type=_positive_float, default=0.01,
                   dest="lambda_over_gamma0", help="bath width over gamma0 (default 0.01)")
    p.add_argument("--t-max", type=_positive_float, default=40.0,
                   help="grid end in units of 1/gamma0 (default 40)")
    p.add_argument("--t-steps", type=int, default=2000, help="grid points (default 2000)")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_dynamics)

    p = sub.add_parser("random-audit", help="identity checks over random states")
    p.add_argument("--states", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tolerance", type=_positive_float, default=None,
                   help="override the optimizer-level tolerances (default 5e-4)")
    p.add_argument("--skip-canonical", action="store_true",
                   help="audit only the Haar-random states")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_random_audit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (StateFormatError, UnsupportedDimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
