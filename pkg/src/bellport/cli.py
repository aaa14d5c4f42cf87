"""Experiment runner: each subcommand reproduces one of the protocol's
headline computations and emits a self-describing CSV.

Output format: '#'-prefixed key=value metadata lines (version, seed and
the full configuration), one CSV header row, then data rows.  With the
same configuration and seed the bytes are identical across runs; a
timestamp comment is included unless --deterministic is given.

Exit codes: 0 success, 2 when a quantitative claim checked by the
subcommand is violated (a scientific regression, distinct from a
crash), 64 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .algebra import SIGNS
from .bell import (
    BELL_CLASSES,
    BELL_LABELS,
    bell_state,
    decompose_classes,
    format_sign_pair,
    labels_class,
    parse_sign_pair,
    upsilon_expectations,
)
from .channels import (
    aklt_state,
    build,
    cluster_g_operators,
    cluster_state,
    cluster_stabilizer,
    heisenberg_ring_ground,
    parse_channel_spec,
    stabilizer_report,
    string_order,
)
from .measure import ImpossibleOutcomeError, measure_sequence
from .protocol import (
    FIG2_BOUND_SLACK,
    Fig2Row,
    fig2_run,
    fig2_violations,
    min_fidelity_scan,
    order_parameter,
    teleport,
)
from .qudit import qudit_teleport
from .states import PureState, random_state, tensor
from .threequbit import BELL3_LABELS, bell3_state, teleport3, theta_rank

USAGE_ERROR = 64
CLAIM_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    """argparse with the BSD EX_USAGE exit code for bad invocations."""

    def error(self, message):  # noqa: D102 - argparse override
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


class UsageError(ValueError):
    """Invalid sizes or option combinations detected inside a handler."""


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _parse_class(text: str) -> tuple[int, ...]:
    """Sign pair with p/m accepted for +/- (argparse mangles a bare '--')."""
    translated = text.lower().replace("p", "+").replace("m", "-")
    return tuple(parse_sign_pair(translated))


def _parse_pairing(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for chunk in text.split(","):
        a, _, b = chunk.partition("-")
        pairs.append((int(a), int(b)))
    return tuple(pairs)


def write_table(
    stream,
    meta: dict,
    columns: Sequence[str],
    rows: Sequence[Sequence],
    deterministic: bool,
) -> None:
    stream.write(f"# version={__version__}\n")
    for key, value in meta.items():
        stream.write(f"# {key}={value}\n")
    if not deterministic:
        stamp = datetime.now(timezone.utc).isoformat()
        stream.write(f"# generated={stamp}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


class EmptyDataError(ValueError):
    """No rows to emit; no file is written."""


def emit_plotdata(rows: Sequence[Fig2Row], path: str) -> None:
    """Write whitespace-delimited scatter data plus the bound line.

    Block 0 holds (omega, fidelity) points; after two blank lines,
    block 1 samples the bound y = (x - 1) / 2 at 100 points on
    omega in [-1, 3], the gnuplot multi-block convention.
    """
    if not rows:
        raise EmptyDataError("no scatter rows to emit")
    with open(path, "w") as fh:
        fh.write("# scatter: omega fidelity\n")
        for r in rows:
            fh.write(f"{_fmt(r.omega)} {_fmt(r.fidelity)}\n")
        fh.write("\n\n# bound: omega (omega-1)/2\n")
        for x in np.linspace(-1.0, 3.0, 100):
            fh.write(f"{_fmt(float(x))} {_fmt((x - 1.0) / 2.0)}\n")


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (meta, columns, rows, violations)


def _cmd_teleport(args):
    spec = parse_channel_spec(args.channel)
    channel = build(spec)
    assumed = _parse_class(args.assumed_class)
    client = random_state(1, 2, np.random.default_rng(args.seed))
    pairing = _parse_pairing(args.pairing) if args.pairing else None
    columns = ["run", "outcomes", "measured_class", "joint_probability", "fidelity"]
    rows = []
    if args.enumerate_branches:
        branches = _all_branches(channel.num_sites // 2)
        for i, branch in enumerate(branches):
            try:
                res = teleport(client, channel, assumed, pairing, forced=branch)
            except ImpossibleOutcomeError:
                continue
            rows.append(_teleport_row(i, res))
    else:
        rng = np.random.default_rng(args.seed + 1)
        for i in range(args.trials):
            res = teleport(client, channel, assumed, pairing, rng=rng)
            rows.append(_teleport_row(i, res))
    meta = {
        "subcommand": "teleport",
        "seed": args.seed,
        "channel": args.channel,
        "assumed_class": args.assumed_class,
        "trials": args.trials,
        "pairing": args.pairing or "default",
        "enumerate_branches": args.enumerate_branches,
    }
    return meta, columns, rows, 0


def _all_branches(n_pairs):
    if n_pairs == 0:
        return [()]
    shorter = _all_branches(n_pairs - 1)
    return [b + (lab,) for b in shorter for lab in BELL_LABELS]


def _teleport_row(i, res):
    outcomes = ";".join(format_sign_pair(o.label) for o in res.record.outcomes)
    return [
        i,
        outcomes,
        format_sign_pair(res.record.aggregate_class),
        res.record.joint_probability,
        res.fidelity,
    ]


def _cmd_fig2(args):
    rows = fig2_run(args.trials, args.seed, enumerate_branches=args.enumerate_branches)
    bad = fig2_violations(rows)
    table = [
        [
            r.trial,
            format_sign_pair(r.assumed_class),
            r.omega,
            format_sign_pair(r.measured_class),
            r.fidelity,
            r.channel_kind,
        ]
        for r in rows
    ]
    meta = {
        "subcommand": "fig2",
        "seed": args.seed,
        "trials": args.trials,
        "bound_slack": FIG2_BOUND_SLACK,
        "channel_sampler": "50% pure-class projection / 50% haar with max omega <= 0.98",
        "client_sampler": "uniform on the Bloch sphere (complex-normal amplitudes)",
        "enumerate_branches": args.enumerate_branches,
        "violations": len(bad),
    }
    if args.plot_out:
        emit_plotdata(rows, args.plot_out)
    columns = ["trial", "assumed_class", "omega", "measured_class", "fidelity", "channel_kind"]
    return meta, columns, table, len(bad)


def _cmd_appendix_a(args):
    phi = args.phi
    channel_amps = np.cos(phi) * np.kron(
        bell_state((1, -1)).amplitudes, bell_state((-1, 1)).amplitudes
    ) + np.sin(phi) * np.kron(
        bell_state((-1, 1)).amplitudes, bell_state((1, -1)).amplitudes
    )
    channel = PureState(channel_amps)
    client = random_state(1, 2, np.random.default_rng(args.seed))
    total = tensor(client, channel)
    columns = ["p1", "q1", "p2", "q2", "probability", "expected", "agg_class"]
    rows = []
    violations = 0
    class_prob = {c: 0.0 for c in BELL_CLASSES}
    for lab1 in BELL_LABELS:
        for lab2 in BELL_LABELS:
            try:
                record, _ = measure_sequence(
                    total, [(0, 1), (2, 3)], forced=[lab1, lab2]
                )
                prob = record.joint_probability
            except ImpossibleOutcomeError:
                prob = 0.0
            expected = (1.0 - lab2.j * lab2.k * np.sin(2 * phi)) / 16.0
            agg = labels_class([lab1, lab2])
            class_prob[agg] += prob
            if abs(prob - expected) > 1e-12:
                violations += 1
            rows.append(
                [lab1.j, lab1.k, lab2.j, lab2.k, prob, expected, format_sign_pair(agg)]
            )
    for c, p in class_prob.items():
        if abs(p - 0.25) > 1e-12:
            violations += 1
    meta = {
        "subcommand": "appendix-a",
        "seed": args.seed,
        "phi": phi,
        "class_probabilities": ";".join(
            f"{format_sign_pair(c)}={p:.12g}" for c, p in class_prob.items()
        ),
        "violations": violations,
    }
    return meta, columns, rows, violations


def _cmd_order_param(args):
    spec = parse_channel_spec(args.channel)
    state = build(spec)
    op = order_parameter(state)
    dec = decompose_classes(state)
    columns = (
        ["t1", "t2", "t3", "efficiency"]
        + [f"omega_{format_sign_pair(c)}" for c in BELL_CLASSES]
        + [f"weight_{format_sign_pair(c)}" for c in BELL_CLASSES]
    )
    row = list(op.t_vector) + [op.efficiency]
    row += [op.omega[c] for c in BELL_CLASSES]
    row += [dec.coefficients[c] ** 2 for c in BELL_CLASSES]
    meta = {"subcommand": "order-param", "channel": args.channel, "seed": args.seed}
    return meta, columns, [row], 0


def _cmd_cluster_check(args):
    L = args.qubits
    if L < 4 or L % 2:
        raise UsageError("cluster-check needs an even qubit count >= 4")
    state = cluster_state(L)
    columns = ["check", "value", "deviation", "ok"]
    rows = []
    violations = 0
    for j in range(1, L + 1):
        rep = stabilizer_report(state, cluster_stabilizer(j, L), f"K{j}")
        ok = abs(rep.eigenvalue - 1.0) <= 1e-10 and rep.deviation <= 1e-10
        violations += not ok
        rows.append([rep.name, rep.eigenvalue, rep.deviation, int(ok)])
    g1, g2 = cluster_g_operators(L)
    for name, g in (("G1", g1), ("G2", g2)):
        rep = stabilizer_report(state, g, name)
        ok = abs(rep.eigenvalue - 1.0) <= 1e-10 and rep.deviation <= 1e-10
        violations += not ok
        rows.append(
            [
                f"{name}[{'-' if g.sign < 0 else '+'}{''.join(str(f) for f in g.factors)}]",
                rep.eigenvalue,
                rep.deviation,
                int(ok),
            ]
        )
    top = max(decompose_classes(state).coefficients.values()) ** 2
    ok = top < 1.0 - 1e-6  # cluster states must straddle classes
    violations += not ok
    rows.append(["max_class_weight", top, 0.0, int(ok)])
    meta = {"subcommand": "cluster-check", "qubits": L, "violations": violations}
    return meta, columns, rows, violations


def _cmd_aklt_check(args):
    L = args.qubits
    if L < 4 or L % 2:
        raise UsageError("aklt-check needs an even qubit count >= 4")
    state = aklt_state(L)
    s_order = string_order(state)
    e2 = upsilon_expectations(state)[1]
    relation = -((-1.0) ** (L // 2)) * s_order
    dec = decompose_classes(state)
    pure = dec.pure_class()
    columns = ["check", "value", "expected", "ok"]
    rows = []
    checks = [
        ("string_order", s_order, -1.0, abs(s_order + 1.0) <= 1e-10),
        ("upsilon2_vs_string", e2, relation, abs(e2 - relation) <= 1e-10),
        (
            "pure_class",
            format_sign_pair(pure) if pure else "none",
            format_sign_pair((int((-1) ** (L // 2)),) * 2),
            pure is not None,
        ),
    ]
    violations = 0
    for name, value, expected, ok in checks:
        violations += not ok
        rows.append([name, value, expected, int(ok)])
    meta = {"subcommand": "aklt-check", "qubits": L, "violations": violations}
    return meta, columns, rows, violations


def _cmd_bound_scan(args):
    res = min_fidelity_scan(args.theta)
    expected = float(np.cos(args.theta))
    ok = abs(res.minimum - expected) <= 1e-3
    predicted_a = (
        (np.cos(args.theta) - 1.0) / np.sin(args.theta) if args.theta > 0 else 0.0
    )
    columns = [
        "theta",
        "minimum",
        "cos_theta",
        "abs_error",
        "argmin_re_a",
        "argmin_im_a",
        "argmin_abs_b",
        "argmin_abs_c",
        "predicted_a",
    ]
    row = [
        args.theta,
        res.minimum,
        expected,
        abs(res.minimum - expected),
        res.a.real,
        res.a.imag,
        res.b_mag,
        res.c_mag,
        predicted_a,
    ]
    meta = {"subcommand": "bound-scan", "theta": args.theta, "violations": int(not ok)}
    return meta, columns, [row], int(not ok)


def _cmd_three_qubit(args):
    columns = ["j", "k", "l", "mode", "outcome", "probability", "fidelity"]
    rows = []
    violations = 0
    client = random_state(1, 2, np.random.default_rng(args.seed))
    for lab in BELL3_LABELS:
        channel = bell3_state(lab)
        for mode in ("full", "reduced"):
            branches = (
                [(p, q, lab.k * q) for p in SIGNS for q in SIGNS]
                if mode == "full"
                else [(p, q) for p in SIGNS for q in SIGNS]
            )
            for branch in branches:
                res = teleport3(
                    client, channel, (lab.j, lab.l), mode=mode, forced=branch
                )
                ok = res.fidelity >= 1.0 - 1e-10
                violations += not ok
                rows.append(
                    [
                        lab.j,
                        lab.k,
                        lab.l,
                        mode,
                        "".join("+" if s == 1 else "-" for s in branch),
                        res.record.joint_probability,
                        res.fidelity,
                    ]
                )
    rank_p, det_p = theta_rank(1)
    rank_m, det_m = theta_rank(-1)
    meta = {
        "subcommand": "three-qubit",
        "seed": args.seed,
        "theta_rank_kappa_plus": rank_p,
        "theta_det_kappa_plus": f"{abs(det_p):.3e}",
        "theta_rank_kappa_minus": rank_m,
        "theta_det_kappa_minus": f"{abs(det_m):.3e}",
        "violations": violations,
    }
    return meta, columns, rows, violations


def _cmd_qudit_demo(args):
    d = args.dim
    if d < 2:
        raise UsageError("qudit dimension must be >= 2")
    rng = np.random.default_rng(args.seed)
    client_amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    client = PureState(client_amps / np.linalg.norm(client_amps), local_dim=d)
    columns = ["d", "j", "k", "p", "q", "probability", "fidelity"]
    rows = []
    violations = 0
    labels = [(0, 0), (1 % d, 0), (0, 1 % d), (d - 1, d - 1)]
    for j, k in dict.fromkeys(labels):
        for p in range(d):
            for q in range(d):
                res = qudit_teleport(client, (j, k), forced=(p, q))
                ok = res.fidelity >= 1.0 - 1e-10
                violations += not ok
                rows.append(
                    [d, j, k, p, q, res.record.joint_probability, res.fidelity]
                )
    meta = {
        "subcommand": "qudit-demo",
        "seed": args.seed,
        "dim": d,
        "violations": violations,
    }
    return meta, columns, rows, violations


def _cmd_heisenberg_check(args):
    L = args.qubits
    if L < 4 or L % 2:
        raise UsageError("heisenberg-check needs an even qubit count >= 4")
    ground = heisenberg_ring_ground(L)
    op = order_parameter(ground)
    dec = decompose_classes(ground)
    pure = dec.pure_class(1e-8)
    rng = np.random.default_rng(args.seed)
    client = random_state(1, 2, rng)
    fidelities = []
    for _ in range(args.trials):
        res = teleport(client, ground, dec.dominant_class(), rng=rng)
        fidelities.append(res.fidelity)
    min_f = min(fidelities)
    violations = int(abs(op.efficiency - 1.0) > 1e-8) + int(min_f < 1.0 - 1e-8)
    columns = ["L", "efficiency", "pure_class", "sampled_runs", "min_fidelity"]
    row = [
        L,
        op.efficiency,
        format_sign_pair(pure) if pure else "none",
        args.trials,
        min_f,
    ]
    meta = {
        "subcommand": "heisenberg-check",
        "qubits": L,
        "seed": args.seed,
        "trials": args.trials,
        "violations": violations,
    }
    return meta, columns, [row], violations


_HANDLERS: dict[str, Callable] = {
    "teleport": _cmd_teleport,
    "fig2": _cmd_fig2,
    "appendix-a": _cmd_appendix_a,
    "order-param": _cmd_order_param,
    "cluster-check": _cmd_cluster_check,
    "aklt-check": _cmd_aklt_check,
    "bound-scan": _cmd_bound_scan,
    "three-qubit": _cmd_three_qubit,
    "qudit-demo": _cmd_qudit_demo,
    "heisenberg-check": _cmd_heisenberg_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bellport",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, trials_default=100):
        p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument(
            "--deterministic",
            action="store_true",
            help="suppress the timestamp comment for byte-identical output",
        )

    p = sub.add_parser(
        "teleport",
        help="run the protocol over a configurable channel",
        epilog="CSV: run,outcomes,measured_class,joint_probability,fidelity",
    )
    common(p)
    p.add_argument(
        "--channel",
        required=True,
        help="channel spec, e.g. bell:+-,-+ | cluster1d:6 | singlet-random:4:7 "
        "| mg-dimers:4 | heisenberg-ring:6 | ghz:4 | aklt:6 | random:4:3",
    )
    p.add_argument(
        "--assumed-class",
        default="++",
        help="Bob's channel class as two signs; p/m work as aliases "
        "(e.g. 'mm' for the [-:-] class)",
    )
    p.add_argument("--pairing", help="measurement pairs like 0-1,2-3")
    p.add_argument(
        "--enumerate-branches",
        action="store_true",
        help="force every outcome branch instead of sampling",
    )

    p = sub.add_parser(
        "fig2",
        help="fidelity vs order-parameter scatter with the (omega-1)/2 bound",
        epilog="CSV: trial,assumed_class,omega,measured_class,fidelity,channel_kind",
    )
    common(p, trials_default=2000)
    p.add_argument("--plot-out", help="also write whitespace plot data to this path")
    p.add_argument(
        "--enumerate-branches",
        action="store_true",
        help="verification mode: force every reachable branch per assumed class",
    )

    p = sub.add_parser(
        "appendix-a",
        help="two-singlet-pair channel outcome probabilities (1 +- sin 2phi)/16",
        epilog="CSV: p1,q1,p2,q2,probability,expected,agg_class",
    )
    common(p)
    p.add_argument("--phi", type=float, default=0.3)

    p = sub.add_parser(
        "order-param",
        help="teleportation-order parameter of a channel",
        epilog="CSV: t1,t2,t3,efficiency,omega_*,weight_*",
    )
    common(p)
    p.add_argument("--channel", required=True)

    p = sub.add_parser(
        "cluster-check",
        help="cluster-state stabilizers, G factorization, class weights",
        epilog="CSV: check,value,deviation,ok",
    )
    common(p)
    p.add_argument("--qubits", "-L", type=int, default=6)

    p = sub.add_parser(
        "aklt-check",
        help="AKLT string order and Bell-class purity",
        epilog="CSV: check,value,expected,ok",
    )
    common(p)
    p.add_argument("--qubits", "-L", type=int, default=6)

    p = sub.add_parser(
        "bound-scan",
        help="grid-scan of the worst-case fidelity, min Delta = cos(theta)",
        epilog="CSV: theta,minimum,cos_theta,abs_error,argmin_*,predicted_a",
    )
    common(p)
    p.add_argument("--theta", type=float, required=True)

    p = sub.add_parser(
        "three-qubit",
        help="three-qubit basis channels, full and reduced measurements",
        epilog="CSV: j,k,l,mode,outcome,probability,fidelity",
    )
    common(p)

    p = sub.add_parser(
        "qudit-demo",
        help="qudit teleportation over generalized Bell channels",
        epilog="CSV: d,j,k,p,q,probability,fidelity",
    )
    common(p)
    p.add_argument("--dim", "-d", type=int, default=3)

    p = sub.add_parser(
        "heisenberg-check",
        help="Heisenberg ring ground state as a perfect channel",
        epilog="CSV: L,efficiency,pure_class,sampled_runs,min_fidelity",
    )
    common(p, trials_default=20)
    p.add_argument("--qubits", "-L", type=int, default=4)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.subcommand]
    try:
        meta, columns, rows, violations = handler(args)
    except (UsageError, ValueError) as exc:
        parser.exit(USAGE_ERROR, f"{parser.prog}: error: {exc}\n")
    meta = {"subcommand": meta.pop("subcommand", args.subcommand), **meta}
    if args.out:
        with open(args.out, "w") as fh:
            write_table(fh, meta, columns, rows, args.deterministic)
    else:
        try:
            write_table(sys.stdout, meta, columns, rows, args.deterministic)
        except BrokenPipeError:  # reader (head, less, ...) went away
            sys.stderr.close()
            return 0
    return CLAIM_VIOLATION if violations else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
