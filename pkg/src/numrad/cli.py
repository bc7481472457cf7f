"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed or was
refuted, 2 usage or I/O error, 3 inconclusive (an iteration or refutation
cap was reached). NUMRAD_TOL overrides the default tolerance; an explicit
--tol flag wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import ando as ando_mod
from . import certify, harness
from .dilation import Polynomial, build_unitary_dilation, von_neumann_check
from .io import MatrixFileError, load_matrix, save_matrix
from .kernel import BACKEND
from .radius import numerical_radius, numerical_range_boundary, operator_norm

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def format_matrix(M) -> str:
    """Rows of 're+imj' entries, 12 significant digits each."""
    A = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    lines = []
    for row in A:
        lines.append("  ".join(f"{z.real:.12g}{z.imag:+.12g}j" for z in row))
    return "\n".join(lines)


def parse_matrix_text(text: str) -> np.ndarray:
    rows = [
        [complex(tok) for tok in line.split()]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    return np.array(rows, dtype=np.complex128)


def _default_tol() -> float:
    try:
        return float(os.environ.get("NUMRAD_TOL", "") or 1e-9)
    except ValueError:
        return 1e-9


def _add_common(p, with_tol=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    if with_tol:
        p.add_argument("--tol", type=float, default=_default_tol())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numrad",
        description="Numerical radius and operator norm certificates "
        f"(eigensolver backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="numerical radius, norm and argmax angle")
    p.add_argument("matrix")
    _add_common(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("range", help="sample the numerical range boundary to CSV")
    p.add_argument("matrix")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--out", required=True)
    _add_common(p, with_tol=False)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("certify", help="per-n positivity verdicts")
    p.add_argument("matrix")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--cap", type=int, default=32)
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("ando", help="solve the witness and write H, X, Y, C, V")
    p.add_argument("matrix")
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--out-prefix", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_ando)

    p = sub.add_parser("dilate", help="finite-horizon unitary dilation")
    p.add_argument("matrix")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("vonneumann", help="polynomial sup-norm inequality report")
    p.add_argument("matrix")
    p.add_argument("--poly", required=True, help="comma separated b0,b1,... (complex ok)")
    p.add_argument("--samples", type=int, default=4096)
    _add_common(p, with_tol=False)
    p.set_defaults(func=cmd_vonneumann)

    p = sub.add_parser("sweep", help="random corpus equivalence sweep")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--target", required=True, help="radius=V or norm=V")
    p.add_argument("--ensemble", choices=harness.ENSEMBLES, default="ginibre")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--cap", type=int, default=32)
    p.add_argument("--no-ando", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("golden", help="golden-value regression")
    _add_common(p, with_tol=False)
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ando_mod.RadiusBoundExceeded as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except ando_mod.FactorizationFailure as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_radius(args) -> int:
    A = load_matrix(args.matrix)
    res = numerical_radius(A)
    nrm = operator_norm(A)
    _emit(
        args,
        {"radius": res.value, "norm": nrm, "argmax_angle": res.argmax_angle},
        [
            f"radius = {_fmt(res.value)}",
            f"norm = {_fmt(nrm)}",
            f"argmax_angle = {_fmt(res.argmax_angle)}",
        ],
    )
    return EXIT_OK


def cmd_range(args) -> int:
    A = load_matrix(args.matrix)
    pts = numerical_range_boundary(A, args.samples)
    with open(args.out, "w") as fh:
        fh.write("re,im\n")
        for z in pts:
            fh.write(f"{z.real:.12g},{z.imag:.12g}\n")
    _emit(
        args,
        {"samples": len(pts), "out": args.out},
        [f"wrote {len(pts)} boundary points to {args.out}"],
    )
    return EXIT_OK


def cmd_certify(args) -> int:
    A = load_matrix(args.matrix)
    scan = max(args.n, args.cap)
    if args.theorem == 1:
        reports = [certify.norm_chain_report(A, scan, args.tol)]
    else:
        reports = [
            certify.radius_tridiagonal_report(A, scan, args.tol),
            certify.radius_power_toeplitz_report(A, scan, args.tol),
        ]
    rows = []
    lines = []
    refuting = None
    for rep in reports:
        for row in rep.rows():
            if row["n"] <= args.n or not row["verdict"]:
                rows.append(row)
                lines.append(
                    f"{row['claim']} n={row['n']} "
                    f"min_eigenvalue={_fmt(row['min_eigenvalue'])} "
                    f"verdict={'PASS' if row['verdict'] else 'FAIL'} "
                    f"tolerance={_fmt(row['tolerance'])}"
                )
        if rep.refuting_n is not None and refuting is None:
            refuting = rep.refuting_n
    overall = refuting is None
    if refuting is not None:
        lines.append(f"refuted at n = {refuting}")
    payload = {
        "command": "certify",
        "theorem": args.theorem,
        "rows": rows,
        "overall": overall,
        "refuting_n": refuting,
    }
    _emit(args, payload, lines)
    return EXIT_OK if overall else EXIT_REFUTED


def cmd_ando(args) -> int:
    A = load_matrix(args.matrix)
    fact = ando_mod.run_pipeline(A, max_iters=args.iters, tol=args.tol)
    prefix = args.out_prefix
    for name, M in (
        ("H", fact.witness.H),
        ("X", fact.X),
        ("Y", fact.Y),
        ("C", fact.C),
        ("V", fact.V),
    ):
        save_matrix(f"{prefix}.{name}.json", M)
    with open(f"{prefix}.residuals.json", "w") as fh:
        json.dump({k: float(v) for k, v in fact.residuals.items()}, fh, indent=2, sort_keys=True)
    lines = [f"witness converged after {fact.witness.iterations} iterations"]
    lines += [f"{k} = {_fmt(v)}" for k, v in sorted(fact.residuals.items())]
    lines.append("H =")
    lines.append(format_matrix(fact.witness.H))
    lines.append("C =")
    lines.append(format_matrix(fact.C))
    _emit(
        args,
        {
            "iterations": fact.witness.iterations,
            "residuals": {k: float(v) for k, v in fact.residuals.items()},
            "files": [f"{prefix}.{n}.json" for n in ("H", "X", "Y", "C", "V")],
        },
        lines,
    )
    return EXIT_OK


def cmd_dilate(args) -> int:
    A = load_matrix(args.matrix)
    try:
        bundle = build_unitary_dilation(A, args.horizon, tol=args.tol)
    except ValueError as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    save_matrix(args.out, bundle.U)
    resid = []
    from .linalg import matrix_power

    for k in range(1, args.horizon + 1):
        resid.append(operator_norm(bundle.compression(k) - matrix_power(A, k)))
    lines = [f"wrote unitary dilation ({bundle.embed_dim} blocks) to {args.out}"]
    lines += [f"compression residual k={k + 1}: {_fmt(r)}" for k, r in enumerate(resid)]
    _emit(
        args,
        {"out": args.out, "compression_residuals": [float(r) for r in resid]},
        lines,
    )
    return EXIT_OK


def cmd_vonneumann(args) -> int:
    A = load_matrix(args.matrix)
    try:
        coeffs = [complex(tok.strip().replace(" ", "")) for tok in args.poly.split(",")]
    except ValueError:
        print(f"error: cannot parse --poly {args.poly!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = von_neumann_check(A, Polynomial(coeffs), samples=args.samples)
    except ValueError as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    _emit(
        args,
        {
            "polynomial_norm": rep.polynomial_norm,
            "circle_sup_estimate": rep.circle_sup_estimate,
            "lipschitz_pad": rep.lipschitz_pad,
            "holds": rep.holds,
        },
        [
            f"norm of p(A) = {_fmt(rep.polynomial_norm)}",
            f"circle sup estimate = {_fmt(rep.circle_sup_estimate)}",
            f"lipschitz pad = {_fmt(rep.lipschitz_pad)}",
            f"inequality holds: {rep.holds}",
        ],
    )
    return EXIT_OK if rep.holds else EXIT_REFUTED


def cmd_sweep(args) -> int:
    try:
        target, value = args.target.split("=")
        value = float(value)
        if target not in harness.TARGETS:
            raise ValueError
    except ValueError:
        print(f"error: --target must be radius=V or norm=V, got {args.target!r}", file=sys.stderr)
        return EXIT_USAGE
    spec = harness.CorpusSpec(
        seed=args.seed,
        count=args.count,
        dim=args.dim,
        target=target,
        target_value=value,
        ensemble=args.ensemble,
    )
    corpus = harness.generate_corpus(spec)
    cfg = harness.SweepConfig(
        n_max=args.n_max, cap=args.cap, tol=args.tol, ando_check=not args.no_ando
    )
    summary = harness.run_equivalence_sweep(corpus, cfg)
    lines = [
        f"matrices: {len(summary.rows)}",
        f"disagreements: {summary.disagreement_count}",
        f"inconclusive: {summary.inconclusive_count}",
        f"elapsed seconds: {_fmt(summary.header['elapsed_seconds'])}",
    ]
    for row in summary.rows:
        if row.disagreements:
            lines.append(f"  matrix {row.index}: DISAGREE {','.join(row.disagreements)}")
    payload = {
        "count": len(summary.rows),
        "disagreements": summary.disagreement_count,
        "inconclusive": summary.inconclusive_count,
        "rows": [
            {
                "index": r.index,
                "dim": r.dim,
                "norm": r.norm,
                "radius": r.radius,
                "results": {k: v for k, v in r.results.items()},
                "min_eigenvalue": None if r.min_eigenvalue == float("inf") else r.min_eigenvalue,
            }
            for r in summary.rows
        ],
    }
    _emit(args, payload, lines)
    if summary.disagreement_count:
        return EXIT_REFUTED
    if summary.inconclusive_count:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_golden(args) -> int:
    rep = harness.golden_regression()
    lines = []
    for chk in rep.checks:
        lines.append(
            f"{'PASS' if chk.ok else 'FAIL'} {chk.name}: "
            f"{_fmt(chk.value)} (expected {_fmt(chk.expected)})"
        )
    lines.append(f"{'PASS' if rep.strict_violation else 'FAIL'} product bound strictly beaten")
    lines.append(f"{'PASS' if rep.power_bound_ok else 'FAIL'} power norms stay at or below 2")
    payload = {
        "checks": [
            {"name": c.name, "value": c.value, "expected": c.expected, "ok": c.ok}
            for c in rep.checks
        ],
        "strict_violation": rep.strict_violation,
        "power_bound_ok": rep.power_bound_ok,
        "all_ok": rep.all_ok,
    }
    _emit(args, payload, lines)
    return EXIT_OK if rep.all_ok else EXIT_REFUTED


if __name__ == "__main__":
    sys.exit(main())
