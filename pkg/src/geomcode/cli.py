"""Batch command-line interface.

Subcommands: construct | analyze | random-code | simulate.  Every output
file is accompanied by a ``<file>.manifest.json`` recording the command,
its full parameter map, the tool version and the SHA-256 of each output,
so a run can be reproduced and verified byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .alist import read_alist, write_alist
from .constructions import (
    HyperbolicLabel,
    IncidenceStructure,
    build_conic_structure,
    build_hyperbolic_structure,
)
from .fields import field_from_string
from .projective import ProjectivePoint
from .gf2 import brouwer_predict, dimension_and_rate, gram2, rank2
from .metrics import six_cycles, tanner_bounds, tanner_girth
from .sim import BerResult, ChannelConfig, LdpcCode, ber_sweep, simulate_point
from .srpg import (
    AxiomViolation,
    DegenerateStructure,
    adjacency_matrix,
    check_gpg_axioms,
    check_strongly_regular,
    feasibility_check,
    is_connected,
    spectrum,
)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out: Path, command: str, params: dict) -> None:
    manifest = {
        "command": command,
        "params": params,
        "version": __version__,
        "outputs": {out.name: _sha256(out)},
    }
    Path(f"{out}.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _parse_modulus(text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [int(x) for x in text.split(",")]


def _build_structure(family: str, field_spec: str, modulus: str | None) -> IncidenceStructure:
    field = field_from_string(field_spec, _parse_modulus(modulus))
    if family == "conic":
        return build_conic_structure(field)
    if family == "hyperbolic":
        return build_hyperbolic_structure(field)
    raise ValueError(f"unknown family {family!r}")


def parse_ebno_grid(text: str) -> tuple[float, ...]:
    """Grid string "start:step:stop", inclusive of stop within half a step."""
    parts = text.split(":")
    if len(parts) == 1:
        return (float(parts[0]),)
    if len(parts) != 3:
        raise ValueError(f"bad Eb/N0 grid {text!r}; expected start:step:stop")
    start, step, stop = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("Eb/N0 grid step must be positive")
    vals = []
    i = 0
    while True:
        x = start + i * step
        if x > stop + step / 2:
            break
        vals.append(round(x, 9))
        i += 1
    return tuple(vals)


def build_analysis_report(ic: IncidenceStructure) -> dict:
    """Run every structural check and collect the results in one document."""
    report: dict = {
        "family": ic.family,
        "q": ic.field.q if ic.field is not None else None,
        "v": ic.v,
        "n": ic.n,
        "degenerate": ic.degenerate,
    }
    failures: list[str] = []

    try:
        params = check_gpg_axioms(ic)
        report["axioms"] = {"pass": True}
        report["s"], report["t"] = params.s, params.t
        report["alphas"] = list(params.alphas)
        report["grade"] = params.grade
    except AxiomViolation as exc:
        report["axioms"] = {"pass": False, "violated": exc.axiom, "witness": list(exc.witness)}
        failures.append(str(exc))
        params = None

    report["rank2_M"] = rank2(ic.matrix)
    dim, rate = dimension_and_rate(ic.matrix)
    report["dimension"], report["rate"] = dim, rate
    report["simulable"] = dim >= 1
    g = tanner_girth(ic.matrix)
    report["girth"] = None if math.isinf(g) else int(g)

    if params is not None:
        if ic.degenerate:
            report["notice"] = ("structure is degenerate (edgeless point graph); "
                                "strong-regularity analysis skipped")
        else:
            try:
                v, k, lam, mu = check_strongly_regular(ic)
                params.lambda_, params.mu = lam, mu
                ic.params = params
                report["srg"] = {"k": k, "lambda": lam, "mu": mu}
                spec = spectrum(v, k, lam, mu, params.s, params.t)
                report["spectrum"] = {
                    "delta": spec.delta, "u1": spec.u1, "u2": spec.u2,
                    "f1": spec.f1, "f2": spec.f2,
                    "theta0": spec.theta0, "theta1": spec.theta1, "theta2": spec.theta2,
                }
                feas = feasibility_check(params)
                report["feasibility"] = [
                    {"condition": name, "pass": ok, "detail": detail}
                    for name, ok, detail in feas.conditions
                ]
                if not feas.all_ok:
                    failures.append("feasibility conditions failed")

                report["rank2_MMT"] = rank2(gram2(ic.matrix))
                pred = brouwer_predict(spec)
                report["rank_prediction"] = {
                    "kind": pred.kind, "value": pred.value, "case": pred.case_tag,
                }
                if pred.kind == "exact" and pred.value != report["rank2_MMT"]:
                    failures.append(
                        f"rank prediction {pred.value} != eliminated rank {report['rank2_MMT']}")

                if is_connected(adjacency_matrix(ic)):
                    bounds = tanner_bounds(params.n, params.s + 1, params.t + 1,
                                           spec.theta0, spec.theta1)
                    report["distance_bounds"] = {
                        "bit_oriented": str(bounds.bit_oriented),
                        "parity_oriented": str(bounds.parity_oriented),
                        "effective": bounds.effective,
                        "vacuous": bounds.vacuous,
                    }
                else:
                    report["distance_bounds"] = {
                        "refused": "point graph disconnected; largest eigenvalue not simple"}

                cyc = six_cycles(ic, params, girth=g)
                report["six_cycles"] = {
                    "formula": cyc.six_cycle_formula,
                    "enumerated": cyc.six_cycle_enumerated,
                }
                if cyc.six_cycle_formula != cyc.six_cycle_enumerated:
                    failures.append("six-cycle formula disagrees with enumeration")
            except (DegenerateStructure, ValueError) as exc:
                report["srg"] = {"error": str(exc)}
                failures.append(str(exc))

    report["failures"] = failures
    report["checks_passed"] = not failures
    return report


def _label_json(label):
    if isinstance(label, ProjectivePoint):
        return list(label.coords)
    if isinstance(label, HyperbolicLabel):
        return {"B": list(label.B), "C": list(label.C)}
    if isinstance(label, tuple):
        return list(label)
    return label


def _cmd_construct(args: argparse.Namespace) -> int:
    ic = _build_structure(args.family, args.field, args.modulus)
    out = Path(args.out)
    write_alist(ic.matrix, out)
    _write_manifest(out, "construct", {
        "family": args.family, "field": args.field, "modulus": args.modulus,
    })
    if args.labels:
        Path(args.labels).write_text(json.dumps(
            {"points": [_label_json(p) for p in ic.points],
             "blocks": [_label_json(b) for b in ic.blocks]},
            sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {ic.v}x{ic.n} incidence matrix to {out}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    if args.infile:
        h = read_alist(args.infile)
        ic = IncidenceStructure(
            family="file", field=None,
            points=list(range(h.nrows)), blocks=list(range(h.cols)),
            matrix=h,
        )
        params_for_manifest = {"in": args.infile}
    else:
        ic = _build_structure(args.family, args.field, args.modulus)
        params_for_manifest = {
            "family": args.family, "field": args.field, "modulus": args.modulus,
        }
    report = build_analysis_report(ic)
    out = Path(args.out)
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    _write_manifest(out, "analyze", params_for_manifest)
    status = "ok" if report["checks_passed"] else "FAILED"
    print(f"analysis {status}: {out}")
    if not report["checks_passed"]:
        print(json.dumps(report["failures"]), file=sys.stderr)
        return 1
    return 0


def _cmd_random_code(args: argparse.Namespace) -> int:
    from .sim import random_regular_h

    code = random_regular_h(args.rows, args.cols, args.wcol, args.wrow, args.seed)
    out = Path(args.out)
    write_alist(code.h, out)
    _write_manifest(out, "random-code", {
        "rows": args.rows, "cols": args.cols, "wcol": args.wcol,
        "wrow": args.wrow, "seed": args.seed,
    })
    if not code.four_cycle_free:
        print("warning: retry cap exceeded, matrix contains 4-cycles", file=sys.stderr)
    print(f"wrote {args.rows}x{args.cols} ({args.wcol},{args.wrow})-regular matrix to {out}")
    return 0


def _format_csv(result: BerResult) -> str:
    lines = ["ebn0_db,frames,bit_errors,frame_errors,ber,fer,mean_iters,ci_low,ci_high"]
    for p in result.points:
        lines.append(
            f"{p.ebn0_db:.6g},{p.frames},{p.bit_errors},{p.frame_errors},"
            f"{p.ber:.6g},{p.fer:.6g},{p.mean_iterations:.6g},"
            f"{p.ci_low:.6g},{p.ci_high:.6g}"
        )
    return "\n".join(lines) + "\n"


def _point_task(payload: tuple):
    code, cfg, idx = payload
    return simulate_point(code, cfg, idx)


def _resolve_threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("GEOMCODE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _cmd_simulate(args: argparse.Namespace) -> int:
    h = read_alist(args.infile)
    code = LdpcCode.from_parity(h)
    if code.dimension < 1:
        print(f"refusing to simulate: parity-check matrix has full column rank "
              f"(rank {h.cols - code.dimension} = n = {h.cols}), the code is {{0}}",
              file=sys.stderr)
        return 2
    grid = parse_ebno_grid(args.ebno)
    cfg = ChannelConfig(
        ebn0_db_list=grid,
        rate=code.rate,
        max_iterations=args.max_iters,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        seed=args.seed,
    )
    threads = _resolve_threads(args.threads)
    if threads > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(grid))) as pool:
            points = tuple(pool.map(_point_task, [(code, cfg, i) for i in range(len(grid))]))
        result = BerResult(config=cfg, points=points)
    else:
        result = ber_sweep(code, cfg)
    out = Path(args.out)
    out.write_text(_format_csv(result), encoding="utf-8")
    _write_manifest(out, "simulate", {
        "in": args.infile, "ebno": args.ebno, "seed": args.seed,
        "max_iters": args.max_iters, "min_frame_errors": args.min_frame_errors,
        "max_frames": args.max_frames,
    })
    print(f"wrote {len(result.points)} BER points to {out}")
    return 0


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomcode",
        description="Quadric incidence geometries and their regular LDPC codes",
    )
    parser.add_argument("--version", action="version", version=f"geomcode {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an incidence matrix and write it as alist")
    p.add_argument("--family", required=True, choices=["conic", "hyperbolic"])
    p.add_argument("--field", required=True, help='field spec "p" or "p^k"')
    p.add_argument("--modulus", help="comma-separated modulus coefficients, constant term first")
    p.add_argument("--out", required=True)
    p.add_argument("--labels", help="also write point/block labels as JSON arrays")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("analyze", help="run all structural checks, write a JSON report")
    p.add_argument("--family", choices=["conic", "hyperbolic"])
    p.add_argument("--field", help='field spec "p" or "p^k"')
    p.add_argument("--modulus")
    p.add_argument("--in", dest="infile", help="alist file to analyze instead of a family")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("random-code", help="Gallager-style random regular parity-check matrix")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--wcol", type=int, required=True)
    p.add_argument("--wrow", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_random_code)

    p = sub.add_parser("simulate", help="Monte Carlo BER sweep over an AWGN channel")
    p.add_argument("--in", dest="infile", required=True, help="alist parity-check matrix")
    p.add_argument("--ebno", required=True, help='grid "start:step:stop" in dB, or single value')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--min-frame-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=100_000)
    p.add_argument("--threads", type=int, help="worker processes (env GEOMCODE_THREADS, else all cores)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    if args.command == "analyze" and not args.infile and not (args.family and args.field):
        parser.error("analyze needs either --in FILE or both --family and --field")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
