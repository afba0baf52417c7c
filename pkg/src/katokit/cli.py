"""Command-line front end: JSON and DOT on stdout, diagnostics on stderr."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .anticanonical import surface_index
from .errors import InternalConsistencyError, KatoError
from .germ import moduli_dimensions
from .graph import build_graph, export_dot, export_json
from .report import analyze_report, dumps, germ_report, moduli_json
from .sequence import enumerate_sequences, parse_any
from .verify import run_verify, summary_table


def _moduli_block(seq) -> dict:
    out = {"delta0": moduli_json(moduli_dimensions(seq, 0)), "delta1": None}
    if surface_index(seq) == 1:
        out["delta1"] = moduli_json(moduli_dimensions(seq, 1))
    return out


def _cmd_analyze(args, out) -> int:
    out.write(dumps(analyze_report(parse_any(args.sequence))) + "\n")
    return 0


def _cmd_graph(args, out) -> int:
    g = build_graph(parse_any(args.sequence))
    out.write(export_dot(g) if args.format == "dot" else export_json(g) + "\n")
    return 0


def _cmd_enumerate(args, out) -> int:
    if args.b2 < 1:
        raise KatoError(f"--b2 must be positive, got {args.b2}")
    seqs = enumerate_sequences(args.b2)
    if args.index_one:
        seqs = [s for s in seqs if surface_index(s) == 1]
    if args.count_only:
        out.write(f"{len(seqs)}\n")
    else:
        for s in seqs:
            out.write(f"{s}\n")
    return 0


def _cmd_verify(args, out) -> int:
    results = run_verify(args.b2_max)
    out.write(summary_table(results) + "\n")
    return 0 if all(r.ok for r in results) else 1


def _cmd_germ(args, out) -> int:
    seq = parse_any(args.sequence)
    rep = germ_report(seq)
    rep["moduli"] = _moduli_block(seq)
    out.write(dumps(rep) + "\n")
    return 0


def _cmd_moduli(args, out) -> int:
    seq = parse_any(args.sequence)
    rep = {"sequence": str(seq)}
    rep.update(moduli_json(moduli_dimensions(seq, args.delta)))
    out.write(dumps(rep) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="katokit", description="Invariants of intermediate Kato surfaces.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", help="full JSON report for one sequence")
    p.add_argument("sequence")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("graph", help="dual graph as DOT or JSON")
    p.add_argument("sequence")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("enumerate", help="all canonical sequences with given b2")
    p.add_argument("--b2", type=int, required=True)
    p.add_argument("--index-one", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive cross-check suite")
    p.add_argument("--b2-max", type=int, default=10)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("germ", help="contracting-germ exponents and lattice invariants")
    p.add_argument("sequence")
    p.set_defaults(func=_cmd_germ)

    p = sub.add_parser("moduli", help="moduli-space dimensions")
    p.add_argument("sequence")
    p.add_argument("--delta", type=int, choices=(0, 1), required=True)
    p.set_defaults(func=_cmd_moduli)
    return parser


def _error(code: str, exc: Exception) -> str:
    return json.dumps({"code": code, "message": str(exc)})


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InternalConsistencyError as exc:
        err.write(_error(exc.code, exc) + "\n")
        return 2
    except KatoError as exc:
        err.write(_error(exc.code, exc) + "\n")
        return 1
    except ValueError as exc:
        err.write(_error(KatoError.code, exc) + "\n")
        return 1


def main() -> None:
    sys.exit(run())
