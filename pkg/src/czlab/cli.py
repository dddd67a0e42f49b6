"""Command line front end.

Exit status: 0 on success, 1 when a checked property fails (the offending
instance is part of the output), 2 on bad input.  Errors go to stderr as a
JSON object with a machine-readable ``error`` code.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .errors import CZLabError
from .rotations import (
    action_spectrum,
    check_matching_hypotheses,
    floquet_multipliers,
    make_rotation,
    matching_rotation,
    recapped_fixed_points,
    trivial_mean_indices,
)
from .serialize import (
    descriptor_to_json,
    dump_json,
    format_fraction,
    jumps_from_csv,
    load_descriptor,
    load_json,
    load_pool,
    parse_fraction,
    path_from_json,
    rotation_from_json,
    rotation_to_json,
    sequences_to_csv,
    spectrum_to_csv,
    table_from_json,
    table_to_json,
)
from .spectral import (
    check_condition_a,
    check_condition_b,
    cz_index,
    index_sequence,
    jump_sequence,
    mean_index,
    reconstruct_from_jumps,
    witness_search_bound,
)
from .suites import SUITES, run_suites
from .torus import index_cycle, path_intersection, verify_intersect_divisibility, verify_mu_intersect

SEED_ENV = "CZLAB_SEED"


class InputError(CZLabError):
    code = "input_error"


class Outcome:
    def __init__(self, text: str, status: int = 0):
        self.text = text
        self.status = status


def _horizon_kmax(d, kmax: int | None, need_next: bool) -> int:
    if kmax is not None:
        return kmax
    if d.horizon is None:
        raise InputError("--kmax is required for a descriptor without elliptic part")
    return d.horizon - 1 if need_next else d.horizon


def cmd_index_seq(args) -> Outcome:
    d = load_descriptor(args.descriptor)
    K = _horizon_kmax(d, args.kmax, need_next=True)
    mu, jumps = index_sequence(d, K), jump_sequence(d, K)
    if args.out == "csv":
        return Outcome(sequences_to_csv(mu, jumps))
    return Outcome(
        dump_json(
            {
                "descriptor": descriptor_to_json(d),
                "cz_index": cz_index(d),
                "mean_index": format_fraction(mean_index(d)),
                "mu": list(mu),
                "jump": list(jumps),
            }
        )
    )


def cmd_divisibility(args) -> Outcome:
    d = load_descriptor(args.descriptor)
    K = _horizon_kmax(d, args.kmax, need_next=True)
    ls = [args.l] if args.l is not None else list(range(1, 13))
    rows, violated = [], False
    for l in ls:
        b = check_condition_b(d, l)
        bound = K if b else min(K, witness_search_bound(d, l))
        a = check_condition_a(d, l, bound)
        agree = bool(b) == a.holds
        violated |= not agree
        rows.append(
            {
                "l": l,
                "condition_b": b.holds,
                "condition_b_failures": list(b.failures),
                "scanned": a.scanned,
                "witness": a.witness,
                "jump": a.jump,
                "consistent": agree,
            }
        )
    out = {"descriptor": descriptor_to_json(d), "kmax": K, "results": rows}
    return Outcome(dump_json(out), 1 if violated else 0)


def cmd_reconstruct(args) -> Outcome:
    pool = load_pool(args.pool)
    try:
        text = Path(args.jumps).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from exc
    jumps = jumps_from_csv(text)
    found = reconstruct_from_jumps(jumps, pool)
    return Outcome(dump_json({"index": pool.index(found), "descriptor": descriptor_to_json(found)}))


def cmd_torus_verify(args) -> Outcome:
    d = load_descriptor(args.descriptor)
    if args.path:
        path = path_from_json(load_json(args.path))
        value = path_intersection(path, index_cycle(d))
        return Outcome(dump_json({"intersection": value}))
    K = _horizon_kmax(d, args.kmax, need_next=True)
    report = verify_intersect_divisibility(d, args.l, K) if args.l else verify_mu_intersect(d, K)
    return Outcome(dump_json(report.to_json()), 0 if report else 1)


def _parse_window(text: str | None):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"--window expects 'lo,hi', got {text!r}")
    return tuple(parse_fraction(p.strip()) for p in parts)


def cmd_rotation(args) -> Outcome:
    r = make_rotation(**rotation_from_json(load_json(args.rotation)))
    window = _parse_window(args.window)
    if args.out == "csv":
        if window is None:
            raise InputError("--out csv prints the marked action spectrum and needs --window")
        return Outcome(spectrum_to_csv(action_spectrum(r, window)))
    table = recapped_fixed_points(r)
    out = {
        "rotation": rotation_to_json(r),
        "trivial_mean_indices": [format_fraction(x) for x in trivial_mean_indices(r)],
        "recapped": table_to_json(table),
        "multipliers": [[format_fraction(m.value) for m in floquet_multipliers(r, i)] for i in range(r.n + 1)],
    }
    if window is not None:
        spec = action_spectrum(r, window)
        out["spectrum"] = [{"label": l, "index": i, "value": format_fraction(v)} for l, i, v in spec.rows()]
    return Outcome(dump_json(out))


def cmd_match(args) -> Outcome:
    table = table_from_json(load_json(args.table))
    r = matching_rotation(table, args.horizon)
    out = rotation_to_json(r)
    if args.check:
        report = check_matching_hypotheses(table)
        out = {"rotation": out, "hypotheses": report.to_json()}
    return Outcome(dump_json(out))


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"{SEED_ENV}={env!r} is not an integer") from exc
    return args.seed


def cmd_verify_suite(args) -> Outcome:
    if args.trials < 1:
        raise InputError("--trials must be positive")
    results = run_suites(args.suite, _seed(args), args.trials)
    if len(results) == 1:
        out = results[0].to_json()
    else:
        out = {
            "suite": "all",
            "passed": sum(r.passed for r in results),
            "failed": sum(r.failed for r in results),
            "suites": [r.to_json() for r in results],
        }
    return Outcome(dump_json(out), 0 if all(r.ok for r in results) else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="czlab", description="Index iteration calculus and rotation spectra.")
    parser.add_argument("--output", help="write the result to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index-seq", help="index and jump sequences of a descriptor")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--kmax", type=int)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_index_seq)

    p = sub.add_parser("divisibility", help="compare jump divisibility with the invariant conditions")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--l", type=int, help="divisor (default: 1..12)")
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_divisibility)

    p = sub.add_parser("reconstruct", help="identify the pool member generating a jump sequence")
    p.add_argument("--jumps", required=True, help="CSV with columns k,jump")
    p.add_argument("--pool", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("torus-verify", help="torus intersection checks")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--path", help="lifted path JSON; prints its intersection with the index cycle")
    p.add_argument("--kmax", type=int)
    p.add_argument("--l", type=int, help="check divisibility of iterated arcs by l")
    p.set_defaults(func=cmd_torus_verify)

    p = sub.add_parser("rotation", help="fixed point data of a rotation")
    p.add_argument("--rotation", required=True)
    p.add_argument("--window", help="action window lo,hi (write --window=-1/2,1/2 when lo is negative)")
    p.add_argument("--out", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_rotation)

    p = sub.add_parser("match", help="matching rotation of a balanced table")
    p.add_argument("--table", required=True)
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--check", action="store_true", help="also report the eigenvalue hypotheses")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("verify-suite", help="run a seeded verification suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify_suite)
    return parser


def _error(exc: Exception) -> int:
    code = getattr(exc, "code", "input_error")
    sys.stderr.write(dump_json({"error": code, "message": str(exc)}))
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        outcome = args.func(args)
    except FileNotFoundError as exc:
        return _error(InputError(str(exc)))
    except (CZLabError, ValueError) as exc:
        return _error(exc)
    if args.output:
        Path(args.output).write_text(outcome.text, encoding="utf-8")
    else:
        sys.stdout.write(outcome.text)
    return outcome.status

