"""Command-line front door.

Every verb reads JSON (inline or from a file path), writes one JSON report
on stdout and exits with 0 on success, 1 when a checked property fails, 2 on
malformed input, 3 when a fuel, depth or cutoff budget runs out.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from . import testkit
from .brouwer import (
    DEFAULT_FUEL,
    ContinuousFn,
    bar_contains,
    check_realises,
    evaluate,
    extract_realiser,
    list_bar,
    skeleton,
)
from .errors import BudgetExhausted, ConstancyViolation, FormalBaireError, SchemaError, UndefinedValue
from .fans import cbar_from_brouwer, cbar_from_function, cbar_member, modulus_M, uniform_modulus
from .formal import (
    brouwer_from_cov,
    cov_from_brouwer,
    map_from_realisable,
    realiser_from_map,
    validate_map,
)
from .jsonio import (
    cov_from_json,
    cov_to_json,
    detect_kind,
    fan_from_json,
    map_from_json,
    map_to_json,
    op_from_json,
    op_to_json,
    point_from_json,
    seq_from_json,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_SCHEMA = 2
EXIT_BUDGET = 3

FUEL_ENV = "FORMALBAIRE_FUEL"


def default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV)
    if raw is None:
        return DEFAULT_FUEL
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"{FUEL_ENV} must be an integer, got {raw!r}") from None


def load_json(arg: str) -> Any:
    """Inline JSON when the argument looks like JSON, otherwise a file path."""
    text = arg
    if not arg.lstrip().startswith(("{", "[", '"')):
        try:
            text = Path(arg).read_text(encoding="utf-8")
        except OSError as e:
            raise SchemaError(f"cannot read {arg}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def cmd_eval(args: argparse.Namespace) -> int:
    gamma = op_from_json(load_json(args.op))
    alpha = point_from_json(load_json(args.point))
    res = evaluate(gamma, alpha, args.fuel)
    _emit({"construction": "brouwer-evaluation", "value": res.value, "modulus": res.modulus})
    return EXIT_OK


def cmd_bar(args: argparse.Namespace) -> int:
    gamma = op_from_json(load_json(args.op))
    listing = list_bar(gamma, args.limit, args.cutoff)
    _emit({
        "construction": "bar-enumeration",
        "items": [{"addr": list(it.address), "value": it.value} for it in listing.items],
        "truncated": listing.truncated,
        "cutoff": args.cutoff,
    })
    return EXIT_OK


def cmd_modulus(args: argparse.Namespace) -> int:
    gamma = op_from_json(load_json(args.op))
    fan = fan_from_json(load_json(args.fan))
    F = ContinuousFn.from_op(gamma, args.fuel)
    N = uniform_modulus(F, fan, args.max_depth)
    _emit({"construction": "uniform-modulus", "N": N, "M": modulus_M(F, fan, N)})
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    obj = load_json(args.input)
    kind = detect_kind(obj)
    target = args.to
    if kind == "op":
        gamma = op_from_json(obj)
        if target == "cov":
            root = seq_from_json(load_json(args.root)) if args.root else ()
            out, how = cov_to_json(cov_from_brouwer(root, gamma)), "cover-from-operation"
        elif target == "map":
            out, how = map_to_json(map_from_realisable(ContinuousFn.from_op(gamma, args.fuel))), "map-from-realiser"
        else:
            out, how = op_to_json(gamma), "identity"
    elif kind == "cov":
        W = cov_from_json(obj)
        if target != "brouwer":
            raise SchemaError(f"cannot convert a cover witness to {target}")
        out, how = op_to_json(brouwer_from_cov(W)), "operation-from-cover"
    else:
        r = map_from_json(obj)
        if target == "brouwer":
            out, how = op_to_json(realiser_from_map(r, args.fuel).realiser), "realiser-from-map"
        elif target == "cov":
            out, how = cov_to_json(r.witness), "map-totality-witness"
        else:
            out, how = map_to_json(r), "identity"
    _emit({"construction": how, "result": out})
    return EXIT_OK


def cmd_cbar(args: argparse.Namespace) -> int:
    gamma = op_from_json(load_json(args.op))
    if args.source == "brouwer":
        P = cbar_from_brouwer(gamma, characteristic=args.characteristic)
    else:
        P = cbar_from_function(ContinuousFn.from_op(gamma, args.fuel))
    answers = []
    for raw in args.addr:
        a = seq_from_json(load_json(raw))
        v = cbar_member(P, a, args.cutoff)
        entry: dict[str, Any] = {"addr": list(a), "status": v.status.value}
        if v.is_no and v.witness is not None:
            entry["witness"] = [list(x) for x in v.witness]
        answers.append(entry)
    _emit({"construction": f"c-bar-from-{args.source}", "answers": answers})
    return EXIT_OK


def invariant_suite(ops: Sequence, seed: int, samples: int, fuel: int) -> list[dict]:
    """Run the per-operation invariants; one result row per (invariant, op)."""
    rows = []
    rng = random.Random(seed)
    for idx, gamma in enumerate(ops):
        points = [testkit.random_point(rng) for _ in range(samples)]

        def row(name: str, ok: bool, witness: Any = None) -> None:
            r = {"invariant": name, "op": idx, "ok": ok}
            if not ok:
                r["witness"] = witness
            rows.append(r)

        bad = testkit.neighbourhood_law_failures(gamma)
        row("neighbourhood-law", not bad, [[list(a), list(b)] for a, b in bad[:1]])

        misses = []
        for alpha in points:
            m = evaluate(gamma, alpha, fuel).modulus
            hits = [n for n in range(m + 8) if bar_contains(gamma, alpha.iseg(n))]
            if hits != [m]:
                misses.append(list(alpha.iseg(m + 1)))
        row("bar-hit-once", not misses, misses[:1])

        W = cov_from_brouwer((), gamma)
        row("cover-round-trip", brouwer_from_cov(W) == skeleton(gamma))

        F = ContinuousFn.from_op(gamma, fuel)
        try:
            g2 = extract_realiser(F, skeleton(gamma))
            rep = check_realises(F, g2, points, fuel)
            row("realiser-extraction", rep.ok and skeleton(g2) == skeleton(gamma),
                [list(f[0].iseg(6)) for f in rep.failures[:1]])
        except ConstancyViolation as e:
            row("realiser-extraction", False, [list(x) for x in e.pair])

        rep = validate_map(map_from_realisable(F), F, points, fuel=fuel)
        row("commuting-square", rep.ok, [str(v) for v in rep.violations[:1]])
    return rows


def cmd_check(args: argparse.Namespace) -> int:
    if args.op:
        ops = [op_from_json(load_json(args.op))]
    else:
        ops = testkit.random_ops(args.count, testkit.OpGenSpec(seed=args.seed))
    rows = invariant_suite(ops, args.seed, args.samples, args.fuel)
    failed = [r for r in rows if not r["ok"]]
    _emit({
        "construction": "invariant-suite",
        "ops": len(ops),
        "checks": len(rows),
        "failures": failed,
        "ok": not failed,
    })
    return EXIT_OK if not failed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="formalbaire", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--fuel", type=int, default=None, help=f"descent budget (default {DEFAULT_FUEL}, env {FUEL_ENV})")

    sp = sub.add_parser("eval", help="evaluate the function realised by an operation at a point")
    sp.add_argument("--op", required=True)
    sp.add_argument("--point", required=True)
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("bar", help="list the bar of an operation with its labels")
    sp.add_argument("--op", required=True)
    sp.add_argument("--limit", type=int, default=100)
    sp.add_argument("--cutoff", type=int, default=4)
    common(sp)
    sp.set_defaults(func=cmd_bar)

    sp = sub.add_parser("modulus", help="uniform modulus N over a fan and the bound M built from it")
    sp.add_argument("--op", required=True)
    sp.add_argument("--fan", required=True)
    sp.add_argument("--max-depth", type=int, default=64)
    common(sp)
    sp.set_defaults(func=cmd_modulus)

    sp = sub.add_parser("convert", help="convert between operations, cover witnesses and formal maps")
    sp.add_argument("--input", required=True)
    sp.add_argument("--to", required=True, choices=["cov", "map", "brouwer"])
    sp.add_argument("--root", default=None, help="root address for --to cov")
    common(sp)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("check", help="run the invariant suite on one operation or a random corpus")
    sp.add_argument("--op", default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--samples", type=int, default=20)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("cbar", help="c-bar membership queries")
    sp.add_argument("--op", required=True)
    sp.add_argument("--addr", action="append", default=[], help="address as a JSON array; repeatable")
    sp.add_argument("--source", choices=["function", "brouwer"], default="function")
    sp.add_argument("--characteristic", action="store_true")
    sp.add_argument("--cutoff", type=int, default=4)
    common(sp)
    sp.set_defaults(func=cmd_cbar)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_SCHEMA if e.code else EXIT_OK
    try:
        if args.fuel is None:
            args.fuel = default_fuel()
        return args.func(args)
    except SchemaError as e:
        _error(e, "schema")
        return EXIT_SCHEMA
    except BudgetExhausted as e:
        _error(e, "budget")
        return EXIT_BUDGET
    except (ConstancyViolation, UndefinedValue) as e:
        _error(e, "violation")
        return EXIT_VIOLATION
    except (FormalBaireError, ValueError, TypeError) as e:
        _error(e, "schema")
        return EXIT_SCHEMA


def _error(e: Exception, kind: str) -> None:
    _emit({"error": kind, "message": str(e)})


if __name__ == "__main__":
    sys.exit(main())
