"""Batch command-line front door.

Subcommands wrap the library one-to-one and speak two formats: a human
text view and JSON-lines records (one object per line, schema version
1) for downstream tooling.  Exit status contract, stable across all
subcommands: 0 success / property verified, 1 valid-but-negative
outcome (not a sunflower, extraction exhausted, a sweep found a false
inequality, a hunt found a counterexample), 2 usage or input errors.

Seeded commands are deterministic: identical invocations produce
byte-identical JSON-lines output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds, harness, oracle
from .engine import check_sunflower, extract_augmenting, extract_er
from .errors import SfkitError
from .familyfile import dump as family_dump
from .familyfile import dumps as family_dumps
from .familyfile import load as family_load

SCHEMA = 1

ACCEPT_EPSILONS = (0.01, 0.05, 0.124)


class _Emitter:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def record(self, command: str, body: dict) -> None:
        if self.fmt == "jsonl":
            out = {"schema": SCHEMA, "command": command}
            out.update(body)
            print(json.dumps(out, sort_keys=False))

    def text(self, line: str) -> None:
        if self.fmt == "text":
            print(line)


def _parse_indices(spec: str | None):
    if spec is None:
        return None
    try:
        return [int(tok) for tok in spec.split(",") if tok != ""]
    except ValueError:
        raise SfkitError(f"bad --indices value {spec!r}") from None


def cmd_verify(args, emit: _Emitter) -> int:
    family = family_load(args.file)
    indices = _parse_indices(args.indices)
    if indices is None:
        indices = list(range(len(family)))
    ok, core = check_sunflower(family, indices)
    core_elems = list(core.elements) if core is not None else None
    emit.record(
        "verify",
        {
            "file": os.path.basename(args.file),
            "indices": indices,
            "is_sunflower": ok,
            "core": core_elems,
        },
    )
    if ok:
        emit.text(f"sunflower with core {{{','.join(map(str, core.elements))}}}" if core.elements else "sunflower with empty core")
    else:
        emit.text("not a sunflower")
    return 0 if ok else 1


def cmd_extract(args, emit: _Emitter) -> int:
    family = family_load(args.file)
    if args.method == "er":
        result = extract_er(family, args.k)
        sunflower = result.sunflower
    elif args.method == "augment":
        result = extract_augmenting(family, args.k, args.j_max)
        sunflower = result.sunflower
    else:
        sunflower = oracle.brute_force_find_sunflower(family, args.k)
    if sunflower is None:
        emit.record("extract", {"k": args.k, "method": args.method, "outcome": "exhausted"})
        emit.text("exhausted")
        return 1
    ok, _ = check_sunflower(family, sunflower.petals)
    if not ok:
        raise AssertionError("extracted sunflower failed re-verification")
    petal_sets = [list(family.member(i).elements) for i in sunflower.petals]
    emit.record(
        "extract",
        {
            "k": args.k,
            "method": args.method,
            "outcome": "found",
            "core": list(sunflower.core.elements),
            "petal_indices": list(sunflower.petals),
            "petals": petal_sets,
        },
    )
    emit.text(f"found; core {list(sunflower.core.elements)}")
    for p in petal_sets:
        emit.text("petal " + (" ".join(map(str, p)) if p else "-"))
    return 0


def cmd_bounds(args, emit: _Emitter) -> int:
    cmp = bounds.compare_bounds(args.k, args.s, args.epsilon)
    phi0_str = str(cmp.phi0_exact) if len(str(cmp.phi0_exact)) <= 10**4 else None
    body = {
        "k": args.k,
        "s": args.s,
        "epsilon": args.epsilon,
        "c_used": cmp.c_used,
        "phi0": phi0_str,
        "phi0_log": float(cmp.phi0_log.log_value) if cmp.phi0_exact else None,
        "phi1_log": float(cmp.phi1_log.log_value),
        "phi2_log": float(cmp.phi2_log.log_value),
        "composite_log": float(cmp.composite_log.log_value),
        "log_ratios": cmp.log_ratios,
    }
    emit.record("bounds", body)
    emit.text(f"phi0 = {phi0_str if phi0_str is not None else '(over 10^4 digits)'}")
    emit.text(f"phi1 log = {body['phi1_log']:.12f}  (~{cmp.phi1_log.to_float():.6g})")
    emit.text(f"phi2 log = {body['phi2_log']:.12f}  (~{cmp.phi2_log.to_float():.6g})")
    emit.text(f"composite log = {body['composite_log']:.12f}")
    for name, val in cmp.log_ratios.items():
        emit.text(f"log ratio {name} = {val:.12f}")
    return 0


_SUITES = ("stirling", "binomial", "phi2-recurrence", "stirling2", "product", "phi2-upper", "constants")


def cmd_lemmas(args, emit: _Emitter) -> int:
    suite = args.suite
    eps = args.epsilon
    if suite == "constants":
        consts = bounds.derive_constants(args.k, args.s)
        import mpmath

        body = {
            "k": args.k,
            "s": args.s,
            "delta": mpmath.nstr(consts.delta, 30),
            "p_star": mpmath.nstr(consts.p_star, 30),
            "c1": str(consts.c1),
            "epsilon_star": mpmath.nstr(consts.epsilon_star, 20),
            "p": mpmath.nstr(consts.p, 20),
            "x1": mpmath.nstr(consts.x1, 20),
            "x2": mpmath.nstr(consts.x2, 20),
            "y": consts.y,
        }
        emit.record("lemmas", {"suite": suite, **body})
        for key, val in body.items():
            emit.text(f"{key} = {val}")
        return 0

    if suite == "stirling":
        outcome = bounds.sweep_stirling(args.max or 10**4)
    elif suite == "binomial":
        outcome = bounds.sweep_binomial(args.max or 500)
    elif suite == "phi2-recurrence":
        epsilons = [eps] if eps is not None else list(ACCEPT_EPSILONS)
        m = args.max or 200
        outcome = bounds.sweep_phi2_recurrence(m, m, epsilons)
    elif suite == "stirling2":
        m = args.max or 500
        outcome = bounds.sweep_stirling2(m, m, eps if eps is not None else 0.05)
    elif suite == "product":
        m = args.max or 5000
        if m < 3:
            raise SfkitError("product sweep needs --max >= 3")
        outcome = bounds.sweep_product(m)
    else:
        m = args.max or 300
        outcome = bounds.sweep_phi2_upper(m, m, eps if eps is not None else 0.05)

    emit.record("lemmas", outcome.record())
    emit.text(
        f"suite {outcome.name}: checked {outcome.checked}, "
        f"all_true={outcome.all_true}, min_margin={outcome.min_margin}"
    )
    for failure in outcome.failures[:10]:
        emit.text(f"FALSE at {failure}")
    return 0 if outcome.all_true else 1


def cmd_oracle(args, emit: _Emitter) -> int:
    budget = oracle.OracleBudget(max_nodes=args.budget_nodes)
    result = oracle.max_sunflower_free(
        args.k, args.s, args.ground, allow_empty=args.allow_empty, budget=budget
    )
    witness_text = family_dumps(result.witness)
    body = {
        "k": args.k,
        "s": args.s,
        "ground": args.ground,
        "allow_empty": args.allow_empty,
        "max_size": result.max_size,
        "exhaustive": result.exhaustive,
        "nodes": result.nodes,
        "witness": witness_text,
    }
    if args.out:
        family_dump(result.witness, args.out)
        body["witness_path"] = args.out
    emit.record("oracle", body)
    emit.text(f"max_size = {result.max_size} (exhaustive={result.exhaustive}, nodes={result.nodes})")
    emit.text("witness:")
    for line in witness_text.rstrip("\n").split("\n"):
        emit.text("  " + line)
    if args.out:
        emit.text(f"witness written to {args.out}")
    return 0


def cmd_hunt(args, emit: _Emitter) -> int:
    report = harness.counterexample_hunt(
        args.k, args.s, args.epsilon, args.trials, args.seed, dist_kind=args.dist
    )
    for row in report.rows:
        emit.record("hunt", {"row": "trial", **row})
    for cx in report.counterexamples:
        emit.record("hunt", {"row": "counterexample", **cx})
    summary = {
        "row": "summary",
        "k": args.k,
        "s": args.s,
        "epsilon": args.epsilon,
        "trials": args.trials,
        "seed": args.seed,
        "dist": args.dist,
        "thresholds": [list(t) for t in report.thresholds],
        "checked": report.checked,
        "counterexamples": len(report.counterexamples),
    }
    emit.record("hunt", summary)
    emit.text(
        f"checked {report.checked} families at sizes "
        f"{[size for _, size in report.thresholds]}: "
        f"{len(report.counterexamples)} counterexamples"
    )
    for cx in report.counterexamples:
        emit.text("COUNTEREXAMPLE (reproducer follows)")
        for line in cx["family"].rstrip("\n").split("\n"):
            emit.text("  " + line)
    if args.threshold_max:
        dist = harness.FamilyDistribution(
            args.dist, args.threshold_ground, args.s, args.threshold_max, args.seed
        )
        table = harness.threshold_experiment(args.k, args.s, dist, args.threshold_trials)
        for row in table.rows:
            emit.record(
                "hunt",
                {
                    "row": "threshold",
                    "family_size": row.family_size,
                    "trials": row.trials,
                    "successes": row.successes,
                    "rate": row.rate,
                    "above_phi0": row.above_phi0,
                },
            )
            emit.text(
                f"size {row.family_size:4d}  rate {row.rate:.3f}"
                + ("  [above phi0]" if row.above_phi0 else "")
            )
    return 0 if not report.counterexamples else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfkit",
        description="Sunflower toolkit: verification, extraction, bounds, oracles.",
    )
    parser.add_argument("--format", choices=("text", "jsonl"), default="text")
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("SFKIT_JOBS", "1")),
        help="global worker cap (operations currently run sequentially)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check whether a family (or listed members) is a sunflower")
    p.add_argument("file")
    p.add_argument("--indices", help="comma-separated member indices; default: whole family")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("extract", help="extract a k-sunflower")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("er", "augment", "brute"), default="er")
    p.add_argument("--j-max", type=int, default=2, dest="j_max")
    p.set_defaults(run=cmd_extract)

    p = sub.add_parser("bounds", help="evaluate and compare the bound functions")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.set_defaults(run=cmd_bounds)

    p = sub.add_parser("lemmas", help="run an inequality sweep or print the derived constants")
    p.add_argument("--suite", choices=_SUITES, required=True)
    p.add_argument("--max", type=int, default=0, help="sweep limit (suite-specific default)")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--s", type=int, default=10)
    p.set_defaults(run=cmd_lemmas)

    p = sub.add_parser("oracle", help="exhaustive maximum k-sunflower-free family search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--ground", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=10**9, dest="budget_nodes")
    p.add_argument("--allow-empty", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out", help="write the witness family to this path")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("hunt", help="randomized counterexample hunt above the classic bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--dist", choices=harness.KINDS, default="uniform-j-subsets")
    p.add_argument("--threshold-max", type=int, default=0, dest="threshold_max",
                   help="also sweep extraction success rates up to this family size")
    p.add_argument("--threshold-trials", type=int, default=50, dest="threshold_trials")
    p.add_argument("--threshold-ground", type=int, default=7, dest="threshold_ground")
    p.set_defaults(run=cmd_hunt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    emit = _Emitter(args.format)
    try:
        return args.run(args, emit)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SfkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
