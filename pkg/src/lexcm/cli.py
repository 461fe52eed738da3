"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (disagreement or
counterexample), 2 invalid input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from lexcm.classify import (
    DEFAULT_BUDGET,
    classify_fast,
    classify_oracle,
    classify_pattern,
    lexsegment_complex,
    verify_instance,
)
from lexcm.errors import InvalidInputError
from lexcm.homology import FieldSpec
from lexcm.monomial import MAX_VARIABLES, LexSegmentInstance, parse_monomial
from lexcm.simplicial import f_vector, minimal_nonfaces, vertices_of
from lexcm.sweep import SweepConfig, findings_lines, run_sweep, verify_join

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


def _instance(args) -> LexSegmentInstance:
    u = parse_monomial(args.u, args.n)
    v = parse_monomial(args.v, args.n)
    d = u.degree if args.d is None else args.d
    return LexSegmentInstance(args.n, d, u, v)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_classify(args) -> int:
    inst = _instance(args)
    field = FieldSpec.parse(args.field)
    if args.mode == "fast":
        print(classify_fast(inst).to_json())
    elif args.mode == "pattern":
        print(classify_pattern(inst).to_json())
    elif args.mode == "oracle":
        print(classify_oracle(inst, field, args.budget).to_json())
    else:
        rec = verify_instance(inst, field, args.budget)
        print(_dump({"fast": rec.fast.to_dict(), "oracle": rec.oracle.to_dict(), "mismatches": rec.mismatches}))
    return EXIT_OK


def cmd_show(args) -> int:
    inst = _instance(args)
    c = lexsegment_complex(inst)
    doc = {
        "n": inst.n,
        "d": inst.d,
        "u": list(inst.u.support),
        "v": list(inst.v.support),
        "facets": c.facet_lists(),
        "f_vector": f_vector(c),
        "minimal_nonfaces": [list(vertices_of(m)) for m in minimal_nonfaces(c)],
    }
    print(json.dumps(doc, separators=(",", ":")))
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.replace(":", "-").split("-")
    try:
        lo, hi = (int(parts[0]), int(parts[-1]))
    except ValueError:
        raise InvalidInputError(f"bad range {text!r}") from None
    if len(parts) > 2:
        raise InvalidInputError(f"bad range {text!r}")
    return lo, hi


SWEEP_MODES = {
    "fast": {"fast"},
    "oracle": {"oracle"},
    "both": {"fast", "oracle"},
    "pattern": {"fast", "oracle", "pattern"},
}


def cmd_sweep(args) -> int:
    d_range = _parse_range(args.d) if args.d else (2, 2)
    config = SweepConfig(
        n_range=(args.min_n, args.max_n),
        d_range=d_range,
        field=FieldSpec.parse(args.field),
        modes=frozenset(SWEEP_MODES[args.mode]),
        budget=args.budget,
    )
    result = run_sweep(config)
    text = result.to_csv() if args.format == "csv" else result.to_json()
    lines = [result.summary_line()] + findings_lines(result.findings)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print("\n".join(lines))
    else:
        sys.stdout.write(text)
        print("\n".join(lines), file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_verify_join(args) -> int:
    field = FieldSpec.parse(args.field)
    trials = verify_join(args.trials, args.seed, field)
    failed = [t for t in trials if not t.ok]
    checked_cm = sum(len(t.cm_checks) for t in trials)
    print(
        f"verify-join: trials={len(trials)} passed={len(trials) - len(failed)} failed={len(failed)} "
        f"cm_pairs_checked={checked_cm} seed={args.seed} field={field}"
    )
    if failed:
        print(_dump(failed[0].to_dict()))
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p):
        p.add_argument("--n", type=int, required=True, help=f"number of variables (<= {MAX_VARIABLES})")
        p.add_argument("--d", type=int, help="degree; inferred from --u when omitted")
        p.add_argument("--u", required=True, help="comma-separated ascending indices, e.g. 1,3")
        p.add_argument("--v", required=True, help="comma-separated ascending indices, e.g. 2,4")

    p = sub.add_parser("classify", help="classify one lexsegment complex")
    instance_flags(p)
    p.add_argument("--field", default="2", help="prime or Q (default 2)")
    p.add_argument("--mode", choices=["fast", "oracle", "pattern", "both"], default="oracle")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="shelling search node limit")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("show", help="facets, f-vector and minimal non-faces")
    instance_flags(p)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("sweep", help="exhaustive fast-versus-oracle sweep")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--d", default=None, help="degree or inclusive range such as 3-4 (default 2)")
    p.add_argument("--field", default="2")
    p.add_argument("--mode", choices=sorted(SWEEP_MODES), default="both")
    p.add_argument("--out", default=None, help="report path; stdout when omitted")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-join", help="randomized check of the join theorem")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="2")
    p.set_defaults(func=cmd_verify_join)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
