"""Command-line front end.

    randsub seq --set 1,2 --n 4
    randsub analyze --set 3,5
    randsub scan --conjecture --t-max 3 --k-max 15
    randsub multipile --sets "1;1" --pos 1,1
    randsub dynamic one-or-all --n 3

Output is JSON (or CSV for sequences); ``--format table`` renders the same
data for reading.  ``--config FILE`` supplies ``key=value`` defaults, and a
relative ``--output`` path is placed under ``$RANDSUB_OUTPUT_DIR`` if set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .convergence import alpha1_report, classify, subsequence_limits
from .errors import (
    IdentityCheckError,
    IllConditionedError,
    InvalidSetError,
    ResourceLimitError,
    RootSolverError,
)
from .extensions import (
    PILE_FIRST,
    UNIFORM_MOVES,
    MultiPileGame,
    PilePosition,
    dynamic_one_or_all,
    solve_multipile,
    take_any,
)
from .recurrence import (
    DEFAULT_BIT_BUDGET,
    EXACT,
    FLOAT,
    SCHEMA_VERSION,
    eval_sequence,
    gcd_reduce,
    parse_set,
)
from .roots import DEFAULT_ROOT_TOL, DEFAULT_UNIT_EPS, analyze_roots
from .scan import scan_conjecture, scan_question

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_NUMERIC = 4

AUTO_EXACT_LIMIT = 10**4
OUTPUT_DIR_ENV = "RANDSUB_OUTPUT_DIR"


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def read_config(path: str) -> dict[str, str]:
    """``key=value`` lines; ``#`` starts a comment, dashes in keys become underscores."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidSetError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def build_parser(config: dict[str, str] | None = None) -> argparse.ArgumentParser:
    """Argument parser; ``config`` values become subcommand defaults."""
    parser = argparse.ArgumentParser(prog="randsub", description="Randomized subtraction games")
    parser.add_argument("--config", help="key=value file overriding defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_opt(p):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("seq", help="dump a_0..a_n")
    p.add_argument("--set", required=True, dest="set_text")
    p.add_argument("--n", type=_non_negative_int, default=20)
    p.add_argument("--mode", choices=["auto", EXACT, FLOAT], default="auto")
    p.add_argument("--format", choices=["csv", "json", "table"], default="csv")
    p.add_argument("--bit-budget", type=_positive_int, default=DEFAULT_BIT_BUDGET)
    output_opt(p)

    p = sub.add_parser("analyze", help="verdict, alpha1 routes, roots")
    p.add_argument("--set", required=True, dest="set_text")
    p.add_argument("--n-max", type=_positive_int, default=None,
                   help="empirical window end (default: chosen from the spectral gap)")
    p.add_argument("--root-tol", type=float, default=DEFAULT_ROOT_TOL)
    p.add_argument("--eps", type=float, default=DEFAULT_UNIT_EPS)
    p.add_argument("--empirical-tol", type=float, default=1e-10)
    p.add_argument("--no-roots", action="store_true", help="omit the root list")
    p.add_argument("--format", choices=["json", "table"], default="json")
    output_opt(p)

    p = sub.add_parser("scan", help="per-instance conjecture / question checks")
    p.add_argument("--conjecture", action="store_true")
    p.add_argument("--question", action="store_true")
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--format", choices=["jsonl", "table"], default="jsonl")
    output_opt(p)

    p = sub.add_parser("multipile", help="value of a multi-pile position")
    p.add_argument("--sets", required=True, help='per-pile sets, e.g. "1;1,2"')
    p.add_argument("--pos", required=True, help="pile sizes, e.g. 3,4")
    p.add_argument("--mode", choices=[PILE_FIRST, UNIFORM_MOVES], default=PILE_FIRST)
    output_opt(p)

    p = sub.add_parser("dynamic", help="state-dependent move sets")
    p.add_argument("game", choices=["one-or-all", "take-any"])
    p.add_argument("--n", type=_non_negative_int, required=True)
    output_opt(p)

    if config:
        for subparser in sub.choices.values():
            # string defaults go through each option's type conversion
            subparser.set_defaults(**config)
    return parser


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    path = getattr(args, "output", None)
    if not path:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w") as fh:
        fh.write(text)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def cmd_seq(args) -> str:
    S = parse_set(args.set_text)
    mode = args.mode
    if mode == "auto":
        mode = EXACT if args.n <= AUTO_EXACT_LIMIT else FLOAT
    run = eval_sequence(S, args.n, mode, bit_budget=args.bit_budget)
    if args.format == "csv":
        return run.to_csv()
    if args.format == "json":
        return run.to_json()
    rows = [[r["n"], r["value_exact"], f"{r['value_float']:.12g}"] for r in run.rows()]
    return _table(rows, ["n", "value_exact", "value_float"])


def analyze_doc(S, n_max=None, root_tol=DEFAULT_ROOT_TOL, eps=DEFAULT_UNIT_EPS,
                empirical_tol=1e-10, include_roots=True) -> dict:
    verdict = classify(S)
    reduced, m = gcd_reduce(S)
    roots = analyze_roots(reduced, eps, root_tol)
    alpha = alpha1_report(S, n_max=n_max, empirical_tol=empirical_tol, eps=eps)
    limits = subsequence_limits(S)
    return {
        "schema_version": SCHEMA_VERSION,
        "set": list(S.elements),
        "verdict": verdict.to_dict(),
        "alpha1": alpha.to_dict(),
        "roots": {"of_set": list(reduced.elements), **roots.to_dict(include_roots)},
        "spectral_gap": roots.spectral_gap,
        "subsequence_limits": {
            "index": "n" if m == 1 else f"n // {m}",
            "even": _frac(limits.even),
            "odd": _frac(limits.odd),
            "oscillating": limits.oscillating,
        },
    }


def cmd_analyze(args) -> str:
    S = parse_set(args.set_text)
    doc = analyze_doc(S, args.n_max, args.root_tol, args.eps, args.empirical_tol,
                      include_roots=not args.no_roots)
    if args.format == "json":
        return json.dumps(doc, indent=2)
    v, a, r = doc["verdict"], doc["alpha1"], doc["roots"]
    lim = doc["subsequence_limits"]
    rows = [
        ["set", str(doc["set"])],
        ["verdict", v["kind"]],
        ["reduction factor", v["factor"]],
        ["alpha1 (quotient)", a["via_quotient"]],
        ["alpha1 (sums)", a["via_sums"]],
        ["alpha1 (printed)", a["via_printed_formula"]],
        ["alpha1 (empirical)", a["empirical"]],
        ["printed mismatch", a["agreement"].get("printed_mismatch")],
        ["has root -1", r["has_minus_one"]],
        ["square-free", r["square_free"]],
        ["max modulus", r["max_modulus"]],
        ["spectral gap", r["spectral_gap"]],
        [f"limits along {lim['index']}", f"even {lim['even']}, odd {lim['odd']}"],
    ]
    return _table(rows, ["field", "value"])


def cmd_scan(args) -> str:
    if args.t_max < 1 or args.k_max < 1:
        raise InvalidSetError("--t-max and --k-max must be >= 1")
    which = []
    if args.conjecture or not args.question:
        which.append(scan_conjecture)
    if args.question or not args.conjecture:
        which.append(scan_question)
    reports = [fn(args.t_max, args.k_max, jobs=args.jobs) for fn in which]
    if args.format == "jsonl":
        return "".join(rep.jsonl() for rep in reports)
    rows = []
    for rep in reports:
        for key, value in rep.summary.items():
            rows.append([rep.kind, key, value])
    return _table(rows, ["scan", "field", "value"])


def cmd_multipile(args) -> str:
    game = MultiPileGame.parse(args.sets)
    pos = PilePosition.parse(args.pos)
    res = solve_multipile(game, pos, args.mode)
    return json.dumps({
        "schema_version": SCHEMA_VERSION,
        "sets": [list(s.elements) for s in game.sets],
        "position": list(pos.counts),
        "mode": args.mode,
        "value": _frac(res.value),
        "value_float": float(res.value),
        "visited": res.visited,
    })


def cmd_dynamic(args) -> str:
    fn = dynamic_one_or_all if args.game == "one-or-all" else take_any
    value = fn(args.n)
    return json.dumps({
        "schema_version": SCHEMA_VERSION,
        "game": args.game,
        "n": args.n,
        "value": _frac(value),
        "value_float": float(value),
    })


COMMANDS = {
    "seq": cmd_seq,
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "multipile": cmd_multipile,
    "dynamic": cmd_dynamic,
}


def _config_path(argv: list[str]) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    config = None
    path = _config_path(argv)
    if path:
        try:
            config = read_config(path)
        except (OSError, InvalidSetError) as exc:
            print(f"randsub: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
    except (InvalidSetError, ValueError) as exc:
        print(f"randsub: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"randsub: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (RootSolverError, IllConditionedError, IdentityCheckError) as exc:
        print(f"randsub: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
