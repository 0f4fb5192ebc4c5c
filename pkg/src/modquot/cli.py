"""Command-line interface: ``modquot <command> ...``.

Every command builds one report dictionary; ``--format`` only changes how it
is rendered, so json, text and csv carry the same information. Exit status
is 0 for any computed verdict, 2 for input errors and 3 when a budget
refuses the computation. Diagnostics go to stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import genericity as gen
from . import isocount, words
from .barbell import build_barbell, readable, theta_readable
from .smallcancel import DEHN_GATE, dehn_normalize, satisfies_cprime
from .tuples import BudgetExceeded, RelatorTuple, format_relators, read_relators, symmetrized_closure


class InputError(ValueError):
    pass


def fraction_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("rational parameters must be positive")
    return value


def params_from(args) -> gen.GenericityParams:
    if args.mode == "paper":
        lam, theta, min_length = gen.PAPER_LAMBDA, gen.PAPER_THETA, gen.PAPER_MIN_LENGTH
    else:
        lam, theta, min_length = Fraction(1, 24), Fraction(1, 24), 0
    return gen.GenericityParams(
        args.lam if args.lam is not None else lam,
        args.theta if args.theta is not None else theta,
        args.min_length if args.min_length is not None else min_length,
        args.mode,
    )


def _tuple_dict(t: RelatorTuple) -> dict:
    return {"relators": list(t.relators), "m": t.m, "lengths": [len(r) for r in t.relators]}


# --- commands ---------------------------------------------------------------

WORD_OPS = ("normalize", "invert", "eta", "canonical", "cyclic_reduce")


def cmd_word(args) -> dict:
    op = next((o for o in WORD_OPS if getattr(args, o)), None)
    if op == "normalize":
        return {"result": words.normalize(words.parse_word(args.word, reduce=True))}
    w = words.parse_word(args.word)
    if op == "invert":
        return {"result": words.invert(w)}
    if op == "eta":
        return {"result": words.eta(w)}
    if op == "cyclic_reduce":
        return {"result": words.cyclic_reduce(w).rep}
    if op == "canonical":
        if not words.is_cyclically_reduced(w):
            raise InputError(f"{w!r} is not cyclically reduced")
        return {"result": words.canonical_rotation(w)}
    cyc = words.is_cyclically_reduced(w)
    return {
        "word": w,
        "length": len(w),
        "cyclically_reduced": cyc,
        "canonical_rotation": words.canonical_rotation(w) if cyc else None,
        "inverse": words.invert(w),
        "eta": words.eta(w),
    }


def cmd_gen_check(args) -> dict:
    t = read_relators(args.tuple_file)
    p = params_from(args)
    report = gen.check_Q(t, p, uprime=not args.no_uprime, budget=args.budget)
    out = report.to_dict()
    out["tuple"] = _tuple_dict(t)
    return out


def cmd_iso(args) -> dict:
    s, t = read_relators(args.first), read_relators(args.second)
    verdict = isocount.generic_iso(s, t, params_from(args))
    out = verdict.to_dict()
    out["params"] = params_from(args).to_dict()
    return out


def cmd_sample(args) -> dict:
    if args.n < 2 or args.n % 2:
        raise InputError(f"sampling length must be even and >= 2, got {args.n}")
    if args.m < 1:
        raise InputError("m must be >= 1")
    t = gen.sample_tuple(random.Random(args.seed), args.n, args.m, not args.unequal)
    out = _tuple_dict(t)
    out.update(seed=args.seed, n=args.n, equal_lengths=not args.unequal)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_relators(t))
    return out


def cmd_survey(args) -> dict:
    p = params_from(args)
    rows = []
    for n in args.n:
        if n < 2 or n % 2:
            raise InputError(f"survey length must be even and >= 2, got {n}")
        res = gen.survey(n, args.m, args.trials, args.seed, p,
                         equal_lengths=not args.unequal, workers=args.workers)
        for r in res.rows:
            rows.append({
                "condition": r.condition, "n": r.n, "m": r.m, "trials": r.trials,
                "pass_rate": r.pass_rate, "ci_low": r.ci_low, "ci_high": r.ci_high,
            })
    return {"rows": rows, "params": p.to_dict(), "seed": args.seed, "equal_lengths": not args.unequal}


def cmd_count(args) -> dict:
    census = isocount.orbit_census(args.n, args.m, args.filter, args.budget, args.workers)
    return {
        "n": args.n,
        "m": args.m,
        "filter": args.filter,
        "orbits": census.orbits,
        "tuples": census.tuples,
        "orbit_constant": isocount.orbit_constant(args.n, args.m),
        "formula_value": str(isocount.asymptotic_Im(args.n, args.m)),
    }


def cmd_triviality(args) -> dict:
    lam = args.lam if args.lam is not None else DEHN_GATE
    if lam > DEHN_GATE:
        raise InputError(f"Dehn's algorithm needs lambda <= 1/8, got {lam}")
    w = words.parse_word(args.word, reduce=True)
    R = symmetrized_closure(read_relators(args.tuple_file))
    gate = satisfies_cprime(R, lam)
    if not gate.holds:
        piece, member, _ = gate.violation
        raise InputError(f"C'({lam}) fails: piece of length {len(piece)} in member of length {len(member)}")
    res = dehn_normalize(w, R, cyclic=args.cyclic, gate=False)
    return {
        "trivial": res.trivial,
        "normal_form": res.normal_form,
        "steps": res.steps,
        "gate": {"cprime": str(lam), "holds": True, "max_piece": gate.max_piece},
    }


def cmd_readability(args) -> dict:
    w = words.parse_word(args.word)
    if args.bar is not None:
        ans = readable(w, build_barbell(words.parse_word(args.bar)))
        witness = None
        if ans.readable:
            witness = {
                "start_vertex": ans.start_vertex,
                "path": [[e.src, e.label, e.dst] for e in ans.path],
            }
        return {"mode": "bar", "bar": args.bar, "readable": ans.readable, "witness": witness}
    theta = args.theta if args.theta is not None else gen.PAPER_THETA
    if theta >= 1:
        raise InputError("theta must lie in (0, 1)")
    res = theta_readable(w, theta)
    witness = {"u": res.witness.u, "v": res.witness.v} if res.readable else None
    return {"mode": "theta", "theta": str(theta), "readable": res.readable, "witness": witness}


def cmd_encode(args) -> dict:
    g = isocount.read_presentation(args.presentation_file)
    bits = isocount.encode_presentation(g)
    out = {
        "generators": g.generators,
        "relators": len(g.relators),
        "ell1": isocount.ell1(g),
        "symbols": isocount.presentation_symbols(g),
        "length": len(bits),
        "hex": isocount.bits_to_hex(bits),
    }
    if args.bits:
        out["bits"] = bits
    return out


# --- rendering --------------------------------------------------------------


def _flatten(value, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(value, dict):
        out = []
        for k in sorted(value):
            out.extend(_flatten(value[k], f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(value, list):
        out = []
        for i, v in enumerate(value):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out or [(prefix, "[]")]
    return [(prefix, json.dumps(value))]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv" and "rows" in report and set(report) - {"rows"} <= {"params", "seed", "equal_lengths"}:
        # survey: one row per (condition, n); the parameters go in a comment header
        buf = io.StringIO()
        header = json.dumps({k: v for k, v in report.items() if k != "rows"}, sort_keys=True)
        buf.write(f"# {header}\n")
        cols = ["condition", "n", "m", "trials", "pass_rate", "ci_low", "ci_high"]
        writer = csv.DictWriter(buf, cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report["rows"])
        return buf.getvalue()
    pairs = _flatten(report)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(pairs)
        return buf.getvalue()
    if list(report) == ["result"]:
        return f"{report['result']}\n"
    return "".join(f"{k}: {v}\n" for k, v in pairs)


# --- parser -----------------------------------------------------------------

COMMANDS = {
    "word": cmd_word,
    "gen-check": cmd_gen_check,
    "iso": cmd_iso,
    "sample": cmd_sample,
    "survey": cmd_survey,
    "count": cmd_count,
    "triviality": cmd_triviality,
    "readability": cmd_readability,
    "encode": cmd_encode,
}

DEFAULT_FORMAT = {"word": "text", "survey": "csv"}


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as the same one-line JSON diagnostic as other input errors."""

    def error(self, message: str):
        parts = self.prog.split()
        _diagnose(parts[1] if len(parts) > 1 else None, "input", message)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=fraction_arg, help="lambda as p/q")
    common.add_argument("--theta", type=fraction_arg, help="theta as p/q")
    common.add_argument("--min-length", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--budget", type=int, default=gen.DEFAULT_BUDGET)
    common.add_argument("--format", choices=("json", "text", "csv"))
    common.add_argument("--mode", choices=("paper", "experiment"), default="paper")

    parser = _Parser(prog="modquot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", parents=[common], help="normal forms and word operations")
    p.add_argument("word")
    ops = p.add_mutually_exclusive_group()
    ops.add_argument("--normalize", action="store_true", help="reduce an arbitrary word over a, b, B")
    ops.add_argument("--invert", action="store_true")
    ops.add_argument("--eta", action="store_true")
    ops.add_argument("--canonical", action="store_true", help="canonical rotation")
    ops.add_argument("--cyclic-reduce", dest="cyclic_reduce", action="store_true")

    p = sub.add_parser("gen-check", parents=[common], help="check the genericity conditions")
    p.add_argument("tuple_file")
    p.add_argument("--no-uprime", action="store_true", help="skip the prefix-distinctness check")

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two generic quotients")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("sample", parents=[common], help="sample a random relator tuple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--unequal", action="store_true", help="lengths up to n instead of exactly n")
    p.add_argument("--out", help="also write the tuple as a relator file")

    p = sub.add_parser("survey", parents=[common], help="Monte Carlo pass rates per condition")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--unequal", action="store_true")

    p = sub.add_parser("count", parents=[common], help="exact isomorphism-orbit counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--filter", choices=sorted(isocount.FILTERS), default="all")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("triviality", parents=[common], help="Dehn's algorithm on a word")
    p.add_argument("word")
    p.add_argument("tuple_file")
    p.add_argument("--cyclic", action="store_true", help="allow replacements across the word's end")

    p = sub.add_parser("readability", parents=[common], help="barbell readability")
    p.add_argument("word")
    p.add_argument("--bar", help="bar u of a single barbell; omit for the theta scan")

    p = sub.add_parser("encode", parents=[common], help="binary encoding of a presentation")
    p.add_argument("presentation_file")
    p.add_argument("--bits", action="store_true", help="also print the raw bit string")
    return parser


def load_schema(command: str) -> dict:
    """The shipped JSON schema for a command's report (``error`` for diagnostics)."""
    path = resources.files("modquot").joinpath("schemas", f"{command}.schema.json")
    return json.loads(path.read_text(encoding="utf-8"))


def _diagnose(command: str | None, kind: str, exc: BaseException | str) -> None:
    msg = " ".join(str(exc).split()) or type(exc).__name__
    line = json.dumps({"command": command, "error": kind, "message": msg}, sort_keys=True)
    print(line, file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "json")
    try:
        report = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        _diagnose(args.command, "budget", exc)
        return 3
    except (ValueError, OSError) as exc:
        # WordError, ParamsError, PresentationError, GateError and InputError are ValueErrors
        _diagnose(args.command, "input", exc)
        return 2
    sys.stdout.write(render(report, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
